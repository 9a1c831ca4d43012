//! Structural models for the Sylow subgroups of the classical groups, one
//! entry per published description, plus the matrix-shaped building blocks
//! they are made of.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::classical::{ClassicalSpec, Family, Sign};
use crate::field::{arith_params, mu_group, v_l, Fe, FiniteField};
use crate::group::{
    central_quotient, central_quotient_map, closure_labeled, constrained_subgroup, cyclic,
    dihedral, direct_power, direct_product, quaternion, semidirect_product, sign,
    sylow_of_symmetric, wreath, Action, Elem, Enumerated, Group,
};
use crate::matrix::{self, additive_group, matrix_group, Matrix, MatrixGroup};
use crate::{Error, Limits, Result};

/// `Up_n(F)`: upper unitriangular matrices.
pub fn up(f: &Arc<FiniteField>, n: usize, budget: usize) -> Result<MatrixGroup> {
    let gens: Vec<Matrix> = (0..n.saturating_sub(1))
        .flat_map(|i| f.prime_basis().into_iter().map(move |b| matrix::elementary(n, i, i + 1, b)))
        .collect();
    matrix_group(f, n.max(1), &gens, budget)
}

fn unit(n: usize, i: usize, j: usize, c: Fe) -> Matrix {
    let mut m = Matrix::zero(n, n);
    m[(i, j)] = c;
    m
}

/// `Sym(n, q)`: symmetric matrices under addition.
pub fn sym(f: &Arc<FiniteField>, n: usize, budget: usize) -> Result<MatrixGroup> {
    let mut gens = Vec::new();
    for i in 0..n {
        for j in i..n {
            for b in f.prime_basis() {
                let mut m = unit(n, i, j, b);
                m[(j, i)] = b;
                gens.push(m);
            }
        }
    }
    additive_group(f, n, n, &gens, budget)
}

/// `Antisym(m, q)`: `B^T = -B` under addition. In characteristic 2 this is
/// `Sym(m, q)`, diagonal included.
pub fn antisym(f: &Arc<FiniteField>, m: usize, budget: usize) -> Result<MatrixGroup> {
    if f.characteristic() == 2 {
        return sym(f, m, budget);
    }
    antisym0(f, m, budget)
}

/// `Antisym0(m, q)`: antisymmetric matrices with zero diagonal.
pub fn antisym0(f: &Arc<FiniteField>, m: usize, budget: usize) -> Result<MatrixGroup> {
    let mut gens = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for b in f.prime_basis() {
                let mut x = unit(m, i, j, b);
                x[(j, i)] = f.neg(b);
                gens.push(x);
            }
        }
    }
    additive_group(f, m, m, &gens, budget)
}

/// `antisym*(m, q^2)`: `B^T = -conj(B)` under addition.
pub fn antisym_star(f: &Arc<FiniteField>, m: usize, budget: usize) -> Result<MatrixGroup> {
    if !f.has_conjugation() {
        return Err(Error::OddDegree(f.degree()));
    }
    let mut gens = Vec::new();
    for i in 0..m {
        for b in f.elements() {
            if f.add(b, f.conj(b)?) == Fe::ZERO {
                gens.push(unit(m, i, i, b));
            }
        }
        for j in i + 1..m {
            for b in f.prime_basis() {
                let mut x = unit(m, i, j, b);
                x[(j, i)] = f.neg(f.conj(b)?);
                gens.push(x);
            }
        }
    }
    additive_group(f, m, m, &gens, budget)
}

/// An element `(y, B)` of the odd-unitary group `S`.
pub type SElement = (Matrix, Matrix);

/// `B^T + conj(B) = -y^T conj(y)`.
pub fn s_constraint(f: &FiniteField, (y, b): &SElement) -> bool {
    let bar = |m: &Matrix| matrix::conj(f, m).expect("S lives over a quadratic extension");
    let lhs = matrix::add(f, &b.transpose(), &bar(b));
    let rhs = matrix::neg(f, &matrix::mul(f, &y.transpose(), &bar(y)));
    lhs == rhs
}

/// `(y, B)(y', B') = (y + y', B + B' - conj(y)^T y')`.
pub fn s_mul(f: &FiniteField, (y, b): &SElement, (y2, b2): &SElement) -> SElement {
    let ybar = matrix::conj(f, y).expect("S lives over a quadratic extension");
    let cross = matrix::mul(f, &ybar.transpose(), y2);
    (matrix::add(f, y, y2), matrix::sub(f, &matrix::add(f, b, b2), &cross))
}

fn s_inv(f: &FiniteField, (y, b): &SElement) -> SElement {
    let ybar = matrix::conj(f, y).expect("S lives over a quadratic extension");
    let cross = matrix::mul(f, &ybar.transpose(), y);
    (matrix::neg(f, y), matrix::neg(f, &matrix::add(f, b, &cross)))
}

fn show_pair(p: &(Matrix, Matrix)) -> String {
    format!("({:?}, {:?})", p.0, p.1)
}

/// The group `S` of pairs `(y, B)` with `y` a row of length `m`.
pub fn s_group(f: &Arc<FiniteField>, m: usize, budget: usize) -> Result<Enumerated<SElement>> {
    if !f.has_conjugation() {
        return Err(Error::OddDegree(f.degree()));
    }
    let mut gens = Vec::new();
    for k in 0..m {
        for beta in f.prime_basis() {
            let target = f.neg(f.mul(beta, f.conj(beta)?));
            let bkk = f
                .elements()
                .find(|&b| f.add(b, f.conj(b).unwrap()) == target)
                .expect("the trace map is onto");
            let mut y = Matrix::zero(1, m);
            y[(0, k)] = beta;
            gens.push((y, unit(m, k, k, bkk)));
        }
    }
    for b in antisym_star(f, m, budget)?.generator_values() {
        gens.push((Matrix::zero(1, m), b));
    }
    if let Some(g) = gens.iter().find(|g| !s_constraint(f, g)) {
        return Err(Error::Relation(format!("S generator {} violates the constraint", show_pair(g))));
    }
    let (fm, fi) = (f.clone(), f.clone());
    let s = closure_labeled(
        &gens,
        (Matrix::zero(1, m), Matrix::zero(m, m)),
        move |a, b| s_mul(&fm, a, b),
        move |a| s_inv(&fi, a),
        budget,
        show_pair,
    )?;
    if let Some(g) = s.elements().iter().find(|g| !s_constraint(f, g)) {
        return Err(Error::NotClosed(format!("{} violates the S constraint", show_pair(g))));
    }
    Ok(s)
}

/// `N ⋊ Up_m` with `A` acting on `N` by `act(A, x)`.
fn matrix_semidirect<T>(
    target: &Enumerated<T>,
    acting: &MatrixGroup,
    act: impl Fn(&Matrix, &T) -> T,
    budget: usize,
) -> Result<Group>
where
    T: Clone + Eq + core::hash::Hash + Send + Sync + 'static,
{
    let (n, h) = (target.group(), acting.group());
    let action = Action::from_fn(&h, &n, |a, x| {
        target.index_of(&act(acting.element(a), target.element(x)))
    })?;
    semidirect_product(&action, budget)
}

/// `A B A^T`.
fn congruence(f: &FiniteField, a: &Matrix, b: &Matrix) -> Matrix {
    matrix::mul(f, &matrix::mul(f, a, b), &a.transpose())
}

/// `A B conj(A)^T`.
fn hermitian_congruence(f: &FiniteField, a: &Matrix, b: &Matrix) -> Matrix {
    let abar = matrix::conj(f, a).expect("quadratic extension");
    matrix::mul(f, &matrix::mul(f, a, b), &abar.transpose())
}

/// A catalog entry: one published Sylow description.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: &'static str,
    /// The statement this entry encodes.
    pub locator: &'static str,
    /// The ambient family the entry is applied to.
    pub family: Family,
    pub applies: &'static str,
    /// How under-specified constants are resolved.
    pub constants: &'static str,
}

const fn entry(
    id: &'static str,
    locator: &'static str,
    family: Family,
    applies: &'static str,
    constants: &'static str,
) -> CatalogEntry {
    CatalogEntry { id, locator, family, applies, constants }
}

pub static CATALOG: [CatalogEntry; 17] = [
    entry("PSL-p", "Sylow p-subgroups of PSL_n(F_q)", Family::PSL, "p = char F_q, n >= 2", "none"),
    entry(
        "PSL-l",
        "Sylow l-subgroups of PSL_n(F_q)",
        Family::PSL,
        "l != p, l | q - 1, l odd (l = 2 only with the override)",
        "s = v_l(q - 1)",
    ),
    entry(
        "SL-l",
        "Sylow l-subgroups of SL_n(F_q)",
        Family::SL,
        "l != p, l | q - 1, l odd (l = 2 only with the override)",
        "s = v_l(q - 1)",
    ),
    entry(
        "GL-l",
        "Sylow l-subgroups of GL_n(F_q)",
        Family::GL,
        "l != p",
        "d = ord_l(q), s = v_l(q^d - 1), n0 = floor(n / d)",
    ),
    entry("PSp-p", "Sylow p-subgroups of PSp(2n, q)", Family::PSp, "p = char F_q", "none"),
    entry(
        "PSp-l-reduce",
        "Sylow l-subgroups of PSp(2n, q) via GL",
        Family::PSp,
        "l not in {2, p}",
        "d = ord_l(q); GL_2n(F_q) for d even, GL_n(F_q) for d odd",
    ),
    entry(
        "PSp-2",
        "Sylow 2-subgroups of PSp(2n, q), q odd",
        Family::PSp,
        "l = 2, q odd",
        "s = v_2(q^2 - 1)",
    ),
    entry(
        "Omega-even-p",
        "Sylow p-subgroups of POmega^e(2m, q), p odd",
        Family::POmega,
        "p = char F_q odd, even dimension",
        "none",
    ),
    entry(
        "Omega-even-2",
        "Sylow 2-subgroups of Omega^e(2m, 2^r)",
        Family::Omega,
        "p = 2 = char F_q, even dimension",
        "none",
    ),
    entry(
        "Omega-odd-p",
        "Sylow p-subgroups of Omega(2m+1, q), p odd",
        Family::Omega,
        "p = char F_q odd, odd dimension",
        "none",
    ),
    entry(
        "Omega-l-reduce",
        "Sylow l-subgroups of POmega^e(n, q) via GL",
        Family::POmega,
        "l not in {2, p}",
        "d = ord_l(q), n0 = floor(n / d), GL target from the (n mod 2, d, n0, e) table",
    ),
    entry(
        "O-even-2",
        "Sylow 2-subgroups of O^e(2m, q), q odd",
        Family::O,
        "l = 2, q odd, even dimension",
        "s = v_2(q^2 - 1) - 1",
    ),
    entry(
        "O-odd-2",
        "Sylow 2-subgroups of O(2m+1, q), q odd",
        Family::O,
        "l = 2, q odd, odd dimension",
        "s = v_2(q^2 - 1) - 1",
    ),
    entry("U-even-p", "Sylow p-subgroups of U(2m, q^2)", Family::U, "p = char, even dimension", "none"),
    entry("U-odd-p", "Sylow p-subgroups of U(2m+1, q^2)", Family::U, "p = char, odd dimension", "none"),
    entry(
        "PSU-l-reduce",
        "Sylow l-subgroups of PSU(n, q^2) via PSL, SL or U",
        Family::PSU,
        "l != p",
        "PSL_n(F_q^2) if l | n and l | q + 1; SL_n(F_q^2) if l does not divide n and l | q + 1; U(n, q^2) otherwise",
    ),
    entry(
        "U-l-reduce",
        "Sylow l-subgroups of U(n, q^2) via GL",
        Family::U,
        "l != p",
        "d = ord_l(q); GL_n(F_q^2) if d = 2 mod 4, GL_floor(n/2)(F_q^2) otherwise",
    ),
];

pub fn lookup(id: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.id == id)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ModelOptions {
    /// Allow `l = 2` in the `PSL-l` and `SL-l` entries.
    pub allow_l2_psl: bool,
}

/// A constructed model together with how it was obtained.
#[derive(Debug, Clone)]
pub struct Model {
    pub entry: &'static str,
    pub group: Group,
    pub description: String,
    /// Reduction chain, outermost first (e.g. `PSp(4,5) -> GL(4,5)`).
    pub reductions: Vec<String>,
    pub constants: BTreeMap<String, u64>,
}

fn inapplicable<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Inapplicable(msg.into()))
}

/// The entry used for `(spec, prime)` when none is named.
pub fn default_entry(spec: &ClassicalSpec, prime: u64) -> Result<&'static CatalogEntry> {
    let p = spec.characteristic();
    let even = spec.dim.is_multiple_of(2);
    let id = match spec.family {
        Family::PSL if prime == p => "PSL-p",
        Family::PSL => "PSL-l",
        Family::SL if prime != p => "SL-l",
        Family::GL if prime != p => "GL-l",
        Family::PSp if prime == p => "PSp-p",
        Family::PSp if prime == 2 => "PSp-2",
        Family::PSp => "PSp-l-reduce",
        Family::POmega if prime == p && even => "Omega-even-p",
        Family::POmega if prime != p && prime != 2 => "Omega-l-reduce",
        Family::Omega if prime == 2 && p == 2 && even => "Omega-even-2",
        Family::Omega if prime == p && p != 2 && !even => "Omega-odd-p",
        Family::O if prime == 2 && p != 2 && even => "O-even-2",
        Family::O if prime == 2 && p != 2 => "O-odd-2",
        Family::U if prime == p && even => "U-even-p",
        Family::U if prime == p => "U-odd-p",
        Family::U => "U-l-reduce",
        Family::PSU if prime != p => "PSU-l-reduce",
        _ => return inapplicable(format!("no catalog entry covers the Sylow {prime}-subgroups of {spec}")),
    };
    Ok(lookup(id).expect("default entries exist"))
}

/// Builds the model claimed by `entry` for the Sylow `prime`-subgroups of
/// `spec`.
pub fn build_model(
    entry: &CatalogEntry,
    spec: &ClassicalSpec,
    prime: u64,
    options: ModelOptions,
    limits: &Limits,
) -> Result<Model> {
    if !crate::field::is_prime(prime) {
        return Err(Error::NotPrime(prime));
    }
    if spec.family != entry.family {
        return inapplicable(format!("{} applies to {}, not {}", entry.id, entry.family, spec.family));
    }
    let mut b = Builder { options, budget: limits.elements, constants: BTreeMap::new(), reductions: Vec::new() };
    let (group, description) = b.model(entry.id, spec, prime)?;
    Ok(Model {
        entry: entry.id,
        group: group.with_name(description.clone()),
        description,
        reductions: b.reductions,
        constants: b.constants,
    })
}

struct Builder {
    options: ModelOptions,
    budget: usize,
    constants: BTreeMap<String, u64>,
    reductions: Vec<String>,
}

/// `GL_n(F_q)`, `SL_n(F_q)` or `PSL_n(F_q)` as a reduction target, where
/// `n` may be 0.
#[derive(Debug, Clone)]
struct Target {
    family: Family,
    dim: usize,
    field: Arc<FiniteField>,
}

impl Builder {
    fn model(&mut self, id: &str, spec: &ClassicalSpec, l: u64) -> Result<(Group, String)> {
        let f = &spec.field;
        let p = spec.characteristic();
        let n = spec.dim;
        let m = n / 2;
        let even = n.is_multiple_of(2);
        let budget = self.budget;
        match id {
            "PSL-p" => {
                self.require(l == p, "the prime must be the characteristic")?;
                self.require(n >= 2, "n >= 2")?;
                let u = up(f, n, budget)?;
                Ok((u.group(), format!("Up_{n}(F_{})", f.order())))
            }
            "PSL-l" | "SL-l" => self.linear_l(id, n, f, l),
            "GL-l" => self.gl_l(n, f, l),
            "PSp-p" => {
                self.require(l == p, "the prime must be the characteristic")?;
                let (s, u) = (sym(f, m, budget)?, up(f, m, budget)?);
                let g = matrix_semidirect(&s, &u, |a, x| congruence(f, a, x), budget)?;
                Ok((g, format!("Sym({m},{}) : Up_{m}(F_{})", f.order(), f.order())))
            }
            "PSp-l-reduce" => {
                self.require(l != 2 && l != p, "l not in {2, p}")?;
                let ap = self.arith(l, f.order(), m as u64)?;
                let dim = if ap.d % 2 == 0 { 2 * m } else { m };
                self.reduce_gl(spec, Target { family: Family::GL, dim, field: f.clone() }, l)
            }
            "PSp-2" => {
                self.require(l == 2 && p != 2, "l = 2 and q odd")?;
                self.psp_2(m, f.order())
            }
            "Omega-even-p" => {
                self.require(l == p && p != 2, "the prime must be the odd characteristic")?;
                self.require(even, "even dimension")?;
                let (a, u) = (antisym(f, m, budget)?, up(f, m, budget)?);
                let g = matrix_semidirect(&a, &u, |a, x| congruence(f, a, x), budget)?;
                Ok((g, format!("Antisym({m},{}) : Up_{m}(F_{})", f.order(), f.order())))
            }
            "Omega-even-2" => {
                self.require(l == 2 && p == 2, "l = p = 2")?;
                self.require(even, "even dimension")?;
                let (a, u) = (antisym0(f, m, budget)?, up(f, m, budget)?);
                let g = matrix_semidirect(&a, &u, |a, x| congruence(f, a, x), budget)?;
                Ok((g, format!("Antisym0({m},{}) : Up_{m}(F_{})", f.order(), f.order())))
            }
            "Omega-odd-p" => {
                self.require(l == p && p != 2, "the prime must be the odd characteristic")?;
                self.require(!even, "odd dimension")?;
                self.omega_odd_p(m, f)
            }
            "Omega-l-reduce" => {
                self.require(l != 2 && l != p, "l not in {2, p}")?;
                let ap = self.arith(l, f.order(), n as u64)?;
                let (d_even, n0_even) = (ap.d % 2 == 0, ap.n0 % 2 == 0);
                let dim = match (even, d_even, spec.sign) {
                    (false, false, _) => m,
                    (false, true, _) => 2 * m,
                    (true, false, Some(Sign::Plus)) => m,
                    (true, false, _) => m - 1,
                    (true, true, Some(Sign::Plus)) if n0_even => 2 * m,
                    (true, true, Some(Sign::Minus)) if !n0_even => 2 * m,
                    (true, true, _) => 2 * m - 2,
                };
                self.reduce_gl(spec, Target { family: Family::GL, dim, field: f.clone() }, l)
            }
            "O-even-2" => {
                self.require(l == 2 && p != 2, "l = 2 and q odd")?;
                self.require(even, "even dimension")?;
                self.o_even_2(m, f.order(), spec.sign.expect("validated"))
            }
            "O-odd-2" => {
                self.require(l == 2 && p != 2, "l = 2 and q odd")?;
                self.require(!even, "odd dimension")?;
                let q = f.order();
                let eps = if q % 4 == 1 || m.is_multiple_of(2) { Sign::Plus } else { Sign::Minus };
                self.reductions.push(format!("O({n},{q}) -> C2 x Syl_2(O{}({},{q}))", eps.symbol(), 2 * m));
                let (inner, desc) = self.o_even_2(m, q, eps)?;
                let g = direct_product(&cyclic(2)?, &inner, budget)?;
                Ok((g, format!("C2 x ({desc})")))
            }
            "U-even-p" => {
                self.require(l == p, "the prime must be the characteristic")?;
                self.require(even, "even dimension")?;
                let (a, u) = (antisym_star(f, m, budget)?, up(f, m, budget)?);
                let g = matrix_semidirect(&a, &u, |a, x| hermitian_congruence(f, a, x), budget)?;
                Ok((g, format!("antisym*({m},{}) : Up_{m}(F_{})", f.order(), f.order())))
            }
            "U-odd-p" => {
                self.require(l == p, "the prime must be the characteristic")?;
                self.require(!even, "odd dimension")?;
                let (s, u) = (s_group(f, m, budget)?, up(f, m, budget)?);
                let g = matrix_semidirect(
                    &s,
                    &u,
                    |a, (y, b)| {
                        let abar = matrix::conj(f, a).expect("quadratic extension").transpose();
                        (matrix::mul(f, y, &abar), hermitian_congruence(f, a, b))
                    },
                    budget,
                )?;
                Ok((g, format!("S({m},{}) : Up_{m}(F_{})", f.order(), f.order())))
            }
            "PSU-l-reduce" => {
                self.require(l != p, "l != p")?;
                let q = spec.q();
                let (l_n, l_q1) = ((n as u64).is_multiple_of(l), (q + 1).is_multiple_of(l));
                let family = match (l_n, l_q1) {
                    (true, true) => Family::PSL,
                    (false, true) => Family::SL,
                    _ => Family::U,
                };
                if family == Family::U {
                    let target = spec.with_family(Family::U)?;
                    self.reductions.push(format!("{spec} -> {target}"));
                    return self.model("U-l-reduce", &target, l);
                }
                let target = ClassicalSpec::with_field(family, n, f.clone(), None)?;
                self.reductions.push(format!("{spec} -> {target}"));
                let id = if family == Family::PSL { "PSL-l" } else { "SL-l" };
                self.model(id, &target, l)
            }
            "U-l-reduce" => {
                self.require(l != p, "l != p")?;
                let q = spec.q();
                let d = arith_params(l, q, n as u64)?.d;
                self.constants.insert("d".into(), d as u64);
                let dim = if d % 4 == 2 { n } else { n / 2 };
                self.reduce_gl(spec, Target { family: Family::GL, dim, field: f.clone() }, l)
            }
            other => Err(Error::InvalidSpec(format!("unknown catalog entry {other:?}"))),
        }
    }

    fn require(&self, ok: bool, what: &str) -> Result<()> {
        if ok {
            Ok(())
        } else {
            inapplicable(format!("requires {what}"))
        }
    }

    fn arith(&mut self, l: u64, q: u64, n: u64) -> Result<crate::field::ArithParams> {
        let ap = arith_params(l, q, n)?;
        self.constants.insert("d".into(), ap.d as u64);
        self.constants.insert("n0".into(), ap.n0);
        Ok(ap)
    }

    /// Records a reduction to a `GL` target and builds its `GL-l` model with
    /// parameters recomputed over the target field.
    fn reduce_gl(&mut self, from: &ClassicalSpec, target: Target, l: u64) -> Result<(Group, String)> {
        let q = target.field.order();
        self.reductions.push(format!("{from} -> {}({},{q})", target.family, target.dim));
        // constants of the target model replace those of the source
        self.constants.clear();
        self.gl_l(target.dim, &target.field, l)
    }

    fn gl_l(&mut self, n: usize, f: &Arc<FiniteField>, l: u64) -> Result<(Group, String)> {
        let q = f.order();
        self.require(!q.is_multiple_of(l), "l != p")?;
        let ap = self.arith(l, q, n as u64)?;
        self.constants.insert("s".into(), ap.s as u64);
        let size = (l as usize).pow(ap.s);
        let qd = (q as u128).pow(ap.d);
        let base = if qd <= crate::field::MAX_FIELD_ORDER as u128 {
            let ext = FiniteField::with_order(qd as u64)?;
            mu_group(&ext, l, ap.s)?.group_named(&format!("mu_{size}"))
        } else {
            cyclic(size)?.with_name(format!("mu_{size}"))
        };
        let n0 = ap.n0 as usize;
        let top = sylow_of_symmetric(l as usize, n0, self.budget)?;
        let w = wreath(&base, &top, self.budget)?;
        Ok((w.group, format!("(mu_{size})^{n0} : P_{l}(S_{n0})")))
    }

    /// `{(b, t) : prod b_i = sgn t}` inside `mu_{l^s} wr P_l(S_n)`, modulo
    /// the diagonal `{(x, .., x) : x^n = 1}` for `PSL-l`.
    fn linear_l(&mut self, id: &str, n: usize, f: &Arc<FiniteField>, l: u64) -> Result<(Group, String)> {
        let q = f.order();
        self.require(l != f.characteristic(), "l != p")?;
        self.require((q - 1).is_multiple_of(l), "l | q - 1")?;
        self.require(l != 2 || self.options.allow_l2_psl, "odd l (l = 2 needs the override)")?;
        let s = v_l(l, (q - 1) as u128)?;
        self.constants.insert("s".into(), s as u64);
        let size = (l as usize).pow(s);
        let mu = mu_group(f, l, s)?;
        let base = mu.group_named(&format!("mu_{size}"));
        let top = sylow_of_symmetric(l as usize, n, self.budget)?;
        let w = wreath(&base, &top, self.budget)?;
        let minus_one = f.neg(Fe::ONE);
        let sub = constrained_subgroup(
            &w,
            |coords, tau| {
                let prod = coords.iter().fold(Fe::ONE, |acc, &c| f.mul(acc, *mu.element(c)));
                prod == if sign(tau) == 1 { Fe::ONE } else { minus_one }
            },
            self.budget,
        )?;
        let constrained = format!("{{(b, t) in (mu_{size})^{n} : P_{l}(S_{n}) : prod b = sgn t}}");
        if id == "SL-l" {
            return Ok((sub.group(), constrained));
        }
        let diagonal: Vec<Elem> = (0..mu.order() as Elem)
            .filter(|&x| f.pow(*mu.element(x), n as u64) == Fe::ONE)
            .map(|x| sub.position(w.join(&vec![x; n], 0)).expect("diagonal satisfies the constraint"))
            .collect();
        let g = central_quotient(&sub.group(), &diagonal, self.budget)?;
        Ok((g, format!("{constrained} / diagonal")))
    }

    fn psp_2(&mut self, n: usize, q: u64) -> Result<(Group, String)> {
        let s = v_l(2, (q as u128) * (q as u128) - 1)?;
        self.constants.insert("s".into(), s as u64);
        let order = 1usize << s;
        let quat = quaternion(order)?;
        let power = direct_power(&quat, n, self.budget)?;
        let centre = quat.pow(1, 1 << (s - 2));
        let (base, class_of) = central_quotient_map(power.group(), &[power.diagonal(centre)], self.budget)?;
        let mut reps = vec![Elem::MAX; base.order()];
        for x in power.group().elements().rev() {
            reps[class_of[x as usize] as usize] = x;
        }
        let top = sylow_of_symmetric(2, n, self.budget)?;
        let top_group = top.group();
        let action = Action::from_fn(&top_group, &base, |h, c| {
            let tau = top.element(h);
            let coords = power.coords(reps[c as usize]);
            let mut moved = vec![0; n];
            for (i, &x) in coords.iter().enumerate() {
                moved[tau.image(i)] = x;
            }
            Some(class_of[power.encode(&moved) as usize])
        })?;
        let g = semidirect_product(&action, self.budget)?;
        Ok((g, format!("(Q_{order})^{n} / diagonal : P_2(S_{n})")))
    }

    fn o_even_2(&mut self, m: usize, q: u64, eps: Sign) -> Result<(Group, String)> {
        let s = v_l(2, (q as u128) * (q as u128) - 1)? - 1;
        self.constants.insert("s".into(), s as u64);
        let d_order = 1usize << (s + 1);
        let dih = dihedral(d_order)?;
        let full = matches!((eps, q % 4 == 1 || m.is_multiple_of(2)), (Sign::Plus, true) | (Sign::Minus, false));
        let k = if full { m } else { m - 1 };
        let top = sylow_of_symmetric(2, k, self.budget)?;
        let w = wreath(&dih, &top, self.budget)?;
        let desc = format!("(D_{d_order})^{k} : P_2(S_{k})");
        if full {
            return Ok((w.group, desc));
        }
        let c2 = cyclic(2)?;
        let v4 = direct_product(&c2, &c2, self.budget)?;
        Ok((direct_product(&v4, &w.group, self.budget)?, format!("C2 x C2 x ({desc})")))
    }

    /// `((F_q^+)^m x Antisym(m, q)) : Up_m(F_q)` with `A(x, B) = (x A^T, A B A^T)`.
    fn omega_odd_p(&mut self, m: usize, f: &Arc<FiniteField>) -> Result<(Group, String)> {
        let budget = self.budget;
        let mut gens: Vec<(Matrix, Matrix)> = Vec::new();
        for k in 0..m {
            for b in f.prime_basis() {
                let mut x = Matrix::zero(1, m);
                x[(0, k)] = b;
                gens.push((x, Matrix::zero(m, m)));
            }
        }
        for b in antisym(f, m, budget)?.generator_values() {
            gens.push((Matrix::zero(1, m), b));
        }
        let (fa, fn_) = (f.clone(), f.clone());
        let normal = closure_labeled(
            &gens,
            (Matrix::zero(1, m), Matrix::zero(m, m)),
            move |a, b| (matrix::add(&fa, &a.0, &b.0), matrix::add(&fa, &a.1, &b.1)),
            move |a| (matrix::neg(&fn_, &a.0), matrix::neg(&fn_, &a.1)),
            budget,
            show_pair,
        )?;
        let u = up(f, m, budget)?;
        let g = matrix_semidirect(
            &normal,
            &u,
            |a, (x, b)| (matrix::mul(f, x, &a.transpose()), congruence(f, a, b)),
            budget,
        )?;
        let q = f.order();
        Ok((g, format!("((F_{q})^{m} x Antisym({m},{q})) : Up_{m}(F_{q})")))
    }
}

/// Expected order of a model by the closed forms, where one exists.
pub fn model_order_formula(entry: &str, spec: &ClassicalSpec) -> Option<u128> {
    let q = spec.field.order() as u128;
    let m = (spec.dim / 2) as u32;
    let n = spec.dim as u32;
    Some(match entry {
        "PSL-p" => q.pow(n * (n - 1) / 2),
        "PSp-p" => q.pow(m * m),
        "Omega-even-p" | "Omega-even-2" => q.pow(m * (m.max(1) - 1)),
        "Omega-odd-p" => q.pow(m * m),
        "U-even-p" => (spec.q() as u128).pow(m * (2 * m - 1)),
        "U-odd-p" => (spec.q() as u128).pow(m * (2 * m + 1)),
        _ => return None,
    })
}

/// `l^{s n0 + sum_j floor(n0 / l^j)}`, the order of the `GL-l` model.
pub fn gl_model_order(l: u64, s: u32, n0: u64) -> u128 {
    let mut e = s as u64 * n0;
    let mut lj = l;
    while lj <= n0 {
        e += n0 / lj;
        lj *= l;
    }
    (l as u128).pow(e as u32)
}

/// `l^{min(s, v_l(n))}`: the size of the diagonal `{x in mu_{l^s} : x^n = 1}`.
pub fn diagonal_order(l: u64, s: u32, n: u64) -> u64 {
    let v = v_l(l, n as u128).unwrap_or(0);
    l.pow(s.min(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{fingerprint, is_abelian};
    use crate::iso::is_isomorphic;

    const B: usize = 1 << 20;

    fn field(q: u64) -> Arc<FiniteField> {
        FiniteField::with_order(q).unwrap()
    }

    fn model(id: &str, family: Family, dim: usize, q: u64, sign: Option<Sign>, l: u64) -> Result<Model> {
        let spec = ClassicalSpec::new(family, dim, q, sign).unwrap();
        build_model(lookup(id).unwrap(), &spec, l, ModelOptions::default(), &Limits::default())
    }

    #[test]
    fn building_block_orders() {
        assert_eq!(up(&field(2), 3, B).unwrap().order(), 8);
        assert_eq!(up(&field(3), 1, B).unwrap().order(), 1);
        assert_eq!(sym(&field(3), 2, B).unwrap().order(), 27);
        assert_eq!(antisym(&field(3), 3, B).unwrap().order(), 27);
        assert_eq!(antisym(&field(2), 2, B).unwrap().order(), 8);
        assert_eq!(antisym0(&field(4), 2, B).unwrap().order(), 4);
        assert_eq!(antisym_star(&field(4), 1, B).unwrap().order(), 2);
        assert_eq!(antisym_star(&field(9), 1, B).unwrap().order(), 3);
        assert_eq!(antisym_star(&field(4), 2, B).unwrap().order(), 16);
    }

    #[test]
    fn s_group_matches_the_constraint_set() {
        for (q2, m, expect) in [(4u64, 1usize, 8usize), (9, 1, 27), (4, 2, 256)] {
            let f = field(q2);
            let s = s_group(&f, m, B).unwrap();
            assert_eq!(s.order(), expect);
            if m == 1 {
                let all: Vec<SElement> = f
                    .elements()
                    .flat_map(|y| f.elements().map(move |b| (y, b)))
                    .map(|(y, b)| (Matrix::from_rows(&[&[y]]), Matrix::from_rows(&[&[b]])))
                    .filter(|e| s_constraint(&f, e))
                    .collect();
                assert_eq!(all.len(), expect);
                assert!(all.iter().all(|e| s.index_of(e).is_some()));
            }
            s.group().check_axioms(1 << 24).unwrap();
        }
    }

    #[test]
    fn defining_characteristic_models() {
        let d8 = dihedral(8).unwrap();
        let g = model("PSL-p", Family::PSL, 3, 2, None, 2).unwrap();
        assert!(is_isomorphic(&g.group, &d8, &Limits::default()).unwrap().is_isomorphic());
        assert_eq!(model("PSL-p", Family::PSL, 2, 3, None, 3).unwrap().group.order(), 3);
        let v4 = model("PSL-p", Family::PSL, 2, 4, None, 2).unwrap().group;
        assert!(is_abelian(&v4));
        assert_eq!(fingerprint(&v4, B).unwrap().exponent, 2);
        assert_eq!(model("PSp-p", Family::PSp, 4, 3, None, 3).unwrap().group.order(), 81);
        assert_eq!(model("PSp-p", Family::PSp, 2, 3, None, 3).unwrap().group.order(), 3);
        assert_eq!(model("PSp-p", Family::PSp, 4, 2, None, 2).unwrap().group.order(), 16);
        assert_eq!(model("Omega-even-2", Family::Omega, 4, 4, Some(Sign::Plus), 2).unwrap().group.order(), 16);
        assert_eq!(model("U-odd-p", Family::U, 3, 9, None, 3).unwrap().group.order(), 27);
        assert!(matches!(
            model("PSL-p", Family::PSL, 3, 2, None, 3),
            Err(Error::Inapplicable(_))
        ));
    }

    #[test]
    fn cross_characteristic_models() {
        assert_eq!(model("PSL-l", Family::PSL, 2, 4, None, 3).unwrap().group.order(), 3);
        assert_eq!(model("PSL-l", Family::PSL, 2, 7, None, 3).unwrap().group.order(), 3);
        assert_eq!(model("SL-l", Family::SL, 1, 4, None, 3).unwrap().group.order(), 1);
        assert_eq!(model("SL-l", Family::SL, 3, 4, None, 3).unwrap().group.order(), 27);
        assert_eq!(model("PSL-l", Family::PSL, 3, 4, None, 3).unwrap().group.order(), 9);
        assert!(matches!(model("PSL-l", Family::PSL, 2, 4, None, 5), Err(Error::Inapplicable(_))));
        assert!(matches!(model("PSL-l", Family::PSL, 2, 5, None, 2), Err(Error::Inapplicable(_))));

        let gl = model("GL-l", Family::GL, 4, 2, None, 5).unwrap();
        assert_eq!(gl.group.order(), 5);
        assert_eq!(gl.constants["d"], 4);
        assert_eq!(model("GL-l", Family::GL, 2, 4, None, 3).unwrap().group.order(), 9);
        assert_eq!(model("GL-l", Family::GL, 2, 2, None, 7).unwrap().group.order(), 1);

        let r = model("PSp-l-reduce", Family::PSp, 4, 5, None, 3).unwrap();
        assert_eq!(r.group.order(), 9);
        assert_eq!(r.reductions, ["PSp(4,5) -> GL(4,5)"]);
        assert_eq!(model("PSp-l-reduce", Family::PSp, 4, 4, None, 3).unwrap().group.order(), 9);
    }

    #[test]
    fn two_local_models() {
        assert_eq!(model("PSp-2", Family::PSp, 2, 3, None, 2).unwrap().group.order(), 4);
        assert_eq!(model("PSp-2", Family::PSp, 4, 3, None, 2).unwrap().group.order(), 64);
        let d8 = dihedral(8).unwrap();
        for (eps, q) in [(Sign::Plus, 5), (Sign::Minus, 3)] {
            let g = model("O-even-2", Family::O, 2, q, Some(eps), 2).unwrap().group;
            assert!(is_isomorphic(&g, &d8, &Limits::default()).unwrap().is_isomorphic());
        }
        let v4 = model("O-even-2", Family::O, 2, 3, Some(Sign::Plus), 2).unwrap().group;
        assert_eq!((v4.order(), is_abelian(&v4)), (4, true));
        assert_eq!(model("O-odd-2", Family::O, 3, 5, None, 2).unwrap().group.order(), 16);
    }

    #[test]
    fn order_identities() {
        assert_eq!(gl_model_order(3, 1, 2), 9);
        assert_eq!(gl_model_order(2, 1, 4), 2u128.pow(4 + 3));
        assert_eq!(diagonal_order(3, 1, 3), 3);
        assert_eq!(diagonal_order(3, 2, 2), 1);
        for (q, n) in [(4u64, 3usize), (7, 3), (4, 2)] {
            let psl = model("PSL-l", Family::PSL, n, q, None, 3).unwrap().group.order() as u64;
            let sl = model("SL-l", Family::SL, n, q, None, 3).unwrap().group.order() as u64;
            let s = v_l(3, (q - 1) as u128).unwrap();
            assert_eq!(sl, psl * diagonal_order(3, s, n as u64));
        }
    }

    #[test]
    fn unitary_reductions() {
        let r = model("PSU-l-reduce", Family::PSU, 2, 4, None, 3).unwrap();
        assert_eq!(r.reductions, ["PSU(2,4) -> SL(2,4)"]);
        assert_eq!(r.group.order(), 3);
        let r = model("U-l-reduce", Family::U, 2, 4, None, 3).unwrap();
        assert_eq!(r.reductions, ["U(2,4) -> GL(2,4)"]);
        assert_eq!(r.group.order(), 9);
        let r = model("U-l-reduce", Family::U, 4, 4, None, 5).unwrap();
        assert_eq!(r.reductions, ["U(4,4) -> GL(2,4)"]);
        assert_eq!(r.group.order(), 5);
        let r = model("PSU-l-reduce", Family::PSU, 2, 4, None, 5).unwrap();
        assert_eq!(r.reductions.len(), 2);
        assert!(matches!(model("U-l-reduce", Family::U, 3, 4, None, 2), Err(Error::Inapplicable(_))));
    }
}
