//! The classical groups GL, SL, Sp, U, O and their derived and projective
//! relatives, built by closure from standard generators and cross-checked
//! against the closed-form orders.
//!
//! Basis conventions:
//! - symplectic: `J = [[0, I], [-I, 0]]`, `g^T J g = J`;
//! - unitary: `H = [[0, I], [I, 0]]` (even) or `[[0, 0, I], [0, 1, 0], [I, 0, 0]]`
//!   (odd), `conj(g)^T H g = H`;
//! - orthogonal: `Q(x) = x^T U x` with `U` upper triangular, hyperbolic pairs
//!   `(i, h + i)` first, then the anisotropic plane (minus type) or `z^2`
//!   (odd dimension).

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::field::{gcd, Fe, FiniteField};
use crate::group::{central_quotient, Elem, Group};
use crate::matrix::{self, matrix_group, Matrix, MatrixGroup, MAX_DIM};
use crate::{Error, Limits, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    GL,
    SL,
    PSL,
    Sp,
    PSp,
    U,
    SU,
    PSU,
    O,
    SO,
    Omega,
    POmega,
}

impl Family {
    pub const ALL: [Family; 12] = [
        Family::GL,
        Family::SL,
        Family::PSL,
        Family::Sp,
        Family::PSp,
        Family::U,
        Family::SU,
        Family::PSU,
        Family::O,
        Family::SO,
        Family::Omega,
        Family::POmega,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::GL => "GL",
            Family::SL => "SL",
            Family::PSL => "PSL",
            Family::Sp => "Sp",
            Family::PSp => "PSp",
            Family::U => "U",
            Family::SU => "SU",
            Family::PSU => "PSU",
            Family::O => "O",
            Family::SO => "SO",
            Family::Omega => "Omega",
            Family::POmega => "POmega",
        }
    }

    pub fn is_orthogonal(self) -> bool {
        matches!(self, Family::O | Family::SO | Family::Omega | Family::POmega)
    }

    pub fn is_unitary(self) -> bool {
        matches!(self, Family::U | Family::SU | Family::PSU)
    }

    pub fn is_symplectic(self) -> bool {
        matches!(self, Family::Sp | Family::PSp)
    }

    pub fn is_projective(self) -> bool {
        matches!(self, Family::PSL | Family::PSp | Family::PSU | Family::POmega)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown family {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn as_int(self) -> i128 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// A classical group instance. For the unitary families `field` is the
/// quadratic extension `F_{q^2}`, matching the notation `U(n, q^2)`.
#[derive(Clone, PartialEq, Eq)]
pub struct ClassicalSpec {
    pub family: Family,
    pub dim: usize,
    pub field: Arc<FiniteField>,
    pub sign: Option<Sign>,
}

impl fmt::Debug for ClassicalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ClassicalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        if let Some(s) = self.sign {
            write!(f, "{}", s.symbol())?;
        }
        write!(f, "({},{})", self.dim, self.field.order())
    }
}

impl ClassicalSpec {
    /// Validates and builds a spec; `field_order` is the order of the field
    /// the matrices live over (so `q^2` for unitary families).
    pub fn new(family: Family, dim: usize, field_order: u64, sign: Option<Sign>) -> Result<ClassicalSpec> {
        let field = FiniteField::with_order(field_order)
            .map_err(|e| if e.is_budget() { e } else { Error::InvalidSpec(e.to_string()) })?;
        ClassicalSpec::with_field(family, dim, field, sign)
    }

    pub fn with_field(
        family: Family,
        dim: usize,
        field: Arc<FiniteField>,
        sign: Option<Sign>,
    ) -> Result<ClassicalSpec> {
        let bad = |msg: String| Err(Error::InvalidSpec(msg));
        if dim == 0 || dim > MAX_DIM {
            return bad(format!("dimension must be in 1..={MAX_DIM}, got {dim}"));
        }
        if family.is_symplectic() && !dim.is_multiple_of(2) {
            return bad(format!("symplectic dimension must be even, got {dim}"));
        }
        if family.is_unitary() && !field.has_conjugation() {
            return bad(format!(
                "unitary groups need a field of square order, got {}",
                field.order()
            ));
        }
        if family.is_orthogonal() {
            if dim < 2 {
                return bad("orthogonal dimension must be at least 2".into());
            }
            match (dim.is_multiple_of(2), sign) {
                (true, None) => return bad("even-dimensional orthogonal groups need a sign".into()),
                (false, Some(_)) => return bad("odd-dimensional orthogonal groups take no sign".into()),
                _ => {}
            }
            if dim % 2 == 1
                && field.characteristic() == 2
                && matches!(family, Family::Omega | Family::POmega)
            {
                return bad("Omega in odd dimension is only built for odd q".into());
            }
        } else if sign.is_some() {
            return bad(format!("{family} takes no sign"));
        }
        Ok(ClassicalSpec { family, dim, field, sign })
    }

    /// `q`: the field order, or its square root for unitary families.
    pub fn q(&self) -> u64 {
        if self.family.is_unitary() {
            self.field.fixed_order().expect("validated")
        } else {
            self.field.order()
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.field.characteristic()
    }

    /// The matrix group underlying this spec before any quotient.
    pub fn linear_family(&self) -> Family {
        match self.family {
            Family::PSL => Family::SL,
            Family::PSp => Family::Sp,
            Family::PSU => Family::SU,
            Family::POmega => Family::Omega,
            f => f,
        }
    }

    pub fn with_family(&self, family: Family) -> Result<ClassicalSpec> {
        ClassicalSpec::with_field(family, self.dim, self.field.clone(), self.sign)
    }
}

/// Closed-form order of a classical group, or `None` if it does not fit in
/// a `u128`.
pub fn order_formula(spec: &ClassicalSpec) -> Option<u128> {
    let q = spec.q() as u128;
    let n = spec.dim as u32;
    let pow = |b: u128, e: u32| b.checked_pow(e);
    fn product(factors: impl IntoIterator<Item = Option<u128>>) -> Option<u128> {
        factors.into_iter().try_fold(1u128, |acc, x| acc.checked_mul(x?))
    }
    let gl = |n: u32| {
        product([pow(q, n * n.saturating_sub(1) / 2)].into_iter().chain((1..=n).map(|i| Some(pow(q, i)? - 1))))
    };
    let sp = |m: u32| product([pow(q, m * m)].into_iter().chain((1..=m).map(|i| Some(pow(q, 2 * i)? - 1))));
    let gu = |n: u32| {
        let factor = |i: u32| if i.is_multiple_of(2) { Some(pow(q, i)? - 1) } else { pow(q, i)?.checked_add(1) };
        product([pow(q, n * n.saturating_sub(1) / 2)].into_iter().chain((1..=n).map(factor)))
    };
    let odd_q = q % 2 == 1;
    // q^m - eps for the even-dimensional orthogonal groups
    let top = |m: u32| -> Option<u128> {
        match spec.sign.expect("validated") {
            Sign::Plus => Some(pow(q, m)? - 1),
            Sign::Minus => pow(q, m)?.checked_add(1),
        }
    };
    let o = || -> Option<u128> {
        let m = n / 2;
        if n.is_multiple_of(2) {
            let rest = (1..m).map(|i| Some(pow(q, 2 * i)? - 1));
            product([Some(2), pow(q, m * (m - 1)), top(m)].into_iter().chain(rest))
        } else if odd_q {
            sp(m)?.checked_mul(2)
        } else {
            sp(m)
        }
    };
    let omega = || if odd_q { Some(o()? / 4) } else { Some(o()? / 2) };
    let g = |a: u128, b: u128| gcd(a as u64, (b % a) as u64) as u128;
    Some(match spec.family {
        Family::GL => gl(n)?,
        Family::SL => gl(n)? / (q - 1),
        Family::PSL => gl(n)? / (q - 1) / g(n as u128, q - 1),
        Family::Sp => sp(n / 2)?,
        Family::PSp => sp(n / 2)? / g(2, q - 1),
        Family::U => gu(n)?,
        Family::SU => gu(n)? / (q + 1),
        Family::PSU => gu(n)? / (q + 1) / g(n as u128, q + 1),
        Family::O => o()?,
        Family::SO if odd_q => o()? / 2,
        Family::SO => o()?,
        Family::Omega => omega()?,
        Family::POmega if n.is_multiple_of(2) && odd_q => omega()? / (g(4, top(n / 2)?) / 2),
        Family::POmega => omega()?,
    })
}

/// The form preserved by a classical matrix group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Form {
    None,
    /// `g^T J g = J`
    Symplectic(Matrix),
    /// `conj(g)^T H g = H`
    Hermitian(Matrix),
    /// `Q(x) = x^T U x`, `U` upper triangular
    Quadratic(Matrix),
}

impl Form {
    pub fn preserved_by(&self, f: &FiniteField, g: &Matrix) -> bool {
        match self {
            Form::None => true,
            Form::Symplectic(j) => matrix::mul(f, &matrix::mul(f, &g.transpose(), j), g) == *j,
            Form::Hermitian(h) => {
                let gbar = matrix::conj(f, g).expect("unitary field has conjugation");
                matrix::mul(f, &matrix::mul(f, &gbar.transpose(), h), g) == *h
            }
            Form::Quadratic(u) => {
                let m = matrix::sub(f, &matrix::mul(f, &matrix::mul(f, &g.transpose(), u), g), u);
                (0..m.rows()).all(|i| {
                    m[(i, i)] == Fe::ZERO
                        && (i + 1..m.rows()).all(|j| f.add(m[(i, j)], m[(j, i)]) == Fe::ZERO)
                })
            }
        }
    }
}

/// Value of the quadratic form `x^T U x`.
pub fn quadratic_value(f: &FiniteField, u: &Matrix, x: &[Fe]) -> Fe {
    let mut acc = Fe::ZERO;
    for i in 0..x.len() {
        for j in i..x.len() {
            acc = f.add(acc, f.mul(u[(i, j)], f.mul(x[i], x[j])));
        }
    }
    acc
}

/// Smallest `(b, c)` (by field code, `c` first) with `t^2 + b t + c`
/// irreducible over `f`.
fn anisotropic_pair(f: &FiniteField) -> (Fe, Fe) {
    for c in f.elements() {
        for b in f.elements() {
            let has_root = f.elements().any(|t| f.add(f.add(f.mul(t, t), f.mul(b, t)), c) == Fe::ZERO);
            if !has_root {
                return (b, c);
            }
        }
    }
    unreachable!("every finite field has an irreducible quadratic")
}

/// Number of hyperbolic pairs in the orthogonal form for `spec`.
fn hyperbolic_rank(spec: &ClassicalSpec) -> usize {
    match (spec.dim % 2, spec.sign) {
        (0, Some(Sign::Minus)) => spec.dim / 2 - 1,
        _ => spec.dim / 2,
    }
}

pub fn standard_form(spec: &ClassicalSpec) -> Form {
    let n = spec.dim;
    let f = &spec.field;
    if spec.family.is_symplectic() {
        let m = n / 2;
        let mut j = Matrix::zero(n, n);
        for i in 0..m {
            j[(i, m + i)] = Fe::ONE;
            j[(m + i, i)] = f.neg(Fe::ONE);
        }
        Form::Symplectic(j)
    } else if spec.family.is_unitary() {
        let m = n / 2;
        let mut h = Matrix::zero(n, n);
        let offset = n - m;
        for i in 0..m {
            h[(i, offset + i)] = Fe::ONE;
            h[(offset + i, i)] = Fe::ONE;
        }
        if n % 2 == 1 {
            h[(m, m)] = Fe::ONE;
        }
        Form::Hermitian(h)
    } else if spec.family.is_orthogonal() {
        let h = hyperbolic_rank(spec);
        let mut u = Matrix::zero(n, n);
        for i in 0..h {
            u[(i, h + i)] = Fe::ONE;
        }
        if n % 2 == 1 {
            u[(n - 1, n - 1)] = Fe::ONE;
        } else if spec.sign == Some(Sign::Minus) {
            let (b, c) = anisotropic_pair(f);
            u[(n - 2, n - 2)] = Fe::ONE;
            u[(n - 2, n - 1)] = b;
            u[(n - 1, n - 1)] = c;
        }
        Form::Quadratic(u)
    } else {
        Form::None
    }
}

/// Transvection generators `I + b E_{i,i±1}` of `SL_n`, `b` over an
/// `F_p`-basis.
fn sl_generators(f: &FiniteField, n: usize) -> Vec<Matrix> {
    let mut gens = Vec::new();
    for i in 0..n.saturating_sub(1) {
        for &b in &f.prime_basis() {
            gens.push(matrix::elementary(n, i, i + 1, b));
            gens.push(matrix::elementary(n, i + 1, i, b));
        }
    }
    gens
}

fn gl_generators(f: &FiniteField, n: usize) -> Vec<Matrix> {
    let mut d = Matrix::identity(n);
    d[(0, 0)] = f.primitive();
    let mut gens = vec![d];
    gens.extend(sl_generators(f, n));
    gens
}

fn inverse_transpose(f: &FiniteField, a: &Matrix) -> Matrix {
    matrix::inverse(f, a).expect("invertible").transpose()
}

fn symplectic_generators(f: &FiniteField, n: usize, j: &Matrix) -> Vec<Matrix> {
    let m = n / 2;
    let mut gens = Vec::new();
    for a in gl_generators(f, m) {
        gens.push(matrix::block_diag(&[&a, &inverse_transpose(f, &a)]));
    }
    for i in 0..m {
        for k in i..m {
            for &b in &f.prime_basis() {
                let mut g = Matrix::identity(n);
                g[(i, m + k)] = b;
                g[(k, m + i)] = b;
                gens.push(g);
            }
        }
    }
    gens.push(*j);
    gens
}

fn unitary_generators(f: &FiniteField, n: usize, h: &Matrix) -> Result<Vec<Matrix>> {
    let m = n / 2;
    let bar = |a: &Matrix| matrix::conj(f, a).expect("unitary field");
    let q = f.fixed_order()?;
    // diagonal b with b + conj(b) = 0
    let trace_zero: Vec<Fe> = f.elements().filter(|&b| f.add(b, f.conj(b).unwrap()) == Fe::ZERO).collect();
    let mut gens = Vec::new();
    if m > 0 {
        for a in gl_generators(f, m) {
            let dual = inverse_transpose(f, &bar(&a));
            if n.is_multiple_of(2) {
                gens.push(matrix::block_diag(&[&a, &dual]));
            } else {
                gens.push(matrix::block_diag(&[&a, &Matrix::identity(1), &dual]));
            }
        }
    }
    if n.is_multiple_of(2) {
        // [[I, B], [0, I]] with B^T = -conj(B)
        for i in 0..m {
            for &b in &trace_zero {
                let mut g = Matrix::identity(n);
                g[(i, m + i)] = b;
                gens.push(g);
            }
            for k in i + 1..m {
                for &b in &f.prime_basis() {
                    let mut g = Matrix::identity(n);
                    g[(i, m + k)] = b;
                    g[(k, m + i)] = f.neg(f.conj(b)?);
                    gens.push(g);
                }
            }
        }
    } else {
        // middle coordinate: lambda with lambda * conj(lambda) = 1
        let lambda = f.pow(f.primitive(), q - 1);
        let mut g = Matrix::identity(n);
        g[(m, m)] = lambda;
        gens.push(g);
        // u(y, B) = [[I, -conj(y)^T, B], [0, 1, y], [0, 0, I]]
        // with B + conj(B)^T = -conj(y)^T y
        for k in 0..m {
            for &beta in &f.prime_basis() {
                let norm = f.mul(f.conj(beta)?, beta);
                let target = f.neg(norm);
                let bkk = f
                    .elements()
                    .find(|&b| f.add(b, f.conj(b).unwrap()) == target)
                    .expect("trace is surjective");
                let mut g = Matrix::identity(n);
                g[(m, m + 1 + k)] = beta;
                g[(k, m)] = f.neg(f.conj(beta)?);
                g[(k, m + 1 + k)] = bkk;
                gens.push(g);
            }
        }
        for i in 0..m {
            for &b in &trace_zero {
                let mut g = Matrix::identity(n);
                g[(i, m + 1 + i)] = b;
                gens.push(g);
            }
            for k in i + 1..m {
                for &b in &f.prime_basis() {
                    let mut g = Matrix::identity(n);
                    g[(i, m + 1 + k)] = b;
                    g[(k, m + 1 + i)] = f.neg(f.conj(b)?);
                    gens.push(g);
                }
            }
        }
    }
    if m > 0 {
        gens.push(*h);
    }
    Ok(gens)
}

/// Reflection `x -> x - Q(v)^-1 B(v, x) v` with `B` the polar form.
fn reflection(f: &FiniteField, u: &Matrix, v: &[Fe]) -> Option<Matrix> {
    let qv = quadratic_value(f, u, v);
    let qinv = f.inv(qv)?;
    let n = v.len();
    let polar = matrix::add(f, u, &u.transpose());
    // row vector v^T (U + U^T)
    let row: Vec<Fe> = (0..n)
        .map(|j| (0..n).fold(Fe::ZERO, |acc, i| f.add(acc, f.mul(v[i], polar[(i, j)]))))
        .collect();
    Some(Matrix::from_fn(n, n, |i, j| {
        let id = if i == j { Fe::ONE } else { Fe::ZERO };
        f.sub(id, f.mul(qinv, f.mul(v[i], row[j])))
    }))
}

fn vectors(f: &FiniteField, n: usize) -> impl Iterator<Item = Vec<Fe>> + '_ {
    let q = f.order() as usize;
    (1..q.pow(n as u32)).map(move |mut code| {
        (0..n)
            .map(|_| {
                let c = Fe((code % q) as u8);
                code /= q;
                c
            })
            .collect()
    })
}

fn orthogonal_generators(f: &FiniteField, n: usize, h: usize, u: &Matrix) -> Vec<Matrix> {
    let mut gens: Vec<Matrix> = vectors(f, n).filter_map(|v| reflection(f, u, &v)).collect();
    if h > 0 {
        let pad = |g: Matrix| {
            let mut full = Matrix::identity(n);
            full.set_block(0, 0, &g);
            full
        };
        for a in gl_generators(f, h) {
            gens.push(pad(matrix::block_diag(&[&a, &inverse_transpose(f, &a)])));
        }
        for i in 0..h {
            for k in i + 1..h {
                for &b in &f.prime_basis() {
                    let mut g = Matrix::identity(n);
                    g[(i, h + k)] = b;
                    g[(k, h + i)] = f.neg(b);
                    gens.push(g);
                }
            }
        }
        let mut swap = Matrix::identity(n);
        swap[(0, 0)] = Fe::ZERO;
        swap[(h, h)] = Fe::ZERO;
        swap[(0, h)] = Fe::ONE;
        swap[(h, 0)] = Fe::ONE;
        gens.push(swap);
    }
    gens
}

/// `Omega` generators for odd `q`: `r_{u0} r_v` with `Q(u0)`, `Q(v)` in the
/// same square class, for both classes.
fn omega_generators_odd(f: &FiniteField, n: usize, u: &Matrix) -> Vec<Matrix> {
    let mut gens = Vec::new();
    for square in [true, false] {
        let class: Vec<(Vec<Fe>, Matrix)> = vectors(f, n)
            .filter_map(|v| {
                let qv = quadratic_value(f, u, &v);
                (qv != Fe::ZERO && f.is_square(qv) == square)
                    .then(|| reflection(f, u, &v).map(|r| (v, r)))
                    .flatten()
            })
            .collect();
        if let Some((_, r0)) = class.first() {
            for (_, r) in &class[1..] {
                gens.push(matrix::mul(f, r0, r));
            }
        }
    }
    gens
}

/// A built classical group.
#[derive(Clone)]
pub struct Classical {
    pub spec: ClassicalSpec,
    /// The matrix group before any central quotient.
    pub matrices: MatrixGroup,
    /// The group itself: `matrices`, or its quotient by scalars for the
    /// projective families.
    pub group: Group,
    pub form: Form,
    pub order: u128,
}

impl fmt::Debug for Classical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.spec, self.order)
    }
}

fn check_order(what: String, enumerated: usize, formula: u128) -> Result<()> {
    if enumerated as u128 != formula {
        return Err(Error::OrderMismatch { what, enumerated: enumerated as u128, formula });
    }
    Ok(())
}

/// Subgroup of `g` cut out by `keep`, re-enumerated as its own matrix group.
fn filtered(
    f: &Arc<FiniteField>,
    n: usize,
    g: &MatrixGroup,
    keep: impl Fn(&Matrix) -> bool,
    budget: usize,
) -> Result<MatrixGroup> {
    let members: Vec<Matrix> = g.elements().iter().filter(|m| keep(m)).copied().collect();
    let sub = matrix_group(f, n, &members, budget)?;
    if sub.order() != members.len() {
        return Err(Error::NotClosed(format!(
            "{} selected matrices generate {}",
            members.len(),
            sub.order()
        )));
    }
    Ok(sub)
}

fn linear_group(spec: &ClassicalSpec, form: &Form, limits: &Limits) -> Result<MatrixGroup> {
    let f = &spec.field;
    let n = spec.dim;
    let budget = limits.elements;
    let family = spec.linear_family();
    let check_gens = |gens: &[Matrix]| -> Result<()> {
        match gens.iter().find(|g| !form.preserved_by(f, g)) {
            Some(g) => Err(Error::Relation(format!("generator {g:?} does not preserve the form"))),
            None => Ok(()),
        }
    };
    let by_parent = |parent: Family| -> Result<MatrixGroup> {
        let parent_spec = ClassicalSpec { family: parent, ..spec.clone() };
        linear_group(&parent_spec, form, limits)
    };
    let det_one = |g: &MatrixGroup| filtered(f, n, g, |m| matrix::det(f, m) == Fe::ONE, budget);
    Ok(match family {
        Family::GL => matrix_group(f, n, &gl_generators(f, n), budget)?,
        Family::SL => matrix_group(f, n, &sl_generators(f, n), budget)?,
        Family::Sp => {
            let Form::Symplectic(j) = form else { unreachable!() };
            let gens = symplectic_generators(f, n, j);
            check_gens(&gens)?;
            matrix_group(f, n, &gens, budget)?
        }
        Family::U => {
            let Form::Hermitian(h) = form else { unreachable!() };
            let gens = unitary_generators(f, n, h)?;
            check_gens(&gens)?;
            matrix_group(f, n, &gens, budget)?
        }
        Family::SU => det_one(&by_parent(Family::U)?)?,
        Family::O => {
            let Form::Quadratic(u) = form else { unreachable!() };
            let gens = orthogonal_generators(f, n, hyperbolic_rank(spec), u);
            check_gens(&gens)?;
            matrix_group(f, n, &gens, budget)?
        }
        Family::SO => det_one(&by_parent(Family::O)?)?,
        Family::Omega => {
            let Form::Quadratic(u) = form else { unreachable!() };
            if f.characteristic() == 2 {
                let o = by_parent(Family::O)?;
                let id = Matrix::identity(n);
                filtered(f, n, &o, |m| matrix::rank(f, &matrix::sub(f, m, &id)).is_multiple_of(2), budget)?
            } else {
                let gens = omega_generators_odd(f, n, u);
                check_gens(&gens)?;
                matrix_group(f, n, &gens, budget)?
            }
        }
        Family::PSL | Family::PSp | Family::PSU | Family::POmega => unreachable!(),
    })
}

/// Builds a classical group and checks its order against [`order_formula`].
pub fn build(spec: &ClassicalSpec, limits: &Limits) -> Result<Classical> {
    let linear_spec = spec.with_family(spec.linear_family())?;
    // SU, SO and Omega are cut out of a larger parent that is enumerated first
    let parent_formula = match spec.linear_family() {
        Family::SU => order_formula(&spec.with_family(Family::U)?),
        Family::SO => order_formula(&spec.with_family(Family::O)?),
        Family::Omega if spec.characteristic() == 2 => order_formula(&spec.with_family(Family::O)?),
        _ => order_formula(&linear_spec),
    };
    let too_big = Error::Budget { limit: limits.elements, reached: usize::MAX };
    match parent_formula {
        Some(order) if order <= limits.elements as u128 => {}
        Some(order) => return Err(Error::Budget { limit: limits.elements, reached: order.min(usize::MAX as u128) as usize }),
        None => return Err(too_big),
    }
    // both fit, being at most the parent order
    let formula = order_formula(spec).expect("bounded by the parent");
    let linear_formula = order_formula(&linear_spec).expect("bounded by the parent");
    let form = standard_form(spec);
    let matrices = linear_group(spec, &form, limits)?;
    check_order(format!("{linear_spec}"), matrices.order(), linear_formula)?;
    let name = spec.to_string();
    let group = if spec.family.is_projective() {
        let linear = matrices.group_named(&linear_spec.to_string());
        let scalars: Vec<Elem> = (0..matrices.order() as Elem)
            .filter(|&i| is_scalar(matrices.element(i)))
            .collect();
        central_quotient(&linear, &scalars, limits.elements)?.with_name(name)
    } else {
        matrices.group_named(&name)
    };
    check_order(spec.to_string(), group.order(), formula)?;
    Ok(Classical { spec: spec.clone(), matrices, group, form, order: formula })
}

fn is_scalar(m: &Matrix) -> bool {
    let d = m[(0, 0)];
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| m[(i, j)] == if i == j { d } else { Fe::ZERO }))
}

impl Classical {
    /// Checks that every enumerated matrix preserves the form.
    pub fn check_form(&self) -> Result<()> {
        let f = &self.spec.field;
        match self.matrices.elements().iter().find(|g| !self.form.preserved_by(f, g)) {
            Some(g) => Err(Error::Relation(format!("{g:?} does not preserve the form"))),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(family: Family, dim: usize, q: u64, sign: Option<Sign>) -> ClassicalSpec {
        ClassicalSpec::new(family, dim, q, sign).unwrap()
    }

    fn order(family: Family, dim: usize, q: u64, sign: Option<Sign>) -> usize {
        build(&spec(family, dim, q, sign), &Limits::default()).unwrap().group.order()
    }

    #[test]
    fn spec_validation_and_display() {
        assert!(ClassicalSpec::new(Family::Sp, 3, 3, None).is_err());
        assert!(ClassicalSpec::new(Family::U, 3, 2, None).is_err());
        assert!(ClassicalSpec::new(Family::O, 4, 3, None).is_err());
        assert!(ClassicalSpec::new(Family::O, 3, 3, Some(Sign::Plus)).is_err());
        assert!(ClassicalSpec::new(Family::Omega, 3, 4, None).is_err());
        assert!(ClassicalSpec::new(Family::GL, 2, 6, None).is_err());
        assert_eq!(spec(Family::O, 4, 5, Some(Sign::Plus)).to_string(), "O+(4,5)");
        assert_eq!(spec(Family::POmega, 4, 3, Some(Sign::Minus)).to_string(), "POmega-(4,3)");
        assert_eq!(spec(Family::U, 3, 4, None).q(), 2);
    }

    #[test]
    fn linear_orders() {
        assert_eq!(order(Family::GL, 2, 3, None), 48);
        assert_eq!(order(Family::GL, 1, 7, None), 6);
        assert_eq!(order(Family::PSL, 2, 4, None), 60);
        assert_eq!(order(Family::PSL, 3, 2, None), 168);
        assert_eq!(order(Family::GL, 2, 4, None), 180);
    }

    #[test]
    fn symplectic_and_unitary_orders() {
        assert_eq!(order(Family::Sp, 2, 3, None), 24);
        assert_eq!(order(Family::Sp, 4, 2, None), 720);
        assert_eq!(order(Family::U, 2, 4, None), 18);
        assert_eq!(order(Family::U, 3, 4, None), 648);
        assert_eq!(order(Family::SU, 3, 4, None), 216);
        assert_eq!(order(Family::PSU, 3, 4, None), 72);
        assert_eq!(order(Family::U, 2, 9, None), 96);
        assert_eq!(order(Family::U, 1, 9, None), 4);
    }

    #[test]
    fn orthogonal_orders() {
        let (p, m) = (Some(Sign::Plus), Some(Sign::Minus));
        assert_eq!(order(Family::O, 2, 5, p), 8);
        assert_eq!(order(Family::O, 2, 3, m), 8);
        assert_eq!(order(Family::O, 2, 3, p), 4);
        assert_eq!(order(Family::O, 4, 2, p), 72);
        assert_eq!(order(Family::Omega, 4, 2, p), 36);
        assert_eq!(order(Family::O, 4, 2, m), 120);
        assert_eq!(order(Family::Omega, 4, 2, m), 60);
        assert_eq!(order(Family::O, 3, 3, None), 48);
        assert_eq!(order(Family::Omega, 3, 3, None), 12);
        assert_eq!(order(Family::SO, 3, 3, None), 24);
        assert_eq!(order(Family::O, 4, 3, p), 1152);
        assert_eq!(order(Family::POmega, 4, 3, p), 144);
        assert_eq!(order(Family::O, 4, 3, m), 1440);
        assert_eq!(order(Family::POmega, 4, 3, m), 360);
        assert_eq!(order(Family::O, 3, 2, None), 6);
    }

    #[test]
    fn forms_are_preserved() {
        for s in [
            spec(Family::Sp, 4, 2, None),
            spec(Family::U, 3, 4, None),
            spec(Family::U, 2, 9, None),
            spec(Family::O, 2, 3, Some(Sign::Minus)),
            spec(Family::O, 3, 3, None),
            spec(Family::O, 4, 2, Some(Sign::Minus)),
        ] {
            build(&s, &Limits::default()).unwrap().check_form().unwrap();
        }
    }

    #[test]
    fn small_orthogonal_groups_by_filter() {
        // oracle: all 2x2 matrices over F_3 preserving the anisotropic form
        let s = spec(Family::O, 2, 3, Some(Sign::Minus));
        let Form::Quadratic(u) = standard_form(&s) else { panic!() };
        let f = &s.field;
        let mut count = 0;
        for code in 0..81u32 {
            let e = |k: u32| Fe(((code / 3u32.pow(k)) % 3) as u8);
            let g = Matrix::from_rows(&[&[e(0), e(1)], &[e(2), e(3)]]);
            if matrix::det(f, &g) != Fe::ZERO && Form::Quadratic(u).preserved_by(f, &g) {
                count += 1;
            }
        }
        assert_eq!(count, 8);
    }

    #[test]
    fn budget_is_checked_up_front() {
        let limits = Limits { elements: 1000, ..Limits::default() };
        let err = build(&spec(Family::Sp, 4, 3, None), &limits).unwrap_err();
        assert!(err.is_budget());
    }
}
