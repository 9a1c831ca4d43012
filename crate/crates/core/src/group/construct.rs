//! Synthesized groups: cyclic, dihedral and generalized quaternion groups,
//! direct and semidirect products, direct powers, central quotients and the
//! constrained subgroups of wreath-type products.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::{Elem, Group, GroupRepr, MemberSet, PermGroup, Permutation, Subgroup};
use crate::{Error, Result};

struct FnGroup {
    order: usize,
    gens: Vec<Elem>,
    mul: Box<dyn Fn(Elem, Elem) -> Elem + Send + Sync>,
    inv: Box<dyn Fn(Elem) -> Elem + Send + Sync>,
}

impl GroupRepr for FnGroup {
    fn order(&self) -> usize {
        self.order
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        (self.mul)(a, b)
    }
    fn inv(&self, a: Elem) -> Elem {
        (self.inv)(a)
    }
    fn generators(&self) -> &[Elem] {
        &self.gens
    }
}

fn fn_group(
    name: String,
    order: usize,
    gens: Vec<Elem>,
    mul: impl Fn(Elem, Elem) -> Elem + Send + Sync + 'static,
    inv: impl Fn(Elem) -> Elem + Send + Sync + 'static,
) -> Group {
    Group::from_repr(
        Arc::new(FnGroup { order, gens, mul: Box::new(mul), inv: Box::new(inv) }),
        name,
    )
}

pub fn trivial() -> Group {
    fn_group("1".into(), 1, Vec::new(), |_, _| 0, |_| 0)
}

/// Integers mod `n` under addition.
pub fn cyclic(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::InvalidParameter("cyclic group order must be at least 1".into()));
    }
    let m = n as Elem;
    let gens = if n > 1 { vec![1] } else { Vec::new() };
    Ok(fn_group(
        format!("C{n}"),
        n,
        gens,
        move |a, b| (a + b) % m,
        move |a| (m - a) % m,
    ))
}

/// `D_{2n}`, the dihedral group of order `two_n = 2n`: element `x^a y^b` is
/// stored as `b * n + a`.
pub fn dihedral(two_n: usize) -> Result<Group> {
    if two_n < 4 || !two_n.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "dihedral group order must be even and at least 4, got {two_n}"
        )));
    }
    let n = (two_n / 2) as Elem;
    let split = move |e: Elem| (e % n, e / n);
    let g = fn_group(
        format!("D{two_n}"),
        two_n,
        vec![1, n],
        move |a, b| {
            let ((ra, fa), (rb, fb)) = (split(a), split(b));
            // x^ra y^fa x^rb y^fb = x^(ra ± rb) y^(fa+fb)
            let r = if fa == 0 { (ra + rb) % n } else { (ra + n - rb) % n };
            ((fa + fb) % 2) * n + r
        },
        move |a| {
            let (r, f) = split(a);
            if f == 0 {
                (n - r) % n
            } else {
                a
            }
        },
    );
    let (x, y) = (1, n);
    let relations = [
        (g.pow(x, n as u64) == 0, "x^n = 1"),
        (g.mul(y, y) == 0, "y^2 = 1"),
        (g.mul(g.mul(y, x), y) == g.inv(x), "yxy = x^-1"),
    ];
    check_relations(&g, &relations)?;
    Ok(g)
}

/// `Q_{4n}`, the generalized quaternion group of order `four_n = 4n`:
/// element `w^a v^b` is stored as `b * 2n + a`.
pub fn quaternion(four_n: usize) -> Result<Group> {
    if four_n < 8 || !four_n.is_multiple_of(4) {
        return Err(Error::InvalidParameter(format!(
            "quaternion group order must be a multiple of 4 and at least 8, got {four_n}"
        )));
    }
    let n = (four_n / 4) as Elem;
    let two_n = 2 * n;
    let split = move |e: Elem| (e % two_n, e / two_n);
    let g = fn_group(
        format!("Q{four_n}"),
        four_n,
        vec![1, two_n],
        move |a, b| {
            let ((wa, va), (wb, vb)) = (split(a), split(b));
            // v w = w^-1 v and v^2 = w^n
            let mut w = if va == 0 { (wa + wb) % two_n } else { (wa + two_n - wb) % two_n };
            let v = va + vb;
            if v == 2 {
                w = (w + n) % two_n;
            }
            (v % 2) * two_n + w
        },
        move |a| {
            let (w, v) = split(a);
            if v == 0 {
                (two_n - w) % two_n
            } else {
                // (w^a v)^-1 = v^-1 w^-a = w^(a+n) v
                two_n + (w + n) % two_n
            }
        },
    );
    let (w, v) = (1, two_n);
    let relations = [
        (g.pow(w, n as u64) == g.mul(v, v), "w^n = v^2"),
        (g.pow(w, two_n as u64) == 0, "w^2n = 1"),
        (g.mul(g.mul(v, w), g.inv(v)) == g.inv(w), "vwv^-1 = w^-1"),
    ];
    check_relations(&g, &relations)?;
    Ok(g)
}

fn check_relations(g: &Group, relations: &[(bool, &str)]) -> Result<()> {
    match relations.iter().find(|(ok, _)| !ok) {
        Some((_, rel)) => Err(Error::Relation(format!("{}: {rel}", g.name()))),
        None => Ok(()),
    }
}

struct Product {
    a: Group,
    b: Group,
    gens: Vec<Elem>,
}

impl GroupRepr for Product {
    fn order(&self) -> usize {
        self.a.order() * self.b.order()
    }
    fn mul(&self, x: Elem, y: Elem) -> Elem {
        let nb = self.b.order() as Elem;
        self.a.mul(x / nb, y / nb) * nb + self.b.mul(x % nb, y % nb)
    }
    fn inv(&self, x: Elem) -> Elem {
        let nb = self.b.order() as Elem;
        self.a.inv(x / nb) * nb + self.b.inv(x % nb)
    }
    fn generators(&self) -> &[Elem] {
        &self.gens
    }
    fn label(&self, x: Elem) -> String {
        let nb = self.b.order() as Elem;
        format!("({}, {})", self.a.label(x / nb), self.b.label(x % nb))
    }
}

fn check_budget(order: u128, budget: usize) -> Result<usize> {
    if order > budget as u128 {
        return Err(Error::Budget { limit: budget, reached: order.min(usize::MAX as u128) as usize });
    }
    Ok(order as usize)
}

/// `A x B`; the pair `(a, b)` is stored as `a * |B| + b`.
pub fn direct_product(a: &Group, b: &Group, budget: usize) -> Result<Group> {
    check_budget(a.order() as u128 * b.order() as u128, budget)?;
    let nb = b.order() as Elem;
    let gens = a
        .generators()
        .iter()
        .map(|&g| g * nb)
        .chain(b.generators().iter().copied())
        .collect();
    let name = format!("{} x {}", a.name(), b.name());
    Ok(Group::from_repr(Arc::new(Product { a: a.clone(), b: b.clone(), gens }), name))
}

struct Power {
    base: Group,
    arity: usize,
    gens: Vec<Elem>,
}

impl Power {
    fn split(&self, x: Elem) -> Vec<Elem> {
        let nb = self.base.order() as Elem;
        let mut out = vec![0; self.arity];
        let mut x = x;
        for slot in out.iter_mut().rev() {
            *slot = x % nb;
            x /= nb;
        }
        out
    }

    fn join(&self, coords: &[Elem]) -> Elem {
        let nb = self.base.order() as Elem;
        coords.iter().fold(0, |acc, &c| acc * nb + c)
    }
}

impl GroupRepr for Power {
    fn order(&self) -> usize {
        self.base.order().pow(self.arity as u32)
    }
    fn mul(&self, x: Elem, y: Elem) -> Elem {
        let nb = self.base.order() as Elem;
        let (mut x, mut y) = (x, y);
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.arity {
            out += self.base.mul(x % nb, y % nb) * scale;
            scale *= nb;
            x /= nb;
            y /= nb;
        }
        out
    }
    fn inv(&self, x: Elem) -> Elem {
        let nb = self.base.order() as Elem;
        let mut x = x;
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.arity {
            out += self.base.inv(x % nb) * scale;
            scale *= nb;
            x /= nb;
        }
        out
    }
    fn generators(&self) -> &[Elem] {
        &self.gens
    }
    fn label(&self, x: Elem) -> String {
        let parts: Vec<String> = self.split(x).iter().map(|&c| self.base.label(c)).collect();
        format!("({})", parts.join(", "))
    }
}

/// The `arity`-fold direct power of a group, with access to coordinates.
/// Coordinate 0 is the most significant digit of the element index.
#[derive(Clone)]
pub struct PowerGroup {
    group: Group,
    inner: Arc<Power>,
}

impl PowerGroup {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn base(&self) -> &Group {
        &self.inner.base
    }

    pub fn arity(&self) -> usize {
        self.inner.arity
    }

    pub fn coords(&self, x: Elem) -> Vec<Elem> {
        self.inner.split(x)
    }

    pub fn encode(&self, coords: &[Elem]) -> Elem {
        self.inner.join(coords)
    }

    /// The element with every coordinate equal to `x`.
    pub fn diagonal(&self, x: Elem) -> Elem {
        self.encode(&vec![x; self.arity()])
    }
}

pub fn direct_power(base: &Group, arity: usize, budget: usize) -> Result<PowerGroup> {
    let order = (base.order() as u128).checked_pow(arity as u32).unwrap_or(u128::MAX);
    check_budget(order, budget)?;
    let mut gens = Vec::new();
    let proto = Power { base: base.clone(), arity, gens: Vec::new() };
    for i in 0..arity {
        for &g in base.generators() {
            let mut coords = vec![0; arity];
            coords[i] = g;
            gens.push(proto.join(&coords));
        }
    }
    let inner = Arc::new(Power { gens, ..proto });
    let group = Group::from_repr(inner.clone(), format!("({})^{arity}", base.name()));
    Ok(PowerGroup { group, inner })
}

/// A left action of `acting` on `target` by automorphisms, stored as a table.
#[derive(Clone)]
pub struct Action {
    acting: Group,
    target: Group,
    table: Arc<[Elem]>,
}

impl Action {
    /// Tabulates `f(h, x)` and verifies that every `h` acts as an
    /// automorphism and that `h -> f(h, .)` is a homomorphism. Both checks
    /// are exhaustive: against generators, which implies the full laws.
    pub fn from_fn(
        acting: &Group,
        target: &Group,
        f: impl Fn(Elem, Elem) -> Option<Elem>,
    ) -> Result<Action> {
        let (nh, nt) = (acting.order(), target.order());
        let mut table = Vec::with_capacity(nh * nt);
        for h in acting.elements() {
            for x in target.elements() {
                let y = f(h, x).ok_or_else(|| {
                    Error::InvalidAction(format!("image of {x} under {h} leaves the target"))
                })?;
                table.push(y);
            }
        }
        let action = Action { acting: acting.clone(), target: target.clone(), table: table.into() };
        action.verify()?;
        Ok(action)
    }

    pub fn trivial(acting: &Group, target: &Group) -> Action {
        let nt = target.order() as Elem;
        let table: Vec<Elem> = (0..acting.order()).flat_map(|_| 0..nt).collect();
        Action { acting: acting.clone(), target: target.clone(), table: table.into() }
    }

    #[inline]
    pub fn apply(&self, h: Elem, x: Elem) -> Elem {
        self.table[h as usize * self.target.order() + x as usize]
    }

    pub fn acting(&self) -> &Group {
        &self.acting
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    fn verify(&self) -> Result<()> {
        let (h_grp, n_grp) = (&self.acting, &self.target);
        let bad = |msg: String| Err(Error::InvalidAction(msg));
        for x in n_grp.elements() {
            if self.apply(0, x) != x {
                return bad(format!("identity moves {x}"));
            }
        }
        let mut seen = vec![false; n_grp.order()];
        for h in h_grp.elements() {
            seen.iter_mut().for_each(|s| *s = false);
            for x in n_grp.elements() {
                let y = self.apply(h, x);
                if seen[y as usize] {
                    return bad(format!("{h} is not a bijection"));
                }
                seen[y as usize] = true;
                for &g in n_grp.generators() {
                    if self.apply(h, n_grp.mul(x, g)) != n_grp.mul(y, self.apply(h, g)) {
                        return bad(format!("{h} is not a homomorphism at ({x}, {g})"));
                    }
                }
                for &k in h_grp.generators() {
                    if self.apply(h_grp.mul(h, k), x) != self.apply(h, self.apply(k, x)) {
                        return bad(format!("action is not compatible at ({h}, {k}, {x})"));
                    }
                }
            }
        }
        Ok(())
    }
}

struct Semidirect {
    action: Action,
    gens: Vec<Elem>,
}

impl GroupRepr for Semidirect {
    fn order(&self) -> usize {
        self.action.target.order() * self.action.acting.order()
    }
    // (x, h)(x', h') = (x . h(x'), h h')
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let nh = self.action.acting.order() as Elem;
        let (x, h) = (a / nh, a % nh);
        let (y, k) = (b / nh, b % nh);
        let n = &self.action.target;
        n.mul(x, self.action.apply(h, y)) * nh + self.action.acting.mul(h, k)
    }
    fn inv(&self, a: Elem) -> Elem {
        let nh = self.action.acting.order() as Elem;
        let (x, h) = (a / nh, a % nh);
        let hi = self.action.acting.inv(h);
        self.action.apply(hi, self.action.target.inv(x)) * nh + hi
    }
    fn generators(&self) -> &[Elem] {
        &self.gens
    }
    fn label(&self, a: Elem) -> String {
        let nh = self.action.acting.order() as Elem;
        format!(
            "({}; {})",
            self.action.target.label(a / nh),
            self.action.acting.label(a % nh)
        )
    }
}

/// `N ⋊ H`; the pair `(x, h)` is stored as `x * |H| + h`.
pub fn semidirect_product(action: &Action, budget: usize) -> Result<Group> {
    let (n, h) = (&action.target, &action.acting);
    check_budget(n.order() as u128 * h.order() as u128, budget)?;
    let nh = h.order() as Elem;
    let gens = n
        .generators()
        .iter()
        .map(|&x| x * nh)
        .chain(h.generators().iter().copied())
        .collect();
    let name = format!("{} : {}", n.name(), h.name());
    Ok(Group::from_repr(Arc::new(Semidirect { action: action.clone(), gens }), name))
}

struct Quotient {
    parent: Group,
    reps: Vec<Elem>,
    class_of: Vec<Elem>,
    gens: Vec<Elem>,
}

impl GroupRepr for Quotient {
    fn order(&self) -> usize {
        self.reps.len()
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.class_of[self.parent.mul(self.reps[a as usize], self.reps[b as usize]) as usize]
    }
    fn inv(&self, a: Elem) -> Elem {
        self.class_of[self.parent.inv(self.reps[a as usize]) as usize]
    }
    fn generators(&self) -> &[Elem] {
        &self.gens
    }
    fn label(&self, a: Elem) -> String {
        format!("[{}]", self.parent.label(self.reps[a as usize]))
    }
}

/// `G / <Z>` for a central subgroup. Each coset is represented by its
/// first element in `G`'s enumeration order.
pub fn central_quotient(g: &Group, z: &[Elem], budget: usize) -> Result<Group> {
    Ok(central_quotient_map(g, z, budget)?.0)
}

/// [`central_quotient`] together with the projection, as a table indexed by
/// elements of `g`.
pub fn central_quotient_map(g: &Group, z: &[Elem], budget: usize) -> Result<(Group, Arc<[Elem]>)> {
    let sub = Subgroup::generated(g, z, budget)?;
    for &x in &sub.parent_generators() {
        if g.generators().iter().any(|&h| !g.commutes(x, h)) {
            return Err(Error::NotCentral);
        }
    }
    let mut class_of = vec![Elem::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if class_of[x as usize] != Elem::MAX {
            continue;
        }
        let c = reps.len() as Elem;
        reps.push(x);
        for &m in sub.members() {
            class_of[g.mul(x, m) as usize] = c;
        }
    }
    let mut gens: Vec<Elem> = g.generators().iter().map(|&x| class_of[x as usize]).collect();
    gens.retain(|&c| c != 0);
    gens.dedup();
    let name = format!("{} / {}", g.name(), sub.order());
    let class_of: Arc<[Elem]> = class_of.into();
    let q = Quotient { parent: g.clone(), reps, class_of: class_of.to_vec(), gens };
    Ok((Group::from_repr(Arc::new(q), name), class_of))
}

/// A wreath-type product `B^n ⋊ P` with `P` permuting coordinates.
#[derive(Clone)]
pub struct Wreath {
    pub group: Group,
    pub base: PowerGroup,
    pub top: PermGroup,
}

impl Wreath {
    /// Splits an element into base coordinates and the permutation.
    pub fn split(&self, w: Elem) -> (Vec<Elem>, &Permutation) {
        let nh = self.top.order() as Elem;
        (self.base.coords(w / nh), self.top.element(w % nh))
    }

    pub fn join(&self, coords: &[Elem], perm: Elem) -> Elem {
        self.base.encode(coords) * self.top.order() as Elem + perm
    }
}

pub fn wreath(base: &Group, top: &PermGroup, budget: usize) -> Result<Wreath> {
    let degree = top.element(0).degree();
    let power = direct_power(base, degree, budget)?;
    let action = super::permuting_action(top, &power)?;
    let group = semidirect_product(&action, budget)?
        .with_name(format!("{} wr {}", base.name(), top.group().name()));
    Ok(Wreath { group, base: power, top: top.clone() })
}

/// The elements of a wreath-type product satisfying `keep`. Fails unless
/// the selection is a subgroup (checked over all pairs).
pub fn constrained_subgroup(
    w: &Wreath,
    keep: impl Fn(&[Elem], &Permutation) -> bool,
    budget: usize,
) -> Result<Subgroup> {
    let g = &w.group;
    let selected: Vec<Elem> = g
        .elements()
        .filter(|&x| {
            let (coords, perm) = w.split(x);
            keep(&coords, perm)
        })
        .collect();
    if selected.first() != Some(&0) {
        return Err(Error::NotClosed("the identity is not selected".into()));
    }
    let mut mark = vec![false; g.order()];
    for &x in &selected {
        mark[x as usize] = true;
    }
    for &a in &selected {
        for &b in &selected {
            if !mark[g.mul(a, b) as usize] {
                return Err(Error::NotClosed(format!("product of {a} and {b} leaves the subset")));
            }
        }
    }
    let mut set = MemberSet::new(g);
    let mut gens = Vec::new();
    for &x in &selected {
        if !set.contains(x) {
            gens.push(x);
            set.extend(&gens, budget)?;
        }
    }
    Ok(set.into_subgroup(&gens))
}

#[cfg(test)]
mod tests {
    use super::super::{fingerprint, symmetric, sylow_of_symmetric};
    use super::*;
    use alloc::collections::BTreeMap;

    const BUDGET: usize = 1 << 20;

    fn histogram(g: &Group) -> BTreeMap<u64, u64> {
        fingerprint(g, BUDGET).unwrap().order_histogram
    }

    #[test]
    fn small_families() {
        assert_eq!(cyclic(1).unwrap().order(), 1);
        assert!(cyclic(0).is_err());
        let q8 = quaternion(8).unwrap();
        assert_eq!(histogram(&q8), BTreeMap::from([(1, 1), (2, 1), (4, 6)]));
        let d8 = dihedral(8).unwrap();
        assert_eq!(histogram(&d8), BTreeMap::from([(1, 1), (2, 5), (4, 2)]));
        assert!(dihedral(2).is_err());
        assert!(quaternion(4).is_err());
        for g in [q8, d8, quaternion(24).unwrap(), dihedral(10).unwrap()] {
            g.check_axioms(1 << 16).unwrap();
        }
    }

    #[test]
    fn quaternion_has_unique_involution() {
        for four_n in (8..=64).step_by(4) {
            let q = quaternion(four_n).unwrap();
            let n = (four_n / 4) as u64;
            let involutions: Vec<Elem> =
                q.elements().filter(|&x| x != 0 && q.mul(x, x) == 0).collect();
            let w_n = q.pow(1, n);
            let v = (2 * n) as Elem;
            assert_eq!(involutions, [w_n]);
            assert_eq!(q.mul(v, v), w_n);
        }
    }

    #[test]
    fn direct_products() {
        let c2 = cyclic(2).unwrap();
        let v4 = direct_product(&c2, &c2, BUDGET).unwrap();
        assert_eq!(fingerprint(&v4, BUDGET).unwrap().exponent, 2);
        let c6 = direct_product(&c2, &cyclic(3).unwrap(), BUDGET).unwrap();
        assert_eq!(histogram(&c6), histogram(&cyclic(6).unwrap()));
        let g = direct_product(&dihedral(8).unwrap(), &c2, BUDGET).unwrap();
        assert_eq!(g.order(), 16);
        assert_eq!(histogram(&g), BTreeMap::from([(1, 1), (2, 11), (4, 4)]));
        assert!(matches!(direct_product(&g, &g, 100), Err(Error::Budget { .. })));
    }

    #[test]
    fn semidirect_products() {
        let c3 = cyclic(3).unwrap();
        let c2 = cyclic(2).unwrap();
        let invert = Action::from_fn(&c2, &c3, |h, x| Some(if h == 0 { x } else { c3.inv(x) }))
            .unwrap();
        let s3 = semidirect_product(&invert, BUDGET).unwrap();
        assert_eq!(fingerprint(&s3, BUDGET).unwrap(), fingerprint(&symmetric(3).unwrap().group(), BUDGET).unwrap());

        let v4 = direct_product(&c2, &c2, BUDGET).unwrap();
        let one = trivial();
        let g = semidirect_product(&Action::trivial(&one, &v4), BUDGET).unwrap();
        assert_eq!(fingerprint(&g, BUDGET).unwrap(), fingerprint(&v4, BUDGET).unwrap());

        // doubling on C3 is an automorphism but C3 cannot act through it
        assert!(Action::from_fn(&c3, &c3, |h, x| Some(c3.pow(x, 1 << h))).is_err());
        // squaring on C4 is not injective
        let c4 = cyclic(4).unwrap();
        assert!(Action::from_fn(&c2, &c4, |h, x| Some(if h == 0 { x } else { c4.mul(x, x) })).is_err());
    }

    #[test]
    fn central_quotients() {
        let q8 = quaternion(8).unwrap();
        let w2 = q8.pow(1, 2);
        let v4 = central_quotient(&q8, &[w2], BUDGET).unwrap();
        assert_eq!(v4.order(), 4);
        assert_eq!(histogram(&v4), BTreeMap::from([(1, 1), (2, 3)]));
        v4.check_axioms(1 << 12).unwrap();

        let same = central_quotient(&q8, &[], BUDGET).unwrap();
        assert_eq!(same.order(), 8);

        let c4 = cyclic(4).unwrap();
        let p = direct_power(&c4, 2, BUDGET).unwrap();
        let diag = p.diagonal(2);
        let q = central_quotient(p.group(), &[diag], BUDGET).unwrap();
        assert_eq!(q.order(), 8);

        let d8 = dihedral(8).unwrap();
        assert_eq!(central_quotient(&d8, &[1], BUDGET).unwrap_err(), Error::NotCentral);
        assert_eq!(central_quotient(&d8, &[100], BUDGET).unwrap_err(), Error::NotSubset);
    }

    #[test]
    fn wreath_products() {
        let c3 = cyclic(3).unwrap();
        let s2 = symmetric(2).unwrap();
        let w = wreath(&c3, &s2, BUDGET).unwrap();
        assert_eq!(w.group.order(), 18);
        w.group.check_axioms(1 << 16).unwrap();

        let c2 = cyclic(2).unwrap();
        let p = sylow_of_symmetric(2, 4, BUDGET).unwrap();
        let w = wreath(&c2, &p, BUDGET).unwrap();
        assert_eq!(w.group.order(), 128);
    }

    #[test]
    fn constrained_subgroups() {
        // sum of coordinates zero in C3^2 ⋊ S2
        let c3 = cyclic(3).unwrap();
        let s2 = symmetric(2).unwrap();
        let w = wreath(&c3, &s2, BUDGET).unwrap();
        let sub = constrained_subgroup(&w, |b, _| (b[0] + b[1]) % 3 == 0, BUDGET).unwrap();
        assert_eq!(sub.order(), 6);
        // a non-closed selection is rejected
        let err = constrained_subgroup(&w, |b, _| b[0] != 1, BUDGET).unwrap_err();
        assert!(matches!(err, Error::NotClosed(_)));
    }
}
