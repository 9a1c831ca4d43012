//! A uniform finite-group abstraction.
//!
//! Every group is fully enumerated and its elements are the indices
//! `0..order`, with `0` always the identity. A [`GroupRepr`] supplies the
//! multiplication and inversion on those indices; the concrete
//! representations (typed closures, subgroups, products, quotients, ..) live
//! in the submodules and all hand out a cheap, clonable [`Group`] handle.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::hash::Hash;

use hashbrown::HashMap;

use crate::{Error, Result};

mod construct;
mod invariants;
mod perm;

pub use construct::{
    central_quotient, central_quotient_map, constrained_subgroup, cyclic, dihedral, direct_power, direct_product,
    quaternion, semidirect_product, trivial, wreath, Action, PowerGroup, Wreath,
};
pub use invariants::{
    center, derived_subgroup, element_order, element_orders, exponent, fingerprint,
    greedy_generators, is_abelian, Fingerprint,
};
pub use perm::{
    permuting_action, sign, sylow_of_symmetric, symmetric, PermGroup, Permutation,
};

/// Element of a group: an index into its enumeration.
pub type Elem = u32;

/// Multiplication rule of an enumerated group.
pub trait GroupRepr: Send + Sync {
    fn order(&self) -> usize;
    fn mul(&self, a: Elem, b: Elem) -> Elem;
    fn inv(&self, a: Elem) -> Elem;
    /// A generating set (possibly empty for the trivial group).
    fn generators(&self) -> &[Elem];
    fn label(&self, a: Elem) -> String {
        format!("#{a}")
    }
}

#[derive(Clone)]
pub struct Group {
    repr: Arc<dyn GroupRepr>,
    name: Arc<str>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.order())
    }
}

impl Group {
    pub const IDENTITY: Elem = 0;

    pub fn from_repr(repr: Arc<dyn GroupRepr>, name: impl Into<Arc<str>>) -> Group {
        Group { repr, name: name.into() }
    }

    pub fn with_name(mut self, name: impl Into<Arc<str>>) -> Group {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.repr.order()
    }

    #[inline]
    pub fn identity(&self) -> Elem {
        Self::IDENTITY
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.repr.mul(a, b)
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.repr.inv(a)
    }

    pub fn generators(&self) -> &[Elem] {
        self.repr.generators()
    }

    pub fn label(&self, a: Elem) -> String {
        self.repr.label(a)
    }

    pub fn elements(&self) -> core::ops::Range<Elem> {
        0..self.order() as Elem
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Self::IDENTITY;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn commutes(&self, a: Elem, b: Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// `a^-1 b^-1 a b`
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    /// `x^-1 a x`
    pub fn conjugate(&self, a: Elem, x: Elem) -> Elem {
        self.mul(self.mul(self.inv(x), a), x)
    }

    /// Checks identity and inverse laws on every element and associativity
    /// on up to `max_triples` triples: all triples when `|G|^3` fits,
    /// otherwise evenly spaced pairs against the generators.
    pub fn check_axioms(&self, max_triples: u64) -> Result<()> {
        let n = self.order() as u64;
        for a in self.elements() {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(Error::Relation(format!("{}: identity law fails at {a}", self.name)));
            }
            if self.mul(a, self.inv(a)) != 0 {
                return Err(Error::Relation(format!("{}: inverse law fails at {a}", self.name)));
            }
        }
        let third: Vec<Elem> = if n.saturating_pow(3) <= max_triples {
            self.elements().collect()
        } else {
            self.generators().to_vec()
        };
        let per_first = (n * third.len().max(1) as u64).max(1);
        let stride = (n * per_first).div_ceil(max_triples.max(1)).max(1);
        for a in (0..n).step_by(stride as usize).map(|a| a as Elem) {
            for b in self.elements() {
                let ab = self.mul(a, b);
                for &c in &third {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::Relation(format!(
                            "{}: associativity fails at ({a},{b},{c})",
                            self.name
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

struct EnumInner<T> {
    elems: Vec<T>,
    index: HashMap<T, Elem>,
    gens: Vec<Elem>,
    op: Box<dyn Fn(&T, &T) -> T + Send + Sync>,
    inverse: Box<dyn Fn(&T) -> T + Send + Sync>,
    show: Option<fn(&T) -> String>,
}

impl<T: Clone + Eq + Hash + Send + Sync> GroupRepr for EnumInner<T> {
    fn order(&self) -> usize {
        self.elems.len()
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let c = (self.op)(&self.elems[a as usize], &self.elems[b as usize]);
        self.index[&c]
    }

    fn inv(&self, a: Elem) -> Elem {
        self.index[&(self.inverse)(&self.elems[a as usize])]
    }

    fn generators(&self) -> &[Elem] {
        &self.gens
    }

    fn label(&self, a: Elem) -> String {
        match self.show {
            Some(show) => show(&self.elems[a as usize]),
            None => format!("#{a}"),
        }
    }
}

/// A group of concrete values closed under a binary operation, enumerated
/// in breadth-first order from the identity.
pub struct Enumerated<T> {
    inner: Arc<EnumInner<T>>,
}

impl<T> Clone for Enumerated<T> {
    fn clone(&self) -> Self {
        Enumerated { inner: self.inner.clone() }
    }
}

impl<T> fmt::Debug for Enumerated<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Enumerated(order {})", self.inner.elems.len())
    }
}

impl<T: Clone + Eq + Hash + Send + Sync + 'static> Enumerated<T> {
    pub fn order(&self) -> usize {
        self.inner.elems.len()
    }

    pub fn elements(&self) -> &[T] {
        &self.inner.elems
    }

    pub fn element(&self, i: Elem) -> &T {
        &self.inner.elems[i as usize]
    }

    pub fn index_of(&self, x: &T) -> Option<Elem> {
        self.inner.index.get(x).copied()
    }

    pub fn generator_values(&self) -> Vec<T> {
        self.inner.gens.iter().map(|&g| self.inner.elems[g as usize].clone()).collect()
    }

    /// Applies the group operation to concrete values.
    pub fn op(&self, a: &T, b: &T) -> T {
        (self.inner.op)(a, b)
    }

    pub fn group(&self) -> Group {
        self.group_named("enumerated")
    }

    pub fn group_named(&self, name: &str) -> Group {
        Group::from_repr(self.inner.clone(), name)
    }

    fn with_show(self, show: fn(&T) -> String) -> Self {
        let mut inner = Arc::try_unwrap(self.inner).unwrap_or_else(|_| unreachable!());
        inner.show = Some(show);
        Enumerated { inner: Arc::new(inner) }
    }
}

/// Enumerates `<gens>` under `op`.
///
/// Generators already in the group generated so far are skipped, so the
/// candidate list may be long and redundant. Fails with [`Error::Budget`]
/// once more than `budget` elements are found.
pub fn closure<T, F, I>(gens: &[T], identity: T, op: F, inverse: I, budget: usize) -> Result<Enumerated<T>>
where
    T: Clone + Eq + Hash + Send + Sync + 'static,
    F: Fn(&T, &T) -> T + Send + Sync + 'static,
    I: Fn(&T) -> T + Send + Sync + 'static,
{
    let mut elems = vec![identity.clone()];
    let mut index = HashMap::new();
    index.insert(identity, 0 as Elem);
    let mut gen_values: Vec<T> = Vec::new();
    let mut gen_index = Vec::new();
    for g in gens {
        if index.contains_key(g) {
            continue;
        }
        gen_values.push(g.clone());
        let old_len = elems.len();
        let mut i = 0;
        while i < elems.len() {
            let from = if i < old_len { gen_values.len() - 1 } else { 0 };
            for k in from..gen_values.len() {
                let y = op(&elems[i], &gen_values[k]);
                if !index.contains_key(&y) {
                    if elems.len() >= budget {
                        return Err(Error::Budget { limit: budget, reached: elems.len() + 1 });
                    }
                    index.insert(y.clone(), elems.len() as Elem);
                    elems.push(y);
                }
            }
            i += 1;
        }
        gen_index.push(index[g]);
    }
    Ok(Enumerated {
        inner: Arc::new(EnumInner {
            elems,
            index,
            gens: gen_index,
            op: Box::new(op),
            inverse: Box::new(inverse),
            show: None,
        }),
    })
}

/// Like [`closure`] but with a formatter for element labels.
pub fn closure_labeled<T, F, I>(
    gens: &[T],
    identity: T,
    op: F,
    inverse: I,
    budget: usize,
    show: fn(&T) -> String,
) -> Result<Enumerated<T>>
where
    T: Clone + Eq + Hash + Send + Sync + 'static,
    F: Fn(&T, &T) -> T + Send + Sync + 'static,
    I: Fn(&T) -> T + Send + Sync + 'static,
{
    Ok(closure(gens, identity, op, inverse, budget)?.with_show(show))
}

struct SubgroupInner {
    parent: Group,
    members: Vec<Elem>,
    lookup: HashMap<Elem, Elem>,
    gens: Vec<Elem>,
}

impl GroupRepr for SubgroupInner {
    fn order(&self) -> usize {
        self.members.len()
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let c = self.parent.mul(self.members[a as usize], self.members[b as usize]);
        self.lookup[&c]
    }

    fn inv(&self, a: Elem) -> Elem {
        self.lookup[&self.parent.inv(self.members[a as usize])]
    }

    fn generators(&self) -> &[Elem] {
        &self.gens
    }

    fn label(&self, a: Elem) -> String {
        self.parent.label(self.members[a as usize])
    }
}

/// A subgroup of an enumerated group. Its elements are enumerated in the
/// parent's order.
#[derive(Clone)]
pub struct Subgroup {
    inner: Arc<SubgroupInner>,
    name: Arc<str>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {} in {:?})", self.order(), self.inner.parent)
    }
}

impl Subgroup {
    /// `<gens>` inside `parent`.
    pub fn generated(parent: &Group, gens: &[Elem], budget: usize) -> Result<Subgroup> {
        if gens.iter().any(|&g| g as usize >= parent.order()) {
            return Err(Error::NotSubset);
        }
        let mut set = MemberSet::new(parent);
        let mut kept = Vec::new();
        for &g in gens {
            if set.contains(g) {
                continue;
            }
            kept.push(g);
            set.extend(&kept, budget)?;
        }
        Ok(Subgroup::from_parts(parent, set.members, &kept))
    }

    fn from_parts(parent: &Group, mut members: Vec<Elem>, parent_gens: &[Elem]) -> Subgroup {
        members.sort_unstable();
        let lookup: HashMap<Elem, Elem> =
            members.iter().enumerate().map(|(i, &m)| (m, i as Elem)).collect();
        let gens = parent_gens.iter().map(|g| lookup[g]).collect();
        Subgroup {
            inner: Arc::new(SubgroupInner { parent: parent.clone(), members, lookup, gens }),
            name: Arc::from(format!("subgroup of {}", parent.name())),
        }
    }

    pub fn with_name(mut self, name: impl Into<Arc<str>>) -> Subgroup {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.inner.members.len()
    }

    pub fn parent(&self) -> &Group {
        &self.inner.parent
    }

    /// Parent indices of the members, ascending.
    pub fn members(&self) -> &[Elem] {
        &self.inner.members
    }

    pub fn contains(&self, parent_elem: Elem) -> bool {
        self.inner.lookup.contains_key(&parent_elem)
    }

    /// Subgroup index of a parent element.
    pub fn position(&self, parent_elem: Elem) -> Option<Elem> {
        self.inner.lookup.get(&parent_elem).copied()
    }

    /// Generators as parent elements.
    pub fn parent_generators(&self) -> Vec<Elem> {
        self.inner.gens.iter().map(|&g| self.inner.members[g as usize]).collect()
    }

    pub fn group(&self) -> Group {
        Group::from_repr(self.inner.clone(), self.name.clone())
    }
}

/// Incrementally grown subgroup of an enumerated group, tracked as a bitmap
/// over the parent.
pub(crate) struct MemberSet<'a> {
    parent: &'a Group,
    mark: Vec<bool>,
    pub(crate) members: Vec<Elem>,
}

impl<'a> MemberSet<'a> {
    pub(crate) fn new(parent: &'a Group) -> Self {
        let mut mark = vec![false; parent.order()];
        mark[0] = true;
        MemberSet { parent, mark, members: vec![0] }
    }

    pub(crate) fn contains(&self, x: Elem) -> bool {
        self.mark[x as usize]
    }

    /// Closes the set under right multiplication by `gens`; the set must
    /// already be closed under all but the last generator.
    pub(crate) fn extend(&mut self, gens: &[Elem], budget: usize) -> Result<()> {
        let old_len = self.members.len();
        let mut i = 0;
        while i < self.members.len() {
            let from = if i < old_len { gens.len() - 1 } else { 0 };
            for &g in &gens[from..] {
                let y = self.parent.mul(self.members[i], g);
                if !self.mark[y as usize] {
                    if self.members.len() >= budget {
                        return Err(Error::Budget { limit: budget, reached: self.members.len() + 1 });
                    }
                    self.mark[y as usize] = true;
                    self.members.push(y);
                }
            }
            i += 1;
        }
        Ok(())
    }

    pub(crate) fn into_subgroup(self, gens: &[Elem]) -> Subgroup {
        Subgroup::from_parts(self.parent, self.members, gens)
    }
}

/// The subgroup formed by `members`, which the caller asserts is closed.
/// Closure is re-derived from a greedy generating set and checked.
pub fn subgroup_of_members(parent: &Group, members: &[Elem], budget: usize) -> Result<Subgroup> {
    let mut set = MemberSet::new(parent);
    let mut gens = Vec::new();
    for &m in members {
        if m as usize >= parent.order() {
            return Err(Error::NotSubset);
        }
        if !set.contains(m) {
            gens.push(m);
            set.extend(&gens, budget)?;
        }
    }
    if set.members.len() != members.len() {
        return Err(Error::NotClosed(format!(
            "{} elements generate a subgroup of order {}",
            members.len(),
            set.members.len()
        )));
    }
    Ok(set.into_subgroup(&gens))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn transposition(n: usize, a: usize, b: usize) -> Vec<u8> {
        let mut p: Vec<u8> = (0..n as u8).collect();
        p.swap(a, b);
        p
    }

    #[allow(clippy::ptr_arg)]
    fn compose(a: &Vec<u8>, b: &Vec<u8>) -> Vec<u8> {
        b.iter().map(|&i| a[i as usize]).collect()
    }

    #[allow(clippy::ptr_arg)]
    fn invert(a: &Vec<u8>) -> Vec<u8> {
        let mut out = vec![0; a.len()];
        for (i, &x) in a.iter().enumerate() {
            out[x as usize] = i as u8;
        }
        out
    }

    #[test]
    fn closure_orders() {
        let id2: Vec<u8> = vec![0, 1];
        let g = closure(&[transposition(2, 0, 1)], id2, compose, invert, 100).unwrap();
        assert_eq!(g.order(), 2);

        let id3: Vec<u8> = vec![0, 1, 2];
        let cycle = vec![1u8, 2, 0];
        let g = closure(&[transposition(3, 0, 1), cycle], id3, compose, invert, 100).unwrap();
        assert_eq!(g.order(), 6);
        g.group().check_axioms(1000).unwrap();
    }

    #[test]
    fn closure_budget_reports_partial_count() {
        let id: Vec<u8> = (0..5).collect();
        let err = closure(
            &[transposition(5, 0, 1), vec![1, 2, 3, 4, 0]],
            id,
            compose,
            invert,
            50,
        )
        .unwrap_err();
        assert_eq!(err, Error::Budget { limit: 50, reached: 51 });
    }

    #[test]
    fn closure_skips_redundant_generators() {
        let id: Vec<u8> = vec![0, 1, 2];
        let c = vec![1u8, 2, 0];
        let c2 = compose(&c, &c);
        let g = closure(&[c.clone(), c2, c], id, compose, invert, 100).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.group().generators().len(), 1);
    }

    #[test]
    fn subgroups_keep_parent_order() {
        let s4 = symmetric(4).unwrap().group();
        let h = Subgroup::generated(&s4, &[5, 9], 1000).unwrap();
        assert!(h.members().windows(2).all(|w| w[0] < w[1]));
        assert_eq!(h.members()[0], 0);
        h.group().check_axioms(1 << 20).unwrap();
        assert!(matches!(Subgroup::generated(&s4, &[99], 10), Err(Error::NotSubset)));
    }
}
