use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{Elem, Group, MemberSet, Subgroup};
use crate::field::prime_factors;
use crate::Result;

/// Order of `x`, using that it divides `|G|`.
pub fn element_order(g: &Group, x: Elem) -> u64 {
    let mut ord = g.order() as u64;
    for p in prime_factors(ord as u128) {
        while ord.is_multiple_of(p) && g.pow(x, ord / p) == 0 {
            ord /= p;
        }
    }
    ord
}

pub fn element_orders(g: &Group) -> Vec<u64> {
    g.elements().map(|x| element_order(g, x)).collect()
}

pub fn is_abelian(g: &Group) -> bool {
    let gens = g.generators();
    gens.iter().enumerate().all(|(i, &a)| gens[i + 1..].iter().all(|&b| g.commutes(a, b)))
}

/// Elements commuting with every generator.
pub fn center(g: &Group, budget: usize) -> Result<Subgroup> {
    let members: Vec<Elem> = g
        .elements()
        .filter(|&x| g.generators().iter().all(|&h| g.commutes(x, h)))
        .collect();
    super::subgroup_of_members(g, &members, budget)
}

/// Normal closure of the commutators of generator pairs.
pub fn derived_subgroup(g: &Group, budget: usize) -> Result<Subgroup> {
    let gens = g.generators();
    let mut set = MemberSet::new(g);
    let mut sub_gens = Vec::new();
    let add = |set: &mut MemberSet, sub_gens: &mut Vec<Elem>, c: Elem| -> Result<bool> {
        if set.contains(c) {
            return Ok(false);
        }
        sub_gens.push(c);
        set.extend(sub_gens, budget)?;
        Ok(true)
    };
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            add(&mut set, &mut sub_gens, g.commutator(a, b))?;
        }
    }
    loop {
        let mut grew = false;
        let current = sub_gens.clone();
        for &c in &current {
            for &x in gens {
                grew |= add(&mut set, &mut sub_gens, g.conjugate(c, x))?;
            }
        }
        if !grew {
            break;
        }
    }
    Ok(set.into_subgroup(&sub_gens))
}

pub fn exponent(g: &Group) -> u64 {
    element_orders(g).into_iter().fold(1, |acc, o| acc / crate::field::gcd(acc, o) * o)
}

/// Elementary divisors of `G / G'`, ascending. Counts `x` with
/// `x^(p^k) ∈ G'` to get the size of each `p^k`-torsion layer.
fn abelianization(g: &Group, derived: &Subgroup) -> Vec<u64> {
    let quotient = (g.order() / derived.order()) as u64;
    let mut divisors = Vec::new();
    for p in prime_factors(quotient as u128) {
        // ranks[k-1] = number of cyclic factors of order >= p^k
        let mut ranks = Vec::new();
        let mut prev = 1u64;
        let mut pk = 1u64;
        loop {
            pk *= p;
            let torsion = g.elements().filter(|&x| derived.contains(g.pow(x, pk))).count() as u64
                / derived.order() as u64;
            if torsion == prev {
                break;
            }
            let mut r = 0;
            let mut t = torsion / prev;
            while t > 1 {
                t /= p;
                r += 1;
            }
            ranks.push(r);
            prev = torsion;
        }
        for k in 0..ranks.len() {
            let next = ranks.get(k + 1).copied().unwrap_or(0);
            for _ in 0..ranks[k] - next {
                divisors.push(p.pow(k as u32 + 1));
            }
        }
    }
    divisors.sort_unstable();
    divisors
}

/// Cheap isomorphism invariants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub order: u64,
    /// element order -> number of elements of that order
    pub order_histogram: BTreeMap<u64, u64>,
    pub center: u64,
    pub derived: u64,
    pub abelianization: Vec<u64>,
    pub exponent: u64,
}

pub fn fingerprint(g: &Group, budget: usize) -> Result<Fingerprint> {
    let orders = element_orders(g);
    let mut order_histogram = BTreeMap::new();
    for &o in &orders {
        *order_histogram.entry(o).or_insert(0) += 1;
    }
    let exponent = orders.iter().fold(1, |acc, &o| acc / crate::field::gcd(acc, o) * o);
    let derived = derived_subgroup(g, budget)?;
    Ok(Fingerprint {
        order: g.order() as u64,
        order_histogram,
        center: center(g, budget)?.order() as u64,
        derived: derived.order() as u64,
        abelianization: abelianization(g, &derived),
        exponent,
    })
}

/// A generating set built by repeatedly taking the element of largest
/// order outside the span so far (smallest index on ties).
pub fn greedy_generators(g: &Group, orders: &[u64], budget: usize) -> Result<Vec<Elem>> {
    let mut by_order: Vec<Elem> = g.elements().collect();
    by_order.sort_by_key(|&x| (core::cmp::Reverse(orders[x as usize]), x));
    let mut set = MemberSet::new(g);
    let mut gens = Vec::new();
    for x in by_order {
        if set.members.len() == g.order() {
            break;
        }
        if !set.contains(x) {
            gens.push(x);
            set.extend(&gens, budget)?;
        }
    }
    Ok(gens)
}

#[cfg(test)]
mod tests {
    use super::super::{cyclic, dihedral, direct_product, quaternion, symmetric};
    use super::*;

    const B: usize = 1 << 20;

    #[test]
    fn fingerprints_of_small_groups() {
        let s4 = symmetric(4).unwrap().group();
        let f = fingerprint(&s4, B).unwrap();
        assert_eq!(f.center, 1);
        assert_eq!(f.derived, 12);
        assert_eq!(f.abelianization, [2]);
        assert_eq!(f.exponent, 12);
        assert_eq!(f.order_histogram, BTreeMap::from([(1, 1), (2, 9), (3, 8), (4, 6)]));

        let q8 = fingerprint(&quaternion(8).unwrap(), B).unwrap();
        let d8 = fingerprint(&dihedral(8).unwrap(), B).unwrap();
        assert_eq!((q8.center, q8.derived, &q8.abelianization), (2, 2, &alloc::vec![2, 2]));
        assert_eq!((d8.center, d8.derived, &d8.abelianization), (2, 2, &alloc::vec![2, 2]));
        assert_ne!(q8, d8);
    }

    #[test]
    fn abelian_invariants() {
        let c4 = cyclic(4).unwrap();
        let c6 = cyclic(6).unwrap();
        let g = direct_product(&c4, &c6, B).unwrap();
        let f = fingerprint(&g, B).unwrap();
        assert_eq!(f.abelianization, [2, 3, 4]);
        assert_eq!(f.derived, 1);
        assert_eq!(f.center, 24);
        assert!(is_abelian(&g));
        assert_eq!(exponent(&g), 12);
    }

    #[test]
    fn greedy_generators_span() {
        let s4 = symmetric(4).unwrap().group();
        let orders = element_orders(&s4);
        let gens = greedy_generators(&s4, &orders, B).unwrap();
        assert_eq!(orders[gens[0] as usize], 4);
        assert_eq!(Subgroup::generated(&s4, &gens, B).unwrap().order(), 24);
        assert!(gens.len() <= 3);
    }
}
