//! Brute-force Sylow subgroups: grow a `p`-subgroup inside its own
//! normalizer until it reaches the full `p`-part of the order.

use alloc::vec::Vec;

use crate::field::is_prime;
use crate::group::{Elem, Group, MemberSet, Subgroup};
use crate::{Error, Result};

/// `p^{v_p(order)}`.
pub fn p_part(order: u128, p: u64) -> u128 {
    assert!(order >= 1, "p-part of zero");
    let mut part = 1;
    let mut n = order;
    while n.is_multiple_of(p as u128) {
        n /= p as u128;
        part *= p as u128;
    }
    part
}

#[derive(Debug, Clone)]
pub struct SylowResult {
    pub prime: u64,
    pub subgroup: Subgroup,
    pub p_part: u128,
    /// Orders of the intermediate `p`-subgroups, starting at 1.
    pub chain: Vec<usize>,
}

/// Whether `x` has `p`-power order, given the `p`-part of `|G|`.
fn is_p_element(g: &Group, x: Elem, part: u128) -> bool {
    g.pow(x, part as u64) == 0
}

pub fn sylow(g: &Group, p: u64, budget: usize) -> Result<SylowResult> {
    sylow_seeded(g, p, 0, budget)
}

/// Like [`sylow`], but the candidate scan starts at element `seed mod |G|`
/// and wraps around, which in general yields a different (conjugate)
/// Sylow subgroup.
pub fn sylow_seeded(g: &Group, p: u64, seed: u64, budget: usize) -> Result<SylowResult> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let n = g.order();
    let part = p_part(n as u128, p);
    let p_elements: Vec<bool> = g.elements().map(|x| is_p_element(g, x, part)).collect();
    let start = (seed % n as u64) as usize;
    let mut set = MemberSet::new(g);
    let mut gens: Vec<Elem> = Vec::new();
    let mut chain = alloc::vec![1];
    while (set.members.len() as u128) < part {
        let normalizes = |x: Elem| {
            let xi = g.inv(x);
            gens.iter().all(|&y| set.contains(g.mul(g.mul(xi, y), x)))
        };
        let found = (0..n)
            .map(|k| ((start + k) % n) as Elem)
            .find(|&x| p_elements[x as usize] && !set.contains(x) && normalizes(x));
        let Some(x) = found else {
            panic!("no p-element normalizes a proper p-subgroup: {} is not a group", g.name());
        };
        gens.push(x);
        set.extend(&gens, budget)?;
        chain.push(set.members.len());
    }
    let subgroup = set.into_subgroup(&gens).with_name(alloc::format!("Syl_{p}({})", g.name()));
    Ok(SylowResult { prime: p, subgroup, p_part: part, chain })
}

/// Whether `sub` is a Sylow `p`-subgroup of its parent.
pub fn is_sylow(sub: &Subgroup, p: u64) -> bool {
    let g = sub.parent();
    let part = p_part(g.order() as u128, p);
    sub.order() as u128 == part && sub.members().iter().all(|&x| is_p_element(g, x, part))
}
