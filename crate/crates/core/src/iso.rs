//! Exact isomorphism testing by backtracking over generator images.
//!
//! A greedy generating set of `G` is mapped one generator at a time; after
//! each choice the partial map is extended over the subgroup generated so
//! far by walking its Cayley graph, and rejected as soon as it is
//! inconsistent or not injective. The first generator's image is only
//! tried up to conjugacy in `H`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::group::{element_orders, fingerprint, greedy_generators, Elem, Fingerprint, Group};
use crate::{Error, Limits, Result};

/// Images of a generating set of `G`; they define the isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub pairs: Vec<(Elem, Elem)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Disproof {
    /// The named invariant differs.
    Invariant { name: &'static str, left: String, right: String },
    /// Every assignment of generator images was refuted.
    Exhausted { nodes: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoOutcome {
    Isomorphic(Witness),
    NotIsomorphic(Disproof),
}

impl IsoOutcome {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoOutcome::Isomorphic(_))
    }
}

/// Names the first invariant on which two fingerprints differ.
pub fn fingerprint_difference(a: &Fingerprint, b: &Fingerprint) -> Option<Disproof> {
    let diff = |name: &'static str, l: String, r: String| {
        (l != r).then_some(Disproof::Invariant { name, left: l, right: r })
    };
    diff("order", format!("{}", a.order), format!("{}", b.order))
        .or_else(|| diff("order histogram", format!("{:?}", a.order_histogram), format!("{:?}", b.order_histogram)))
        .or_else(|| diff("center", format!("{}", a.center), format!("{}", b.center)))
        .or_else(|| diff("derived subgroup", format!("{}", a.derived), format!("{}", b.derived)))
        .or_else(|| diff("abelianization", format!("{:?}", a.abelianization), format!("{:?}", b.abelianization)))
        .or_else(|| diff("exponent", format!("{}", a.exponent), format!("{}", b.exponent)))
}

fn centralizer_sizes(g: &Group) -> Vec<u32> {
    g.elements()
        .map(|x| g.elements().filter(|&y| g.commutes(x, y)).count() as u32)
        .collect()
}

/// Index of the least element of each conjugacy class.
fn class_representatives(h: &Group) -> Vec<bool> {
    let mut seen = vec![false; h.order()];
    let mut rep = vec![false; h.order()];
    for x in h.elements() {
        if seen[x as usize] {
            continue;
        }
        rep[x as usize] = true;
        seen[x as usize] = true;
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            for &k in h.generators() {
                let z = h.conjugate(y, k);
                if !seen[z as usize] {
                    seen[z as usize] = true;
                    stack.push(z);
                }
            }
        }
    }
    rep
}

struct Search<'a> {
    g: &'a Group,
    h: &'a Group,
    gens: Vec<Elem>,
    candidates: Vec<Vec<Elem>>,
    images: Vec<Elem>,
    nodes: u64,
    node_limit: u64,
    // scratch: phi over G and inverse-image marks over H
    phi: Vec<Elem>,
    hit: Vec<bool>,
}

impl Search<'_> {
    /// Extends the map over `<gens[..k]>`; false if inconsistent or not
    /// injective.
    fn consistent(&mut self, k: usize) -> bool {
        const UNSET: Elem = Elem::MAX;
        self.phi.iter_mut().for_each(|x| *x = UNSET);
        self.hit.iter_mut().for_each(|x| *x = false);
        self.phi[0] = 0;
        self.hit[0] = true;
        let mut queue = vec![0 as Elem];
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            let fe = self.phi[e as usize];
            for j in 0..k {
                let next = self.g.mul(e, self.gens[j]);
                let image = self.h.mul(fe, self.images[j]);
                match self.phi[next as usize] {
                    UNSET => {
                        if self.hit[image as usize] {
                            return false;
                        }
                        self.hit[image as usize] = true;
                        self.phi[next as usize] = image;
                        queue.push(next);
                    }
                    existing if existing != image => return false,
                    _ => {}
                }
            }
            i += 1;
        }
        true
    }

    fn descend(&mut self, k: usize) -> Result<bool> {
        if k == self.gens.len() {
            return Ok(true);
        }
        for idx in 0..self.candidates[k].len() {
            self.nodes += 1;
            if self.nodes > self.node_limit {
                return Err(Error::Budget {
                    limit: self.node_limit as usize,
                    reached: self.nodes as usize,
                });
            }
            self.images.push(self.candidates[k][idx]);
            if self.consistent(k + 1) && self.descend(k + 1)? {
                return Ok(true);
            }
            self.images.pop();
        }
        Ok(false)
    }
}

/// Decides whether `g` and `h` are isomorphic. Fails with [`Error::Budget`]
/// when the groups are beyond the configured limits; never guesses.
pub fn is_isomorphic(g: &Group, h: &Group, limits: &Limits) -> Result<IsoOutcome> {
    let budget = limits.elements;
    if g.order() != h.order() {
        return Ok(IsoOutcome::NotIsomorphic(Disproof::Invariant {
            name: "order",
            left: format!("{}", g.order()),
            right: format!("{}", h.order()),
        }));
    }
    if g.order() > limits.iso_order {
        return Err(Error::Budget { limit: limits.iso_order, reached: g.order() });
    }
    let (fg, fh) = (fingerprint(g, budget)?, fingerprint(h, budget)?);
    if let Some(d) = fingerprint_difference(&fg, &fh) {
        return Ok(IsoOutcome::NotIsomorphic(d));
    }
    let orders_g = element_orders(g);
    let orders_h = element_orders(h);
    let gens = greedy_generators(g, &orders_g, budget)?;
    if gens.len() > limits.iso_generators {
        return Err(Error::Budget { limit: limits.iso_generators, reached: gens.len() });
    }
    let use_centralizers = h.order() <= 5000;
    let (cg, ch) = if use_centralizers {
        (centralizer_sizes(g), centralizer_sizes(h))
    } else {
        (Vec::new(), Vec::new())
    };
    let reps = class_representatives(h);
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .enumerate()
        .map(|(k, &x)| {
            h.elements()
                .filter(|&y| orders_h[y as usize] == orders_g[x as usize])
                .filter(|&y| !use_centralizers || ch[y as usize] == cg[x as usize])
                .filter(|&y| k > 0 || reps[y as usize])
                .collect()
        })
        .collect();
    let mut search = Search {
        g,
        h,
        gens: gens.clone(),
        candidates,
        images: Vec::new(),
        nodes: 0,
        node_limit: limits.iso_nodes,
        phi: vec![0; g.order()],
        hit: vec![false; h.order()],
    };
    if search.descend(0)? {
        let pairs = gens.into_iter().zip(search.images).collect();
        Ok(IsoOutcome::Isomorphic(Witness { pairs }))
    } else {
        Ok(IsoOutcome::NotIsomorphic(Disproof::Exhausted { nodes: search.nodes }))
    }
}

/// Extends a witness to the full map `G -> H`, or `None` if the generator
/// images do not define an injective homomorphism on all of `G`.
pub fn extend_witness(g: &Group, h: &Group, w: &Witness) -> Option<Vec<Elem>> {
    if g.order() != h.order() || w.pairs.iter().any(|&(a, b)| a as usize >= g.order() || b as usize >= h.order()) {
        return None;
    }
    let mut search = Search {
        g,
        h,
        gens: w.pairs.iter().map(|p| p.0).collect(),
        candidates: Vec::new(),
        images: w.pairs.iter().map(|p| p.1).collect(),
        nodes: 0,
        node_limit: 0,
        phi: vec![0; g.order()],
        hit: vec![false; h.order()],
    };
    let k = search.gens.len();
    if !search.consistent(k) || search.phi.contains(&Elem::MAX) {
        return None;
    }
    Some(search.phi)
}

/// Independently checks a witness: the extended map must be a bijection
/// with `phi(ab) = phi(a) phi(b)`, on every pair when `|G| <= 10^4` and on
/// `10^6` evenly strided pairs above that.
pub fn replay(g: &Group, h: &Group, w: &Witness) -> bool {
    let Some(phi) = extend_witness(g, h, w) else {
        return false;
    };
    let mut seen = vec![false; h.order()];
    for &y in &phi {
        if core::mem::replace(&mut seen[y as usize], true) {
            return false;
        }
    }
    let n = g.order() as u64;
    let pairs = n * n;
    let samples: u64 = if n <= 10_000 { pairs } else { 1_000_000 };
    let stride = (pairs / samples).max(1);
    let mut k = 0;
    while k < pairs {
        let (a, b) = ((k / n) as Elem, (k % n) as Elem);
        if phi[g.mul(a, b) as usize] != h.mul(phi[a as usize], phi[b as usize]) {
            return false;
        }
        k += stride;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{central_quotient, cyclic, dihedral, direct_product, quaternion, symmetric};

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn quaternion_is_not_dihedral() {
        let out = is_isomorphic(&quaternion(8).unwrap(), &dihedral(8).unwrap(), &limits()).unwrap();
        match out {
            IsoOutcome::NotIsomorphic(Disproof::Invariant { name, .. }) => {
                assert_eq!(name, "order histogram")
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn self_isomorphism_replays() {
        for g in [symmetric(4).unwrap().group(), quaternion(16).unwrap(), dihedral(12).unwrap()] {
            let IsoOutcome::Isomorphic(w) = is_isomorphic(&g, &g, &limits()).unwrap() else {
                panic!("{g:?} not isomorphic to itself");
            };
            assert!(replay(&g, &g, &w));
        }
    }

    #[test]
    fn different_realizations() {
        let c6 = cyclic(6).unwrap();
        let c2c3 = direct_product(&cyclic(2).unwrap(), &cyclic(3).unwrap(), 1 << 20).unwrap();
        let IsoOutcome::Isomorphic(w) = is_isomorphic(&c6, &c2c3, &limits()).unwrap() else {
            panic!()
        };
        assert!(replay(&c6, &c2c3, &w));
        // a broken witness fails replay
        let bad = Witness { pairs: vec![(1, 0)] };
        assert!(!replay(&c6, &c2c3, &bad));

        // S3 vs C6: same order, not isomorphic
        let s3 = symmetric(3).unwrap().group();
        assert!(!is_isomorphic(&s3, &c6, &limits()).unwrap().is_isomorphic());

        // Q8 / Z(Q8) is the Klein four group
        let q8 = quaternion(8).unwrap();
        let v4 = central_quotient(&q8, &[q8.pow(1, 2)], 1 << 20).unwrap();
        let c2 = cyclic(2).unwrap();
        let k4 = direct_product(&c2, &c2, 1 << 20).unwrap();
        assert!(is_isomorphic(&v4, &k4, &limits()).unwrap().is_isomorphic());
    }

    #[test]
    fn budgets_are_reported() {
        let s4 = symmetric(4).unwrap().group();
        let tight = Limits { iso_order: 10, ..limits() };
        assert!(is_isomorphic(&s4, &s4, &tight).unwrap_err().is_budget());
    }
}
