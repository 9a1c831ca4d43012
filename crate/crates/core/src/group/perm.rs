use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{closure_labeled, Action, Elem, Enumerated, PowerGroup};
use crate::{Error, Limits, Result};

/// A permutation of `0..n`, stored as its list of images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u8>);

pub type PermGroup = Enumerated<Permutation>;

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation((0..n as u8).collect())
    }

    pub fn from_images(images: Vec<u8>) -> Result<Permutation> {
        let mut seen = [false; 256];
        for &i in &images {
            if i as usize >= images.len() || seen[i as usize] {
                return Err(Error::InvalidParameter(format!("{images:?} is not a permutation")));
            }
            seen[i as usize] = true;
        }
        Ok(Permutation(images))
    }

    /// The cycle `(points[0] points[1] ..)` on `0..n`.
    pub fn cycle(n: usize, points: &[usize]) -> Permutation {
        let mut p = Permutation::identity(n);
        for (k, &a) in points.iter().enumerate() {
            p.0[a] = points[(k + 1) % points.len()] as u8;
        }
        p
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut out = alloc::vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[x as usize] = i as u8;
        }
        Permutation(out)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", show(self))
    }
}

/// Cycle notation with 1-based points.
fn show(p: &Permutation) -> String {
    let mut seen = alloc::vec![false; p.degree()];
    let mut out = String::new();
    for start in 0..p.degree() {
        if seen[start] || p.image(start) == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        let mut first = true;
        while !seen[i] {
            seen[i] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&format!("{}", i + 1));
            first = false;
            i = p.image(i);
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// `+1` for even permutations and `-1` for odd ones.
pub fn sign(p: &Permutation) -> i8 {
    let mut seen = alloc::vec![false; p.degree()];
    let mut parity = 0;
    for start in 0..p.degree() {
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p.image(i);
            len += 1;
        }
        if len > 0 {
            parity ^= (len - 1) & 1;
        }
    }
    if parity == 0 {
        1
    } else {
        -1
    }
}

fn perm_closure(n: usize, gens: &[Permutation], budget: usize) -> Result<PermGroup> {
    closure_labeled(
        gens,
        Permutation::identity(n),
        |a: &Permutation, b: &Permutation| a.compose(b),
        Permutation::inverse,
        budget,
        show,
    )
}

pub fn symmetric(n: usize) -> Result<PermGroup> {
    if n > 255 {
        return Err(Error::InvalidParameter(format!("degree {n} is too large")));
    }
    let budget = Limits::default().elements;
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Permutation::cycle(n, &[0, 1]));
        gens.push(Permutation::cycle(n, &(0..n).collect::<Vec<_>>()));
    }
    perm_closure(n, &gens, budget)
}

/// The Sylow `l`-subgroup of `S_n` generated by the block cycles: for each
/// `j >= 1` and each full block of size `l^j`, the permutation rotating its
/// `l` sub-blocks of size `l^(j-1)`.
pub fn sylow_of_symmetric(l: usize, n: usize, budget: usize) -> Result<PermGroup> {
    if l < 2 || !crate::field::is_prime(l as u64) {
        return Err(Error::NotPrime(l as u64));
    }
    if n > 255 {
        return Err(Error::InvalidParameter(format!("degree {n} is too large")));
    }
    let mut gens = Vec::new();
    let mut block = l;
    while block <= n {
        let sub = block / l;
        for i in 0..n / block {
            let mut images: Vec<u8> = (0..n as u8).collect();
            for t in 0..l {
                for u in 0..sub {
                    images[i * block + t * sub + u] = (i * block + ((t + 1) % l) * sub + u) as u8;
                }
            }
            gens.push(Permutation(images));
        }
        block *= l;
    }
    perm_closure(n, &gens, budget)
}

/// Action of a permutation group on the direct power `B^n` by moving
/// coordinates: `(τ·x)_{τ(i)} = x_i`.
pub fn permuting_action(top: &PermGroup, power: &PowerGroup) -> Result<Action> {
    let degree = top.element(0).degree();
    if degree != power.arity() {
        return Err(Error::ArityMismatch { expected: power.arity(), found: degree });
    }
    let top_group = top.group();
    Action::from_fn(&top_group, power.group(), |h, x| {
        let tau = top.element(h);
        let coords = power.coords(x);
        let mut moved = alloc::vec![0 as Elem; degree];
        for (i, &c) in coords.iter().enumerate() {
            moved[tau.image(i)] = c;
        }
        Some(power.encode(&moved))
    })
}
