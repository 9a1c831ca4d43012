//! Finite fields `F_{p^r}` with table-driven arithmetic, plus the small
//! number-theoretic quantities (valuations, multiplicative orders) that
//! parameterize the Sylow models.
//!
//! Elements are stored as a single byte: the coefficient vector
//! `(c_0, .., c_{r-1})` of the polynomial representative, read as the base-p
//! integer `c_0 + c_1 p + ..`. So `0` and `1` are the field's zero and one,
//! and the integers `0..p` are the prime subfield.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::group::{closure, Enumerated};
use crate::{Error, Limits, Result};

/// Largest field order with byte-sized element codes.
pub const MAX_FIELD_ORDER: u64 = 256;

/// A field element, encoded as described in the module docs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fe(pub u8);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `n` as `p^r` with `p` prime, if possible.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut r = 0;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
        r += 1;
    }
    (m == 1).then_some((p, r))
}

/// The exponent of the largest power of `l` dividing `n`.
pub fn v_l(l: u64, n: u128) -> Result<u32> {
    if !is_prime(l) {
        return Err(Error::NotPrime(l));
    }
    if n == 0 {
        return Err(Error::ZeroValuation);
    }
    let l = l as u128;
    let mut n = n;
    let mut i = 0;
    while n.is_multiple_of(l) {
        n /= l;
        i += 1;
    }
    Ok(i)
}

/// Prime factors of `n` in increasing order, without multiplicity.
pub fn prime_factors(mut n: u128) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d as u64);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n as u64);
    }
    out
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `(d, s, n0)` for a prime `l` coprime to `q`: `d` is the multiplicative
/// order of `q` mod `l`, `s = v_l(q^d - 1)`, `n0 = floor(n / d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArithParams {
    pub l: u64,
    pub q: u64,
    pub d: u32,
    pub s: u32,
    pub n0: u64,
}

pub fn arith_params(l: u64, q: u64, n: u64) -> Result<ArithParams> {
    if !is_prime(l) {
        return Err(Error::NotPrime(l));
    }
    if q < 2 {
        return Err(Error::InvalidParameter(format!("q = {q} must be at least 2")));
    }
    if q.is_multiple_of(l) {
        return Err(Error::NoMultiplicativeOrder { l, q });
    }
    // Fermat bounds d by l - 1.
    let mut power = 1u64;
    let mut d = None;
    for k in 1..=l {
        power = power * (q % l) % l;
        if power == 1 {
            d = Some(k as u32);
            break;
        }
    }
    let d = d.ok_or(Error::NoMultiplicativeOrder { l, q })?;
    let qd = (q as u128)
        .checked_pow(d)
        .ok_or_else(|| Error::InvalidParameter(format!("{q}^{d} overflows")))?;
    let s = v_l(l, qd - 1)?;
    Ok(ArithParams {
        l,
        q,
        d,
        s,
        n0: n / d as u64,
    })
}

/// The field `F_{p^r}`.
///
/// The modulus is the smallest monic irreducible polynomial of degree `r`
/// when the non-leading coefficients are read as a base-p number, so a
/// given `(p, r)` always produces the same field tables.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    r: u32,
    order: usize,
    modulus: Vec<u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    primitive: Fe,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.order)
    }
}

impl FiniteField {
    pub fn new(p: u64, r: u32) -> Result<Arc<FiniteField>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if r == 0 {
            return Err(Error::InvalidParameter("extension degree must be positive".into()));
        }
        let order = (p as u128).checked_pow(r).unwrap_or(u128::MAX);
        if order > MAX_FIELD_ORDER as u128 {
            return Err(Error::FieldTooLarge(order));
        }
        let order = order as usize;
        let modulus = smallest_irreducible(p as u32, r);
        let to_poly = |e: usize| -> Vec<u32> {
            let mut c = vec![0u32; r as usize];
            let mut e = e;
            for slot in c.iter_mut() {
                *slot = (e % p as usize) as u32;
                e /= p as usize;
            }
            c
        };
        let from_poly = |c: &[u32]| -> u8 {
            c.iter().rev().fold(0usize, |acc, &d| acc * p as usize + d as usize) as u8
        };

        let mut add = vec![0u8; order * order];
        let mut mul = vec![0u8; order * order];
        let mut neg = vec![0u8; order];
        for a in 0..order {
            let pa = to_poly(a);
            let na: Vec<u32> = pa.iter().map(|&c| (p as u32 - c) % p as u32).collect();
            neg[a] = from_poly(&na);
            for b in 0..order {
                let pb = to_poly(b);
                let sum: Vec<u32> = pa.iter().zip(&pb).map(|(x, y)| (x + y) % p as u32).collect();
                add[a * order + b] = from_poly(&sum);
                mul[a * order + b] = from_poly(&poly_mulmod(&pa, &pb, &modulus, p as u32));
            }
        }
        let mut inv = vec![0u8; order];
        for a in 1..order {
            inv[a] = (1..order)
                .find(|&b| mul[a * order + b] == 1)
                .expect("nonzero element without inverse: modulus is reducible") as u8;
        }
        let mut field = FiniteField {
            p,
            r,
            order,
            modulus: modulus.iter().map(|&c| c as u8).collect(),
            add,
            mul,
            neg,
            inv,
            primitive: Fe::ONE,
        };
        field.primitive = (1..order)
            .map(|e| Fe(e as u8))
            .find(|&e| field.mult_order(e) == (order - 1) as u64)
            .expect("multiplicative group of a finite field is cyclic");
        Ok(Arc::new(field))
    }

    /// The field with `q` elements.
    pub fn with_order(q: u64) -> Result<Arc<FiniteField>> {
        let (p, r) = prime_power(q)
            .ok_or_else(|| Error::InvalidParameter(format!("{q} is not a prime power")))?;
        FiniteField::new(p, r)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.r
    }

    pub fn order(&self) -> u64 {
        self.order as u64
    }

    /// Coefficients `c_0..c_{r-1}` of the monic modulus (leading 1 omitted).
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.order).map(|e| Fe(e as u8))
    }

    pub fn coeffs(&self, x: Fe) -> Vec<u64> {
        let mut e = x.0 as u64;
        (0..self.r)
            .map(|_| {
                let c = e % self.p;
                e /= self.p;
                c
            })
            .collect()
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.p as i64) as u8)
    }

    /// A generator of the multiplicative group.
    pub fn primitive(&self) -> Fe {
        self.primitive
    }

    /// An `F_p`-basis of the field: the powers `1, x, .., x^{r-1}`.
    pub fn prime_basis(&self) -> Vec<Fe> {
        (0..self.r).map(|k| Fe(self.p.pow(k) as u8)).collect()
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.add[a.0 as usize * self.order + b.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.mul[a.0 as usize * self.order + b.0 as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        (a != Fe::ZERO).then(|| Fe(self.inv[a.0 as usize]))
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element (0 for zero).
    pub fn mult_order(&self, a: Fe) -> u64 {
        if a == Fe::ZERO {
            return 0;
        }
        let mut x = a;
        let mut k = 1;
        while x != Fe::ONE {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn has_conjugation(&self) -> bool {
        self.r.is_multiple_of(2)
    }

    /// The involutory automorphism `x -> x^{p^{r/2}}` of a field of even degree.
    pub fn conj(&self, x: Fe) -> Result<Fe> {
        if !self.has_conjugation() {
            return Err(Error::OddDegree(self.r));
        }
        Ok(self.pow(x, self.p.pow(self.r / 2)))
    }

    /// Order of the fixed field of [`FiniteField::conj`], i.e. `q` when this
    /// field is `F_{q^2}`.
    pub fn fixed_order(&self) -> Result<u64> {
        if !self.has_conjugation() {
            return Err(Error::OddDegree(self.r));
        }
        Ok(self.p.pow(self.r / 2))
    }

    pub fn is_square(&self, a: Fe) -> bool {
        a == Fe::ZERO || self.elements().any(|x| self.mul(x, x) == a)
    }
}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let r = modulus.len();
    let mut prod = vec![0u32; 2 * r];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // x^r = -(c_0 + .. + c_{r-1} x^{r-1})
    for k in (r..2 * r).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for (i, &m) in modulus.iter().enumerate() {
            prod[k - r + i] = (prod[k - r + i] + c * (p - m)) % p;
        }
    }
    prod.truncate(r);
    prod
}

/// Remainder of `a` modulo the monic polynomial `m` (coefficients low first,
/// leading 1 included).
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let dm = m.len() - 1;
    while a.len() > dm {
        let c = *a.last().unwrap();
        let shift = a.len() - 1 - dm;
        for (i, &mi) in m.iter().enumerate() {
            a[shift + i] = (a[shift + i] + p * p - c * mi % p) % p;
        }
        a.pop();
    }
    a
}

fn is_irreducible(coeffs: &[u32], p: u32) -> bool {
    let r = coeffs.len() - 1;
    for deg in 1..=r / 2 {
        let count = (p as usize).pow(deg as u32);
        for code in 0..count {
            let mut divisor = Vec::with_capacity(deg + 1);
            let mut c = code;
            for _ in 0..deg {
                divisor.push((c % p as usize) as u32);
                c /= p as usize;
            }
            divisor.push(1);
            if poly_rem(coeffs, &divisor, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, r: u32) -> Vec<u32> {
    let count = (p as usize).pow(r);
    for code in 0..count {
        let mut coeffs = Vec::with_capacity(r as usize + 1);
        let mut c = code;
        for _ in 0..r {
            coeffs.push((c % p as usize) as u32);
            c /= p as usize;
        }
        coeffs.push(1);
        if is_irreducible(&coeffs, p) {
            coeffs.pop();
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// The cyclic group `mu_{l^s}` of `l^s`-th roots of unity inside `f`.
pub fn mu_group(f: &Arc<FiniteField>, l: u64, s: u32) -> Result<Enumerated<Fe>> {
    if !is_prime(l) {
        return Err(Error::NotPrime(l));
    }
    let size = l.pow(s);
    let units = f.order() - 1;
    if !units.is_multiple_of(size) {
        return Err(Error::NoRootsOfUnity { field: f.order(), order: size });
    }
    let generator = f.pow(f.primitive(), units / size);
    let (fm, fi) = (f.clone(), f.clone());
    closure(
        &[generator],
        Fe::ONE,
        move |a, b| fm.mul(*a, *b),
        move |a| fi.inv(*a).expect("roots of unity are nonzero"),
        Limits::default().elements,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_fields_and_small_extensions() {
        let f2 = FiniteField::new(2, 1).unwrap();
        assert_eq!(f2.order(), 2);
        assert_eq!(f2.add(Fe::ONE, Fe::ONE), Fe::ZERO);

        let f4 = FiniteField::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1]); // x^2 + x + 1
        let w = Fe(2);
        assert_eq!(f4.mul(w, w), f4.add(w, Fe::ONE));

        let f9 = FiniteField::new(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0]); // x^2 + 1
        assert_eq!(f9.mult_order(f9.primitive()), 8);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FiniteField::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(FiniteField::new(2, 0), Err(Error::InvalidParameter(_))));
        assert!(matches!(FiniteField::new(2, 9), Err(Error::FieldTooLarge(512))));
    }

    #[test]
    fn deterministic_modulus() {
        for (p, r) in [(2, 3), (2, 4), (3, 3), (5, 2), (7, 2)] {
            assert_eq!(FiniteField::new(p, r).unwrap(), FiniteField::new(p, r).unwrap());
        }
        assert_eq!(FiniteField::new(2, 4).unwrap().modulus(), &[1, 1, 0, 0]);
    }

    #[test]
    fn conjugation() {
        let f4 = FiniteField::new(2, 2).unwrap();
        let w = Fe(2);
        assert_eq!(f4.conj(w).unwrap(), f4.add(w, Fe::ONE));
        for x in [Fe(0), Fe(1)] {
            assert_eq!(f4.conj(x).unwrap(), x);
        }
        let f9 = FiniteField::new(3, 2).unwrap();
        let g = f9.primitive();
        let x = f9.pow(g, 3);
        assert_eq!(f9.conj(f9.conj(x).unwrap()).unwrap(), x);
        // the prime subfield is fixed
        for k in 0..3 {
            assert_eq!(f9.conj(Fe(k)).unwrap(), Fe(k));
        }
        let f8 = FiniteField::new(2, 3).unwrap();
        assert_eq!(f8.conj(Fe(1)).unwrap_err(), Error::OddDegree(3));
    }

    #[test]
    fn valuations() {
        assert_eq!(v_l(2, 48).unwrap(), 4);
        assert_eq!(v_l(3, 1).unwrap(), 0);
        assert_eq!(v_l(5, 24 * 125).unwrap(), 3);
        assert_eq!(v_l(2, 0).unwrap_err(), Error::ZeroValuation);
        assert_eq!(v_l(6, 12).unwrap_err(), Error::NotPrime(6));
    }

    #[test]
    fn arithmetic_parameters() {
        let a = arith_params(3, 2, 4).unwrap();
        assert_eq!((a.d, a.s, a.n0), (2, 1, 2));
        let a = arith_params(3, 4, 2).unwrap();
        assert_eq!((a.d, a.s, a.n0), (1, 1, 2));
        // oracle: scan d for 5 | 2^d - 1
        let d = (1..=4).find(|d| (2u64.pow(*d) - 1) % 5 == 0).unwrap();
        let a = arith_params(5, 2, 4).unwrap();
        assert_eq!((a.d, a.s, a.n0), (d, 1, 1));
        assert!(matches!(arith_params(3, 9, 2), Err(Error::NoMultiplicativeOrder { .. })));
    }

    #[test]
    fn roots_of_unity() {
        let f5 = FiniteField::new(5, 1).unwrap();
        let mu = mu_group(&f5, 2, 2).unwrap();
        let mut elems: Vec<u8> = mu.elements().iter().map(|x| x.0).collect();
        elems.sort();
        assert_eq!(elems, [1, 2, 3, 4]);

        let f4 = FiniteField::new(2, 2).unwrap();
        assert_eq!(mu_group(&f4, 3, 1).unwrap().order(), 3);

        let f9 = FiniteField::new(3, 2).unwrap();
        let mu = mu_group(&f9, 2, 3).unwrap();
        let brute = f9.elements().filter(|&x| f9.pow(x, 8) == Fe::ONE).count();
        assert_eq!(mu.order(), brute);
        assert!(mu.elements().iter().any(|&x| f9.mult_order(x) == 8));

        assert!(matches!(mu_group(&f9, 5, 1), Err(Error::NoRootsOfUnity { .. })));
    }
}
