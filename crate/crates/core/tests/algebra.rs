use proptest::prelude::*;

use sylow_core::catalog::{s_constraint, s_group, s_mul, SElement};
use sylow_core::field::{is_prime, prime_power, v_l, Fe, FiniteField};
use sylow_core::group::{cyclic, dihedral, direct_product, quaternion, sylow_of_symmetric, symmetric};
use sylow_core::iso::{is_isomorphic, replay, IsoOutcome};
use sylow_core::matrix::Matrix;
use sylow_core::Limits;

fn field_orders() -> impl Strategy<Value = u64> {
    (2u64..=256).prop_filter("prime power", |&q| prime_power(q).is_some())
}

proptest! {
    #[test]
    fn field_axioms(q in field_orders(), a in 0u8..=255, b in 0u8..=255, c in 0u8..=255) {
        let f = FiniteField::with_order(q).unwrap();
        let elem = |x: u8| Fe((x as u64 % q) as u8);
        let (a, b, c) = (elem(a), elem(b), elem(c));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
        prop_assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
        match f.inv(a) {
            Some(i) => prop_assert_eq!(f.mul(a, i), Fe::ONE),
            None => prop_assert_eq!(a, Fe::ZERO),
        }
        // Frobenius is additive
        let p = f.characteristic();
        prop_assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
    }

    #[test]
    fn conjugation_is_an_involutive_automorphism(k in 0usize..6, a in 0u8..=255, b in 0u8..=255) {
        let q = [4u64, 9, 16, 25, 49, 64][k];
        let f = FiniteField::with_order(q).unwrap();
        let (a, b) = (Fe(a % q as u8), Fe(b % q as u8));
        let bar = |x| f.conj(x).unwrap();
        prop_assert_eq!(bar(f.add(a, b)), f.add(bar(a), bar(b)));
        prop_assert_eq!(bar(f.mul(a, b)), f.mul(bar(a), bar(b)));
        prop_assert_eq!(bar(bar(a)), a);
        let r = f.fixed_order().unwrap();
        prop_assert_eq!(bar(a) == a, f.pow(a, r) == a);
    }

    #[test]
    fn valuation_is_additive(l in (2u64..50).prop_filter("prime", |&l| is_prime(l)), a in 1u128..1_000_000, b in 1u128..1_000_000) {
        prop_assert_eq!(v_l(l, a * b).unwrap(), v_l(l, a).unwrap() + v_l(l, b).unwrap());
    }
}

#[test]
fn primitive_elements_generate() {
    for q in (2..=256).filter(|&q| prime_power(q).is_some()) {
        let f = FiniteField::with_order(q).unwrap();
        assert_eq!(f.mult_order(f.primitive()), q - 1, "q = {q}");
    }
}

#[test]
fn symmetric_sylow_orders_follow_legendre() {
    for l in [2usize, 3, 5, 7] {
        for n in 0..=9 {
            let mut e = 0;
            let mut lj = l;
            while lj <= n {
                e += n / lj;
                lj *= l;
            }
            let p = sylow_of_symmetric(l, n, 1 << 22).unwrap();
            assert_eq!(p.order(), l.pow(e as u32), "P_{l}(S_{n})");
        }
    }
    assert_eq!(symmetric(5).unwrap().order(), 120);
}

fn s_elements(f: &FiniteField) -> Vec<SElement> {
    let one = |x: Fe| Matrix::from_rows(&[&[x]]);
    f.elements()
        .flat_map(|y| f.elements().map(move |b| (y, b)))
        .map(|(y, b)| (one(y), one(b)))
        .filter(|e| s_constraint(f, e))
        .collect()
}

#[test]
fn s_multiplication_is_associative_and_closed() {
    for q2 in [4u64, 9] {
        let f = FiniteField::with_order(q2).unwrap();
        let s = s_elements(&f);
        let q = f.fixed_order().unwrap();
        assert_eq!(s.len() as u64, q.pow(3));
        for a in &s {
            for b in &s {
                let ab = s_mul(&f, a, b);
                assert!(s_constraint(&f, &ab));
                for c in &s {
                    assert_eq!(s_mul(&f, &ab, c), s_mul(&f, a, &s_mul(&f, b, c)));
                }
            }
        }
        assert_eq!(s_group(&f, 1, 1 << 20).unwrap().order(), s.len());
    }
}

#[test]
fn isomorphism_is_an_equivalence_on_samples() {
    let lim = Limits::default();
    let c2 = cyclic(2).unwrap();
    let groups = [
        dihedral(8).unwrap(),
        quaternion(8).unwrap(),
        direct_product(&c2, &cyclic(4).unwrap(), 1 << 20).unwrap(),
        sylow_of_symmetric(2, 4, 1 << 20).unwrap().group(),
        direct_product(&c2, &direct_product(&c2, &c2, 1 << 20).unwrap(), 1 << 20).unwrap(),
    ];
    for g in &groups {
        for h in &groups {
            let gh = is_isomorphic(g, h, &lim).unwrap();
            let hg = is_isomorphic(h, g, &lim).unwrap();
            assert_eq!(gh.is_isomorphic(), hg.is_isomorphic());
            if let IsoOutcome::Isomorphic(w) = gh {
                assert!(replay(g, h, &w));
            }
        }
    }
    // P_2(S_4) is the dihedral group of order 8
    assert!(is_isomorphic(&groups[0], &groups[3], &lim).unwrap().is_isomorphic());
}
