use sylow_core::classical::{build, order_formula, ClassicalSpec, Family, Sign};
use sylow_core::Limits;

fn built_order(family: Family, dim: usize, q: u64, sign: Option<Sign>) -> usize {
    let spec = ClassicalSpec::new(family, dim, q, sign).unwrap();
    let g = build(&spec, &Limits::default()).unwrap();
    assert_eq!(Some(g.group.order() as u128), order_formula(&spec), "{spec}");
    g.group.order()
}

#[test]
fn desk_scale_orders() {
    use Family::*;
    let (p, m) = (Some(Sign::Plus), Some(Sign::Minus));
    let cases: &[(Family, usize, u64, Option<Sign>, usize)] = &[
        (PSL, 3, 3, None, 5616),
        (SL, 3, 4, None, 60480),
        (PSL, 3, 4, None, 20160),
        (SL, 2, 16, None, 4080),
        (GL, 4, 2, None, 20160),
        (GL, 3, 2, None, 168),
        (Sp, 4, 3, None, 51840),
        (PSp, 4, 3, None, 25920),
        (PSp, 2, 5, None, 60),
        (O, 5, 3, None, 103680),
        (Omega, 5, 3, None, 25920),
        (O, 3, 5, None, 240),
        (O, 4, 4, p, 7200),
        (Omega, 4, 4, p, 3600),
        (O, 4, 5, p, 28800),
        (POmega, 4, 5, p, 3600),
        (O, 4, 3, m, 1440),
        (U, 4, 4, None, 77760),
        (PSU, 4, 4, None, 25920),
        (PSU, 2, 4, None, 6),
        (SU, 2, 9, None, 24),
    ];
    for &(family, dim, q, sign, expect) in cases {
        assert_eq!(built_order(family, dim, q, sign), expect, "{family} {dim} {q} {sign:?}");
    }
}

#[test]
fn odd_orthogonal_in_characteristic_two_matches_symplectic() {
    for (m, q) in [(1, 2), (1, 4), (2, 2)] {
        let o = built_order(Family::O, 2 * m + 1, q, None);
        let sp = built_order(Family::Sp, 2 * m, q, None);
        assert_eq!(o, sp);
    }
}
