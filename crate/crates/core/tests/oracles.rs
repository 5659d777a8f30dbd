//! Invariants checked against methods that share no code with the
//! implementation: closed forms for two-bridge knots, the naive Kauffman
//! state sum, and tabulated values.

use num_bigint::BigInt;
use proptest::prelude::*;
use symunion::diagram::{parse_pd, PlanarDiagram};
use symunion::group::wirtinger;
use symunion::invariant::{alexander_fox, alexander_region, jones, jones_state_sum, InvariantError};
use symunion::poly::{normalize_alexander, LaurentPoly};
use symunion::tangle::{rational_slope, Tangle};

const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
const FIGURE_EIGHT: &str = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";
const FIVE_TWO: &str = "X[1,5,2,4] X[3,9,4,8] X[5,1,6,10] X[7,3,8,2] X[9,7,10,6]";

fn lp(s: &str) -> LaurentPoly {
    s.parse().unwrap()
}

/// Alexander polynomial of the two-bridge knot `b(p, q)` from the sign
/// sequence `(-1)^floor(iq/p)` (needs `p` and `q` odd, `0 < q < p`).
fn two_bridge_alexander(p: i64, q: i64) -> LaurentPoly {
    let mut q = q.rem_euclid(p);
    if q % 2 == 0 {
        q = p - q;
    }
    let mut out = LaurentPoly::zero();
    let mut e = 0;
    for k in 0..p {
        if k > 0 {
            e += if (k * q / p) % 2 == 0 { 1 } else { -1 };
        }
        out.add_term(e, BigInt::from(if k % 2 == 0 { 1 } else { -1 }));
    }
    normalize_alexander(&out).unwrap()
}

fn at_minus_one(p: &LaurentPoly) -> BigInt {
    p.terms()
        .map(|(e, c)| if e.rem_euclid(2) == 0 { c.clone() } else { -c.clone() })
        .sum()
}

#[test]
fn two_bridge_closed_form_samples() {
    assert_eq!(two_bridge_alexander(3, 1), lp("1 - t + t^2"));
    assert_eq!(two_bridge_alexander(5, 2), lp("1 - 3*t + t^2"));
    assert_eq!(two_bridge_alexander(7, 2), lp("2 - 3*t + 2*t^2"));
}

#[test]
fn tabulated_alexander() {
    for (pd, delta) in [
        (TREFOIL, "1 - t + t^2"),
        (FIGURE_EIGHT, "1 - 3*t + t^2"),
        (FIVE_TWO, "2 - 3*t + 2*t^2"),
    ] {
        let d = parse_pd(pd).unwrap();
        assert_eq!(alexander_region(&d).unwrap(), lp(delta));
        assert_eq!(alexander_fox(&wirtinger(&d).unwrap()).unwrap(), lp(delta));
    }
}

fn either_chirality(v: &LaurentPoly, expected: &str) -> bool {
    let e = lp(expected);
    *v == e || *v == e.invert_variable()
}

#[test]
fn tabulated_jones() {
    let t = jones(&parse_pd(TREFOIL).unwrap()).unwrap();
    assert_eq!(t, lp("-t^-4 + t^-3 + t^-1"));
    let f = jones(&parse_pd(FIGURE_EIGHT).unwrap()).unwrap();
    assert_eq!(f, lp("t^-2 - t^-1 + 1 - t + t^2"));
    let v = jones(&parse_pd(FIVE_TWO).unwrap()).unwrap();
    assert!(either_chirality(&v, "-t^-6 + t^-5 - t^-4 + 2*t^-3 - t^-2 + t^-1"), "{v}");
    assert_eq!(jones(&PlanarDiagram::unknot()).unwrap(), LaurentPoly::one());
}

#[test]
fn even_links_have_fractional_jones() {
    let hopf = parse_pd("X[4,1,3,2] X[2,3,1,4]").unwrap();
    assert_eq!(hopf.component_count(), 2);
    // V(t) of a two-component link lives in t^(1/2) Z[t, 1/t]
    assert_eq!(jones(&hopf), Err(InvariantError::FractionalExponent));
    assert_eq!(jones_state_sum(&hopf), Err(InvariantError::FractionalExponent));
}

fn terms() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(prop_oneof![-3i64..=-1, 1i64..=3], 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_knots_match_closed_form(ts in terms()) {
        let (p, q) = rational_slope(&ts);
        prop_assume!(p.rem_euclid(2) == 1 && p.abs() > 1);
        let d = Tangle::rational(&ts).numerator();
        prop_assume!(d.is_knot());
        let delta = alexander_region(&d).unwrap();
        prop_assert_eq!(&delta, &two_bridge_alexander(p.abs(), q * p.signum()));
        prop_assert_eq!(at_minus_one(&delta).magnitude().clone(), BigInt::from(p.abs()).magnitude().clone());
        prop_assert_eq!(&alexander_fox(&wirtinger(&d).unwrap()).unwrap(), &delta);
    }

    #[test]
    fn jones_matches_state_sum(a in terms(), b in terms()) {
        let t = Tangle::rational(&a).sum(&Tangle::rational(&b)).unwrap();
        let d = t.numerator();
        prop_assume!(d.crossing_count() > 0 && d.crossing_count() <= 14 && d.free_loop_count() == 0);
        prop_assume!(d.component_count() % 2 == 1);
        let v = jones(&d).unwrap();
        prop_assert_eq!(&v, &jones_state_sum(&d).unwrap());
        if d.is_knot() {
            prop_assert_eq!(v.eval_one(), BigInt::from(1));
        }
        prop_assert_eq!(jones(&d.mirror()).unwrap(), v.invert_variable());
    }

    #[test]
    fn jones_is_multiplicative(a in terms(), b in terms()) {
        let k1 = Tangle::rational(&a).numerator();
        let k2 = Tangle::rational(&b).numerator();
        prop_assume!(k1.is_knot() && k2.is_knot() && k1.crossing_count() > 0 && k2.crossing_count() > 0);
        let sum = k1.connected_sum(1, &k2, 1).unwrap();
        prop_assert_eq!(jones(&sum).unwrap(), &jones(&k1).unwrap() * &jones(&k2).unwrap());
        let d = alexander_region(&sum).unwrap();
        prop_assert_eq!(d, normalize_alexander(&(&alexander_region(&k1).unwrap() * &alexander_region(&k2).unwrap())).unwrap());
    }
}
