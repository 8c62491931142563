use std::collections::BTreeMap;
use std::sync::Arc;

use drinfeld::associator::{c_extract, check_associator, phi0, Associator};
use drinfeld::coeff::{int, rat};
use drinfeld::grt::{
    act_grt, act_gt, check_gt_duality, check_gt_hexagon, check_gt_pentagon, degree3_parameter, grt_exp, grt_mul, gt_mul,
    iota, psi1, psi2, psi_ab, twisted_inverse,
};
use drinfeld::holonomy::HoloAlgebra;
use drinfeld::lie::is_grouplike;
use drinfeld::text::{parse_series_tagged, render_series_tagged};
use drinfeld::{NCSeries, Rational, SymCoef};
use proptest::prelude::*;

fn small() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn grt_elt(a: &Rational, b: &Rational) -> NCSeries<Rational> {
    grt_exp(&psi_ab(a, b, 5)).unwrap()
}

fn phi() -> NCSeries<Rational> {
    phi0::<Rational>(5).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn grt_law_is_associative_with_inverses(a1 in small(), b1 in small(), a2 in small(), b2 in small(), a3 in small()) {
        let (f1, f2, f3) = (grt_elt(&a1, &b1), grt_elt(&a2, &b2), grt_elt(&a3, &int(0)));
        let l = grt_mul(&grt_mul(&f1, &f2).unwrap(), &f3).unwrap();
        let r = grt_mul(&f1, &grt_mul(&f2, &f3).unwrap()).unwrap();
        prop_assert_eq!(l, r);
        prop_assert!(grt_mul(&f1, &twisted_inverse(&f1).unwrap()).unwrap().is_one());
    }

    #[test]
    fn grt_acts_on_the_right(a1 in small(), b1 in small(), a2 in small(), b2 in small()) {
        let (f1, f2) = (grt_elt(&a1, &b1), grt_elt(&a2, &b2));
        let step = act_grt(&act_grt(&phi(), &f1).unwrap(), &f2).unwrap();
        let once = act_grt(&phi(), &grt_mul(&f1, &f2).unwrap()).unwrap();
        prop_assert_eq!(step, once);
    }

    #[test]
    fn gt_acts_on_the_left(a1 in small(), b1 in small(), a2 in small(), b2 in small()) {
        let g1 = iota(&phi(), &grt_elt(&a1, &b1)).unwrap();
        let g2 = iota(&phi(), &grt_elt(&a2, &b2)).unwrap();
        let step = act_gt(&g1, &act_gt(&g2, &phi()).unwrap()).unwrap();
        let once = act_gt(&gt_mul(&g1, &g2).unwrap(), &phi()).unwrap();
        prop_assert_eq!(step, once);
    }

    #[test]
    fn degree_three_parameter_adds_under_the_action(a in small(), b in small()) {
        // c(Φ.f) = c(Φ) + z(f) with f ≡ 1 + z(w4 − w5).
        let f = grt_elt(&a, &b);
        let moved = act_grt(&phi(), &f).unwrap();
        prop_assert_eq!(c_extract(&moved).unwrap(), c_extract(&phi()).unwrap() + degree3_parameter(&f).unwrap());
        prop_assert_eq!(degree3_parameter(&f).unwrap(), -a);
    }

    #[test]
    fn iota_lands_in_gt(a in small(), b in small()) {
        let g = iota(&phi(), &grt_elt(&a, &b)).unwrap();
        prop_assert!(is_grouplike(&g));
        prop_assert!(check_gt_duality(&g).passed);
        prop_assert!(check_gt_hexagon(&g).unwrap().passed);
    }
}

#[test]
fn grt_elements_are_associators_with_lambda_zero() {
    let alg = Arc::new(HoloAlgebra::build(4, 5).unwrap());
    let f = grt_exp(&psi1::<Rational>(5).add(&psi2::<Rational>(5).scale_rat(&int(-2)))).unwrap();
    for c in check_associator(&Associator::new(f, int(0)), &alg).unwrap() {
        assert!(c.passed, "{c}");
    }
}

#[test]
fn symbolic_gt_element_passes_the_pentagon() {
    let alg = Arc::new(HoloAlgebra::build(4, 5).unwrap());
    let (a, b) = (SymCoef::var("a"), SymCoef::var("b"));
    let phi = phi0::<SymCoef>(5).unwrap();
    let g = iota(&phi, &grt_exp(&psi_ab(&a, &b, 5)).unwrap()).unwrap();
    assert!(check_gt_pentagon(&g, &phi, &alg).unwrap().passed);
    // w13 alone is not in grt_1.
    let w = drinfeld::lie::WBasis::<SymCoef>::new(5);
    let bad = g.add(w.get(13));
    let outcomes = [check_gt_duality(&bad), check_gt_hexagon(&bad).unwrap(), check_gt_pentagon(&bad, &phi, &alg).unwrap()];
    assert!(outcomes.iter().any(|c| !c.passed));
}

#[test]
fn kind_tag_round_trips() {
    let g = iota(&phi(), &grt_elt(&int(1), &rat(1, 2))).unwrap();
    let tags = BTreeMap::from([("kind".to_string(), "gt".to_string())]);
    let text = render_series_tagged(&g, &tags);
    let (back, t) = parse_series_tagged::<Rational>(&text).unwrap();
    assert_eq!((back, t), (g, tags));
}
