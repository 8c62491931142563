use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use drinfeld::associator::{
    bar, c_extract, check_associator, extend_associator, is_even, phi0, phi4, swap, Associator,
};
use drinfeld::coeff::{int, rat, CoeffText};
use drinfeld::grt::{act_grt, expected_action_correction, grt_exp, psi1, psi2, psi_ab};
use drinfeld::holonomy::HoloAlgebra;
use drinfeld::kz::phi_kz_truncation;
use drinfeld::lie::WBasis;
use drinfeld::text::{parse_series_tagged, render_series_tagged};
use drinfeld::{Coeff, NCSeries, Rational, SymCoef};

fn alg() -> Arc<HoloAlgebra> {
    static ALG: OnceLock<Arc<HoloAlgebra>> = OnceLock::new();
    ALG.get_or_init(|| Arc::new(HoloAlgebra::build(4, 5).unwrap())).clone()
}

#[test]
fn reference_associator_passes_every_equation() {
    let phi = phi0::<Rational>(5).unwrap();
    for c in check_associator(&Associator::new(phi.clone(), int(1)), &alg()).unwrap() {
        assert!(c.passed, "{c}");
    }
    assert!(is_even(&phi));
    assert!(c_extract(&phi).unwrap().is_zero());
    assert!(phi0::<Rational>(6).is_err());
}

#[test]
fn duality_is_visible_on_swap() {
    let phi = phi0::<Rational>(5).unwrap();
    assert!(swap(&phi).mul(&phi).is_one());
    assert_eq!(bar(&phi), phi);
}

#[test]
fn wrong_lambda_and_odd_perturbation_fail() {
    let phi = phi0::<Rational>(5).unwrap();
    let outcomes = check_associator(&Associator::new(phi.clone(), int(2)), &alg()).unwrap();
    assert!(outcomes.iter().any(|c| c.id.contains("hexagon") && !c.passed));
    let w = WBasis::<Rational>::new(5);
    let bent = phi.add(w.get(6));
    let outcomes = check_associator(&Associator::new(bent, int(1)), &alg()).unwrap();
    assert!(outcomes.iter().any(|c| !c.passed));
}

#[test]
fn lambda_tag_round_trips() {
    let phi = phi0::<Rational>(5).unwrap();
    let tags = BTreeMap::from([("lambda".to_string(), "1".to_string())]);
    let text = render_series_tagged(&phi, &tags);
    let (back, t) = parse_series_tagged::<Rational>(&text).unwrap();
    assert_eq!(back, phi);
    assert_eq!(t, tags);
    assert_eq!(render_series_tagged(&back, &t), text);
}

#[test]
fn even_extension_to_degree_five_reproduces_the_reference() {
    let phi4_only = phi0::<Rational>(5).unwrap().truncate(4);
    let e = extend_associator(&phi4_only, &int(1), &alg(), true).unwrap();
    assert!(e.correction.is_zero());
    assert_eq!(e.series, phi0::<Rational>(5).unwrap());
}

#[test]
fn degree_five_freedom_is_the_psi2_line() {
    let phi4_only = phi0::<Rational>(5).unwrap().truncate(4);
    let e = extend_associator(&phi4_only, &int(1), &alg(), false).unwrap();
    assert_eq!(e.freedom.len(), 1);
    let f = &e.freedom[0];
    let p = psi2::<Rational>(5);
    let (w, c) = f.terms().next().unwrap();
    let k = c.clone() / p.coeff(*w);
    assert!(f.sub(&p.scale_rat(&k)).is_zero());
}

#[test]
fn psi1_bracket_identity() {
    let w = WBasis::<Rational>::new(5);
    let p = psi1::<Rational>(5);
    let x = NCSeries::var(p.alphabet(), 5, "x");
    let y = NCSeries::var(p.alphabet(), 5, "y");
    assert_eq!(p.bracket(&x).bracket(&y), w.get(10).add(w.get(11)).neg());
}

#[test]
fn grt_action_on_reference_has_the_expected_correction() {
    let (a, b) = (SymCoef::var("a"), SymCoef::var("b"));
    let phi = phi0::<SymCoef>(5).unwrap();
    let moved = act_grt(&phi, &grt_exp(&psi_ab(&a, &b, 5)).unwrap()).unwrap();
    let rest = moved.sub(&phi).sub(&psi_ab(&a, &b, 5));
    assert_eq!(rest, expected_action_correction(&a, 5));
}

#[test]
fn kz_truncation_is_a_twist_of_the_reference() {
    let kz = phi_kz_truncation(5);
    assert_eq!(c_extract(&kz).unwrap(), SymCoef::parse_text("-zt3").unwrap());
    let (z3, z5) = (SymCoef::var("zt3"), SymCoef::var("zt5"));
    let back = psi_ab(&z3.neg_ref(), &z5.scale(&rat(-1, 2)), 5);
    for c in check_associator(&Associator::new(kz.clone(), int(1)), &alg()).unwrap() {
        assert!(c.passed, "{c}");
    }
    let moved = act_grt(&kz, &grt_exp(&back).unwrap()).unwrap();
    assert_eq!(moved, phi0::<SymCoef>(5).unwrap());
}

#[test]
fn shared_degree_four_part() {
    let w = WBasis::<Rational>::new(4);
    let lie = w.get(7).add(&w.get(6).scale_rat(&int(4))).add(&w.get(8).scale_rat(&int(4))).neg();
    let want = lie.add(&w.get(3).mul(w.get(3)).scale_rat(&int(5))).scale_rat(&rat(1, 5760));
    assert_eq!(phi4::<Rational>(4), want);
}

#[test]
fn sign_of_the_w3_psi1_term_is_forced_by_grouplikeness() {
    let kz = phi_kz_truncation(5);
    let w = WBasis::<SymCoef>::new(5);
    let z3 = SymCoef::var("zt3");
    let flipped = kz.sub(&w.get(3).mul(&psi1::<SymCoef>(5)).scale(&z3.scale(&rat(1, 12))));
    assert!(drinfeld::lie::is_grouplike(&kz));
    assert!(!drinfeld::lie::is_grouplike(&flipped));
}
