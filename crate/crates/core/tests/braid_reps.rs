use drinfeld::associator::phi0;
use drinfeld::braid::{
    b3_example, diagonal_conjugator, gt_act_on_rep, gt_act_on_rep_with, parse_hmatrix, phat, render_hmatrix, BraidWord,
    HMatrix, Mat, TwistOrder,
};
use drinfeld::coeff::{int, rat};
use drinfeld::grt::{act_gt, grt_exp, iota, psi_ab};
use drinfeld::hecke::{hecke_infinitesimal, Partition};
use drinfeld::{Coeff, Rational, SymCoef};
use proptest::prelude::*;

fn g_ab() -> drinfeld::NCSeries<SymCoef> {
    let phi = phi0::<SymCoef>(5).unwrap();
    iota(&phi, &grt_exp(&psi_ab(&SymCoef::var("a"), &SymCoef::var("b"), 5)).unwrap()).unwrap()
}

fn letter() -> impl Strategy<Value = String> {
    prop_oneof![
        (1usize..4, prop_oneof![Just(1i32), Just(-1), Just(2), Just(-3)])
            .prop_map(|(i, e)| if e == 1 { format!("s{i}") } else { format!("s{i}^{e}") }),
        (2usize..5).prop_map(|r| format!("d{r}")),
        (1usize..4).prop_map(|i| format!("x{i}{}", i + 1)),
        (2usize..5).prop_map(|r| format!("g{r}")),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn braid_words_parse_and_invert(tokens in prop::collection::vec(letter(), 0..6)) {
        let w = BraidWord::parse(4, &tokens.join(" ")).unwrap();
        let again = BraidWord::parse(4, &w.to_string()).unwrap();
        prop_assert_eq!(again.letters(), w.letters());
        let ww = w.concat(&w.inverse());
        let rho = hecke_infinitesimal::<Rational>(&Partition::parse("2,1,1").unwrap()).unwrap();
        let r = phat(&rho, &phi0::<Rational>(3).unwrap(), &int(1)).unwrap();
        prop_assert!(r.image(&ww).unwrap().agrees(&HMatrix::identity(r.dim(), r.maxdeg())));
    }

    #[test]
    fn hmatrix_text_round_trip(entries in prop::collection::vec(prop::collection::vec((-9i64..=9, 1i64..=5), 4), 4)) {
        let coeffs: Vec<Mat<Rational>> = (0..4)
            .map(|k| Mat::from_fn(2, |i, j| { let (n, d) = entries[k][2 * i + j]; rat(n, d) }))
            .collect();
        let m = HMatrix::from_coeffs(3, coeffs).unwrap();
        let text = render_hmatrix(&m);
        let back: HMatrix<Rational> = parse_hmatrix(&text).unwrap();
        prop_assert_eq!(render_hmatrix(&back), text);
        prop_assert!(back.agrees(&m));
    }
}

#[test]
fn symbolic_hmatrix_round_trip_keeps_ring_and_known_order() {
    let m = HMatrix::monomial(&Mat::diag(&[SymCoef::var("a"), SymCoef::one()]), 2, 4).truncate(3);
    let text = render_hmatrix(&m);
    assert!(text.starts_with("dim=2 maxdeg=4 known=3 ring=Q[a]"), "{text}");
    let back: HMatrix<SymCoef> = parse_hmatrix(&text).unwrap();
    assert_eq!(render_hmatrix(&back), text);
}

#[test]
fn b3_example_is_an_infinitesimal_representation() {
    for v in [int(5), int(7), rat(1, 2), rat(-3, 5)] {
        let rho = b3_example(&v).unwrap();
        for c in rho.validate() {
            assert!(c.passed, "v = {v}: {c}");
        }
        let y2 = rho.t(1, 3).add(rho.t(2, 3));
        assert_eq!(y2, Mat::diag(&[(int(3) - &v) / int(2), (int(3) + &v) / int(2), int(3)]));
    }
}

#[test]
fn only_delta_first_twist_is_compatible_with_the_gt_action() {
    let g = g_ab();
    let phi = phi0::<SymCoef>(5).unwrap();
    let rho = b3_example(&SymCoef::from_int(5)).unwrap();
    let r = phat(&rho, &phi, &int(1)).unwrap();
    let moved = phat(&rho, &act_gt(&g, &phi).unwrap(), &int(1)).unwrap();
    assert!(gt_act_on_rep(&r, &g).unwrap().agrees(&moved).is_none());
    let wrong = gt_act_on_rep_with(&r, &g, TwistOrder::SigmaSquaredFirst).unwrap();
    let diff = wrong.agrees(&moved).expect("swapped order differs");
    assert!(diff.contains("h^3"), "{diff}");
}

#[test]
fn third_character_of_the_b3_example_through_h5() {
    // Q_{R,3} = 1 + (1/16)(v+9)(v²−9) a h³ + (9/128)(v+5)(v²−9)(v²−4v+27) b h⁵.
    let g = g_ab();
    let phi = phi0::<SymCoef>(5).unwrap();
    for v in [int(5), int(7), rat(1, 2), rat(3, 2)] {
        let rho = b3_example(&SymCoef::from_rational(&v)).unwrap();
        let r = phat(&rho, &phi, &int(1)).unwrap();
        let d = diagonal_conjugator(&r, &gt_act_on_rep(&r, &g).unwrap(), None).unwrap();
        let q3 = d[2].div(&d[1]).unwrap();
        let v2m9 = &v * &v - int(9);
        let h3 = SymCoef::var("a").scale(&(rat(1, 16) * (&v + int(9)) * &v2m9));
        let h5 = SymCoef::var("b").scale(&(rat(9, 128) * (&v + int(5)) * &v2m9 * (&v * &v - int(4) * &v + int(27))));
        assert_eq!(q3.coeff(3), h3, "v = {v}");
        assert_eq!(q3.coeff(5), h5, "v = {v}");
        assert!(q3.coeff(1).is_zero() && q3.coeff(2).is_zero() && q3.coeff(4).is_zero());
    }
    // frozen values
    let at = |v: i64| rat(9, 128) * int(v + 5) * int(v * v - 9) * int(v * v - 4 * v + 27);
    assert_eq!((at(5), at(7)), (int(360), int(1620)));
}

#[test]
fn pure_braids_are_close_to_one() {
    let phi = phi0::<Rational>(5).unwrap();
    for shape in ["2,1", "2,1,1", "3,1"] {
        let rho = hecke_infinitesimal::<Rational>(&Partition::parse(shape).unwrap()).unwrap();
        let r = phat(&rho, &phi, &int(1)).unwrap();
        assert!(r.braid_relation_check().passed);
        let c = r.pure_braid_depth_check().unwrap();
        assert!(c.passed, "{shape}: {c}");
    }
}
