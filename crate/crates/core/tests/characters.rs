use drinfeld::associator::phi0;
use drinfeld::braid::{diagonal_conjugator, gt_act_on_rep, phat};
use drinfeld::characters::{
    chi_d, chi_from_burau, chi_tableau, collision, collision_monomial, diagonal_vectors, hook_identity, resonance,
    resonance_line, wedge_exponents, wedge_injective, ExponentVector,
};
use drinfeld::coeff::{int, rat};
use drinfeld::grt::{grt_exp, iota, psi_ab};
use drinfeld::hecke::{hecke_infinitesimal, tableaux, Partition};
use drinfeld::{NCSeries, Rational};
use proptest::prelude::*;

fn g_num(a: &Rational, b: &Rational) -> NCSeries<Rational> {
    let phi = phi0::<Rational>(5).unwrap();
    iota(&phi, &grt_exp(&psi_ab(a, b, 5)).unwrap()).unwrap()
}

#[test]
fn collisions_exist_exactly_for_shapes_containing_three_two() {
    let core = Partition::parse("3,2").unwrap();
    for n in 1..=8 {
        for alpha in Partition::all(n) {
            match collision(&alpha) {
                None => assert!(!alpha.contains(&core), "[{alpha}]"),
                Some((t1, t2)) => {
                    assert_ne!(t1, t2);
                    assert_eq!(chi_tableau(&t1), chi_tableau(&t2), "[{alpha}]");
                    assert!(!resonance(&alpha));
                }
            }
        }
    }
}

#[test]
fn collision_monomial_on_two_row_shapes() {
    for k in 3..=6 {
        let alpha = Partition::new(vec![k, 2]).unwrap();
        let (t, _) = collision(&alpha).unwrap();
        assert_eq!(chi_tableau(&t), collision_monomial(k + 2), "[{alpha}]");
    }
    assert_eq!(collision_monomial(5).to_string(), "chi2*chi3");
    assert_eq!(collision_monomial(7).to_string(), "chi2*chi3^2*chi4^2*chi5");
}

#[test]
fn collision_in_a_larger_shape() {
    let alpha = Partition::parse("4,3,1").unwrap();
    let (t1, t2) = collision(&alpha).unwrap();
    assert_eq!(t1.columns(), vec![vec![1, 2, 5, 6], vec![3, 4, 7], vec![8]]);
    assert_eq!(t2.columns(), vec![vec![1, 3, 4, 6], vec![2, 5, 7], vec![8]]);
    let v = diagonal_vectors(&alpha);
    let pos1 = tableaux(&alpha).iter().position(|t| *t == t1).unwrap();
    let pos2 = tableaux(&alpha).iter().position(|t| *t == t2).unwrap();
    assert_eq!(v[pos1], v[pos2]);
}

#[test]
fn resonance_line_format() {
    assert_eq!(
        resonance_line(&Partition::parse("3,2").unwrap()),
        "3,2 false 1 chi3 chi2*chi3 chi2*chi3 chi2^2*chi3"
    );
    assert_eq!(resonance_line(&Partition::parse("2,2").unwrap()), "2,2 true 1 chi2");
}

#[test]
fn wedge_exponents_of_small_cases() {
    let v: Vec<String> = wedge_exponents(4, 2).unwrap().iter().map(|(_, e)| e.to_string()).collect();
    assert_eq!(v, ["chi2", "chi2*chi3", "chi2^2*chi3"]);
    assert!(wedge_exponents(4, 4).is_err());
    assert!(wedge_injective(6, 3).unwrap());
}

#[test]
fn hook_identity_on_small_shapes() {
    assert_eq!(hook_identity(&Partition::parse("2,1").unwrap()), (ExponentVector::from_pairs(&[(2, 1)]), true));
    let (v, ok) = hook_identity(&Partition::parse("2,2").unwrap());
    assert!(ok);
    assert_eq!(v, ExponentVector::from_pairs(&[(2, 1)]));
}

#[test]
fn exponent_vector_arithmetic() {
    let a = ExponentVector::from_pairs(&[(2, 1), (3, 0)]);
    let b = ExponentVector::from_pairs(&[(2, 2), (5, 1)]);
    assert_eq!(a.mul(&b).to_string(), "chi2^3*chi5");
    assert_eq!(a.exponent(3), 0);
    assert!(ExponentVector::one().is_one());
    assert!(a.evaluate::<Rational>(&Default::default(), 3).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 6, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn two_routes_to_the_characters_agree(a in (-3i64..=3, 1i64..=2), b in (-3i64..=3, 1i64..=2)) {
        let g = g_num(&rat(a.0, a.1), &rat(b.0, b.1));
        let phi = phi0::<Rational>(5).unwrap();
        let burau = chi_from_burau(&g, &phi, 4).unwrap();
        for d in 2..=4usize {
            let direct = chi_d(&g, d as i64, &phi).unwrap();
            prop_assert!(direct.agrees(&burau[&d]), "d = {}", d);
        }
    }

    #[test]
    fn diagonal_conjugator_is_given_by_tableau_monomials(a in (-3i64..=3, 1i64..=2), b in (-3i64..=3, 1i64..=2)) {
        let g = g_num(&rat(a.0, a.1), &rat(b.0, b.1));
        let phi = phi0::<Rational>(5).unwrap();
        let chis = chi_from_burau(&g, &phi, 4).unwrap();
        let alpha = Partition::parse("2,2,1").unwrap();
        let rho = hecke_infinitesimal::<Rational>(&alpha).unwrap();
        let r = phat(&rho, &phi, &int(1)).unwrap();
        let d = diagonal_conjugator(&r, &gt_act_on_rep(&r, &g).unwrap(), None).unwrap();
        for (k, v) in diagonal_vectors(&alpha).iter().enumerate() {
            let want = v.evaluate(&chis, 5).unwrap();
            prop_assert!(d[k].div(&d[0]).unwrap().agrees(&want), "tableau {}", k);
        }
    }
}
