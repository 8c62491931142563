use drinfeld::coeff::{int, rat, CoeffText};
use drinfeld::kz::{h_form_to_hbar, mentions, q_n, specialize_even, zeta, Kz, GAMMA};
use drinfeld::scalar::ScalarSeries;
use drinfeld::{Coeff, Rational, SymCoef};

/// `x/sinh(x)` at `x = c·h/2`, from the sinh series.
fn reflection_oracle(c: i64, order: usize) -> ScalarSeries<Rational> {
    let mut sinh_over_x = vec![int(0); order + 1];
    let mut fact = int(1);
    for k in 0..=order / 2 {
        if k > 0 {
            fact *= int((2 * k) as i64) * int((2 * k + 1) as i64);
        }
        let mut xk = int(1);
        for _ in 0..2 * k {
            xk *= rat(c, 2);
        }
        sinh_over_x[2 * k] = xk / fact.clone();
    }
    ScalarSeries::from_coeffs(order, sinh_over_x).inverse().unwrap()
}

#[test]
fn loggamma_satisfies_the_reflection_formula() {
    let kz = Kz::default();
    for c in [1i64, 2, -3] {
        let z = kz.hbar(c);
        let sum = kz.loggamma(&z).unwrap().add(&kz.loggamma(&z.neg()).unwrap());
        assert!(!mentions(&sum, |n| n == GAMMA));
        let got = specialize_even(&sum.exp().unwrap()).unwrap();
        assert!(got.agrees(&reflection_oracle(c, kz.order)), "c = {c}: {got}");
    }
    assert!(kz.loggamma(&ScalarSeries::one(kz.order)).is_err());
}

#[test]
fn gamma3_is_symmetric_in_the_square_root_branch() {
    let kz = Kz::new(6, 7).unwrap();
    for d in 2..=6i64 {
        for (a, b) in [(d, 2), (d, -2), (-d, 2), (-d, -2), (2, d), (-2, -d)] {
            assert!(kz.gamma3_branch_symmetric(a, b).unwrap(), "({a}, {b})");
        }
    }
    assert!(kz.gamma3_f(1, 1).is_err());
    assert!(kz.gamma3_branch_symmetric(3, 3).is_err());
}

#[test]
fn h_form_conversion_by_hand() {
    // i·ζ(3)/π³·h³ with h = 2iπħ is 8ζ_3ħ³; i·ζ(5)/π⁵·h⁵ is −32ζ_5ħ⁵.
    assert_eq!(h_form_to_hbar(3, &int(1)).unwrap(), zeta(3).scale(&int(8)));
    assert_eq!(h_form_to_hbar(5, &int(1)).unwrap(), zeta(5).scale(&int(-32)));
    assert_eq!(h_form_to_hbar(7, &rat(1, 2)).unwrap(), zeta(7).scale(&int(64)));
    assert!(h_form_to_hbar(4, &int(1)).is_err());
}

#[test]
fn q_polynomials_by_expansion() {
    for d in -3..=6i64 {
        assert_eq!(q_n(1, d), int(6 * d));
        assert_eq!(q_n(2, d), int(20 * d * d * d + 10 * d));
    }
}

#[test]
fn frozen_cubic_coefficients_of_log_h_tilde() {
    let kz = Kz::default();
    for (d, want) in [(2i64, "-32*zeta3"), (3, "-48*zeta3"), (4, "-64*zeta3")] {
        let lh = kz.h_tilde(d).unwrap().log().unwrap();
        assert_eq!(lh.coeff(3), SymCoef::parse_text(want).unwrap(), "d = {d}");
        assert!(lh.coeff(1).is_zero() && lh.coeff(2).is_zero() && lh.coeff(4).is_zero());
    }
}

#[test]
fn kz_ratio_has_odd_zeta_only() {
    let kz = Kz::default();
    for d in 2..=4 {
        let log = kz.ratio_formula(d).unwrap().log().unwrap();
        let odd_only = !mentions(&log, |n| {
            n == GAMMA || n.strip_prefix("zeta").and_then(|k| k.parse::<usize>().ok()).is_some_and(|k| k % 2 == 0)
        });
        assert!(odd_only);
        let direct = kz.b_kz(d, 1).unwrap().div(&kz.b_kz(d, -1).unwrap()).unwrap();
        assert_eq!(direct, kz.ratio_formula(d).unwrap());
    }
    assert!(kz.b_kz(1, 1).is_err());
}

#[test]
fn order_must_not_exceed_the_zeta_bound() {
    assert!(Kz::new(9, 8).is_err());
    assert_eq!(Kz::new(8, 9).unwrap(), Kz::default());
}
