use drinfeld::associator::phi0;
use drinfeld::coeff::Surd;
use drinfeld::hecke::{
    block_identities, rep_build, symmetric_semi_normal, tableaux, unitarity_check, MatrixModel, Partition,
};
use drinfeld::scalar::ScalarSeries;
use drinfeld::Rational;
use proptest::prelude::*;

/// `n! / Π hook(x)` with parts read as column lengths.
fn hook_length_count(alpha: &Partition) -> usize {
    let parts = alpha.parts();
    let mut num: u128 = (1..=alpha.n() as u128).product();
    let mut den: u128 = 1;
    for (c, &len) in parts.iter().enumerate() {
        for l in 1..=len {
            let up = len - l;
            let right = parts[c + 1..].iter().filter(|&&p| p >= l).count();
            den *= (up + right + 1) as u128;
        }
    }
    num /= den;
    num as usize
}

#[test]
fn tableau_counts_follow_the_hook_length_formula() {
    for n in 1..=8 {
        for alpha in Partition::all(n) {
            assert_eq!(tableaux(&alpha).len(), hook_length_count(&alpha), "[{alpha}]");
        }
    }
    assert_eq!(hook_length_count(&Partition::parse("3,2").unwrap()), 5);
}

#[test]
fn tableaux_are_ordered_by_decreasing_content_vector() {
    let cols: Vec<Vec<Vec<usize>>> = tableaux(&Partition::parse("3,2").unwrap()).iter().map(|t| t.columns()).collect();
    let want = vec![
        vec![vec![1, 2, 3], vec![4, 5]],
        vec![vec![1, 2, 4], vec![3, 5]],
        vec![vec![1, 2, 5], vec![3, 4]],
        vec![vec![1, 3, 4], vec![2, 5]],
        vec![vec![1, 3, 5], vec![2, 4]],
    ];
    assert_eq!(cols, want);
    for n in 2..=6 {
        for alpha in Partition::all(n) {
            let v: Vec<Vec<i64>> = tableaux(&alpha).iter().map(|t| t.content_vector()).collect();
            assert!(v.windows(2).all(|w| w[0] > w[1]), "[{alpha}]");
        }
    }
}

#[test]
fn axial_distance_is_the_content_gap() {
    for n in 2..=6 {
        for alpha in Partition::all(n) {
            for t in tableaux(&alpha) {
                for r in 1..n {
                    let same = t.row(r) == t.row(r + 1) || t.col(r) == t.col(r + 1);
                    match t.axial_distance(r) {
                        Err(_) => assert!(same),
                        Ok(d) => {
                            assert_eq!(d, (t.content(r) - t.content(r + 1)).abs());
                            assert!(d >= 2);
                            let s = t.swap(r).expect("swap is standard");
                            assert_eq!(s.axial_distance(r).unwrap(), d);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn transpose_is_an_involution_onto_the_conjugate_shape() {
    for alpha in Partition::all(6) {
        assert_eq!(alpha.conjugate().conjugate(), alpha);
        for t in tableaux(&alpha) {
            assert_eq!(t.transpose().shape(), &alpha.conjugate());
            assert_eq!(t.transpose().transpose(), t);
        }
    }
}

#[test]
fn only_the_unitary_model_is_unitary() {
    let phi = phi0::<Rational>(5).unwrap();
    let alpha = Partition::parse("2,1").unwrap();
    let u = rep_build(&alpha, &MatrixModel::<Surd>::unitary(5)).unwrap();
    assert!(unitarity_check(&u).passed);
    let s = rep_build(&alpha, &MatrixModel::semi_normal(&phi)).unwrap();
    let c = unitarity_check(&s);
    assert!(!c.passed);
    assert!(c.witness.contains("h^0"), "{}", c.witness);
}

#[test]
fn custom_model_with_unit_b_satisfies_the_braid_relations() {
    let b: Vec<ScalarSeries<Rational>> = (2..=6).map(|_| ScalarSeries::one(4)).collect();
    let model = MatrixModel::custom(b).unwrap();
    assert_eq!(model.name(), "custom");
    for d in 2..=6 {
        assert!(block_identities(&model.block(d).unwrap()).passed, "d = {d}");
    }
    for shape in ["2,1", "3,2", "2,2,1", "3,1,1"] {
        let r = rep_build(&Partition::parse(shape).unwrap(), &model).unwrap();
        assert!(r.braid_relation_check().passed, "[{shape}]");
    }
    assert!(model.block(7).is_err());
    assert!(MatrixModel::<Rational>::custom(Vec::new()).is_err());
}

#[test]
fn symmetric_group_images_are_involutions() {
    for alpha in Partition::all(5) {
        for s in symmetric_semi_normal::<Rational>(&alpha).unwrap() {
            assert!(s.mul(&s).is_identity(), "[{alpha}]");
        }
    }
}

#[test]
fn malformed_partitions_are_rejected() {
    for bad in ["", "0", "1,2", "a", "2,,1", "3,-1"] {
        assert!(Partition::parse(bad).is_err(), "`{bad}`");
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn partition_text_round_trip(mut parts in prop::collection::vec(1usize..6, 1..5)) {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let alpha = Partition::new(parts.clone()).unwrap();
        prop_assert_eq!(alpha.parts(), &parts[..]);
        prop_assert_eq!(Partition::parse(&alpha.to_string()).unwrap(), alpha);
    }
}
