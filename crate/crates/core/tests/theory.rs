mod common;

use nalgebra::DMatrix;
use proptest::prelude::*;
use sparse_array::array_model::AngleGrid;
use sparse_array::synthesis::{build_dictionary, PositionGrid};
use sparse_array::theory::{
    mutual_coherence, restricted_isometry_constant, restricted_isometry_constant_with_budget,
    sparsity_bound_holds,
};
use sparse_array::Error;

/// Frozen from the double-loop oracle on the 401 x 100 dictionary.
const EXAMPLE1_COHERENCE: f64 = 0.977_967_258_188_810;

#[test]
fn example1_dictionary_coherence() {
    let d = build_dictionary(
        &PositionGrid::new(10.0, 0.1).unwrap(),
        &AngleGrid::half_space(401).unwrap(),
    )
    .unwrap();
    let mu = mutual_coherence(d.matrix()).unwrap();
    assert!((mu - common::coherence_double_loop(d.matrix())).abs() < 1e-12);
    assert!((mu - EXAMPLE1_COHERENCE).abs() < 1e-12, "{mu}");
}

#[test]
fn delta2_equals_coherence_for_unit_columns() {
    for seed in 0..10 {
        let mut rng = common::rng(seed);
        let a = common::unit_columns(common::gaussian_matrix(&mut rng, 5, 9));
        let d2 = restricted_isometry_constant(&a, 2).unwrap();
        let mu = mutual_coherence(&a).unwrap();
        assert!((d2.delta_k - mu).abs() < 1e-12);
        assert_eq!(d2.witness_subset.len(), 2);
        assert!(restricted_isometry_constant(&a, 1).unwrap().delta_k < 1e-15);
    }
}

#[test]
fn general_columns_delta1() {
    let mut rng = common::rng(99);
    let a = common::gaussian_matrix(&mut rng, 6, 8);
    let expected = a
        .column_iter()
        .map(|c| (c.norm_squared() - 1.0).abs())
        .fold(0.0, f64::max);
    let r = restricted_isometry_constant(&a, 1).unwrap();
    assert!((r.delta_k - expected).abs() < 1e-14);
}

#[test]
fn scaled_matrix_recomputed_directly() {
    let mut rng = common::rng(3);
    let a = common::unit_columns(common::gaussian_matrix(&mut rng, 6, 7));
    let two_a = &a * 2.0;
    let r = restricted_isometry_constant(&two_a, 2).unwrap();
    // direct recomputation on the witness of the unscaled matrix family
    let mut expected = 0.0_f64;
    for i in 0..7 {
        for j in i + 1..7 {
            let sub = a.select_columns(&[i, j]);
            let eig = (sub.transpose() * sub).symmetric_eigenvalues();
            expected = expected.max((4.0 * eig.max() - 1.0).max(1.0 - 4.0 * eig.min()));
        }
    }
    assert!((r.delta_k - expected).abs() < 1e-12);
}

#[test]
fn witness_attains_delta() {
    let mut rng = common::rng(11);
    let a = common::unit_columns(common::gaussian_matrix(&mut rng, 6, 10));
    let r = restricted_isometry_constant(&a, 3).unwrap();
    let sub = a.select_columns(&r.witness_subset);
    let eig = (sub.transpose() * sub).symmetric_eigenvalues();
    let delta = (eig.max() - 1.0).max(1.0 - eig.min());
    assert!((delta - r.delta_k).abs() < 1e-12);
}

#[test]
fn budget_is_enforced() {
    let d = build_dictionary(
        &PositionGrid::new(10.0, 0.1).unwrap(),
        &AngleGrid::half_space(41).unwrap(),
    )
    .unwrap();
    let err = restricted_isometry_constant(d.matrix(), 5).unwrap_err();
    assert!(matches!(err, Error::InstanceTooLarge { .. }));
    assert!(err.to_string().contains("instance too large for exact RIP"));
    assert!(restricted_isometry_constant_with_budget(d.matrix(), 2, 4950).is_ok());
    assert!(restricted_isometry_constant_with_budget(d.matrix(), 2, 4949).is_err());
}

#[test]
fn rank_deficient_pair() {
    let a = DMatrix::from_row_slice(3, 3, &[1.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
    let r = restricted_isometry_constant(&a, 2).unwrap();
    assert!((r.delta_k - 1.0).abs() < 1e-15);
    assert_eq!(r.witness_subset, vec![0, 1]);
}

proptest! {
    #[test]
    fn bound_grows_with_m(n in 3usize..400) {
        let mut last = 0.0;
        for m in 1..n {
            let b = sparsity_bound_holds(1, m, n, 1.0).unwrap().bound;
            prop_assert!(b > last);
            last = b;
        }
    }

    #[test]
    fn delta_monotone_in_k(seed in 0u64..1000) {
        let mut rng = common::rng(seed);
        let a = common::gaussian_matrix(&mut rng, 4, 7);
        let ds: Vec<f64> = (1..=4).map(|k| restricted_isometry_constant(&a, k).unwrap().delta_k).collect();
        for w in ds.windows(2) {
            prop_assert!(w[0] <= w[1] + 1e-12);
        }
    }
}
