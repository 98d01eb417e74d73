mod common;

use nalgebra::DVector;
use rand::Rng;
use sparse_array::synthesis::{solve_l1, solve_l2_baseline, L1Method, SolverConfig};

#[test]
fn l2_baseline_matches_pseudoinverse() {
    for seed in 0..10 {
        let mut rng = common::rng(seed);
        let a = common::gaussian_matrix(&mut rng, 8, 20);
        let f = DVector::from_fn(8, |_, _| rng.random_range(-1.0..1.0));
        let s = solve_l2_baseline(&a, f.as_slice()).unwrap();
        let oracle = common::pseudoinverse_solution(&a, &f);
        for (x, y) in s.coefficients.iter().zip(oracle.iter()) {
            assert!((x - y).abs() < 1e-9, "{x} vs {y}");
        }
        assert!(s.residual_norm < 1e-10);
    }
}

#[test]
fn l2_baseline_is_dense_where_l1_is_sparse() {
    let mut rng = common::rng(42);
    let a = common::unit_columns(common::gaussian_matrix(&mut rng, 20, 50));
    let mut x = vec![0.0; 50];
    x[4] = 1.0;
    x[17] = -0.8;
    let f = &a * DVector::from_column_slice(&x);
    let l1 = solve_l1(&a, f.as_slice(), &SolverConfig::default().with_epsilon(1e-6)).unwrap();
    let l2 = solve_l2_baseline(&a, f.as_slice()).unwrap();
    assert_eq!(l1.surviving_count(1e-3), 2);
    assert!(l2.surviving_count(1e-3) > 20);
}

#[test]
fn matches_exhaustive_optimum_on_tiny_instances() {
    for seed in 0..15u64 {
        let mut rng = common::rng(300 + seed);
        let a = common::gaussian_matrix(&mut rng, 4, 7);
        let f = DVector::from_fn(4, |_, _| rng.random_range(-1.0..1.0));
        for eps in [0.02, 0.3] {
            let s = solve_l1(&a, f.as_slice(), &SolverConfig::default().with_epsilon(eps)).unwrap();
            assert!(s.converged, "{:?}", s.diagnostic);
            assert!(s.residual_norm <= eps * f.norm() * (1.0 + 1e-12));
            let best = common::exhaustive_bpdn(&a, &f, eps * f.norm());
            assert!((s.l1_norm - best).abs() <= 1e-6 * best, "seed {seed}: {} vs {best}", s.l1_norm);
        }
    }
}

#[test]
fn admm_tracks_active_set() {
    let mut rng = common::rng(8);
    let a = common::unit_columns(common::gaussian_matrix(&mut rng, 12, 24));
    let f = DVector::from_fn(12, |_, _| rng.random_range(-1.0..1.0));
    let base = SolverConfig::default().with_epsilon(0.1);
    let exact = solve_l1(&a, f.as_slice(), &base).unwrap();
    let admm_cfg = SolverConfig {
        max_iterations: 20_000,
        convergence_tol: 1e-10,
        ..base.with_method(L1Method::Admm)
    };
    let admm = solve_l1(&a, f.as_slice(), &admm_cfg).unwrap();
    assert!(admm.residual_norm <= 0.1 * f.norm() * (1.0 + 1e-6));
    assert!((admm.l1_norm - exact.l1_norm).abs() < 1e-3 * exact.l1_norm);
}

#[test]
fn tiny_budget_reports_non_convergence() {
    let mut rng = common::rng(5);
    let a = common::unit_columns(common::gaussian_matrix(&mut rng, 20, 50));
    let f = DVector::from_fn(20, |_, _| rng.random_range(-1.0..1.0));
    let cfg = SolverConfig {
        max_iterations: 2,
        ..SolverConfig::default()
    };
    let s = solve_l1(&a, f.as_slice(), &cfg).unwrap();
    assert!(!s.converged);
    assert!(s.diagnostic.is_some());
}
