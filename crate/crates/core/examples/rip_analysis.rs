//! Restricted isometry constants, coherence and the sample-count bound for
//! a seeded Gaussian matrix and for a small array dictionary.

use nalgebra::DMatrix;
use sparse_array::array_model::AngleGrid;
use sparse_array::synthesis::{build_dictionary, PositionGrid};
use sparse_array::theory::{mutual_coherence, restricted_isometry_constant, sparsity_bound_holds};

fn unit_columns(mut a: DMatrix<f64>) -> DMatrix<f64> {
    for mut c in a.column_iter_mut() {
        let n = c.norm();
        c /= n;
    }
    a
}

fn main() -> sparse_array::Result<()> {
    // deterministic pseudo-random entries, no RNG needed for a demo
    let a = unit_columns(DMatrix::from_fn(6, 10, |i, j| ((i * 10 + j) as f64 * 12.9898).sin() * 43758.5453 % 1.0));
    println!("6 x 10 matrix, unit columns, coherence {:.4}", mutual_coherence(&a)?);
    for k in 1..=3 {
        let r = restricted_isometry_constant(&a, k)?;
        println!("  delta_{k} = {:.4}  attained on {:?}", r.delta_k, r.witness_subset);
    }

    let dict = build_dictionary(&PositionGrid::new(2.0, 0.25)?, &AngleGrid::half_space(21)?)?;
    let d = unit_columns(dict.matrix().clone());
    let r = restricted_isometry_constant(&d, 2)?;
    println!("array dictionary 21 x 8: delta_2 = {:.4}, coherence {:.4}", r.delta_k, mutual_coherence(&d)?);

    let b = sparsity_bound_holds(3, 20, 50, 1.0)?;
    println!("K = 3, M = 20, N = 50: bound {:.2}, holds = {}", b.bound, b.holds);
    Ok(())
}
