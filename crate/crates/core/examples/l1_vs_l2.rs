//! Same dictionary, same target: the L1 solution keeps a handful of grid
//! positions while the minimum-norm L2 solution spreads over nearly all.

use sparse_array::array_model::AngleGrid;
use sparse_array::reference::load_fixture;
use sparse_array::synthesis::{build_dictionary, sample_target, PositionGrid, SolverConfig};

fn main() -> sparse_array::Result<()> {
    let reference = load_fixture("chebyshev20_table1")?.array;
    let grid = AngleGrid::half_space(401)?;
    let dict = build_dictionary(&PositionGrid::new(10.0, 0.1)?, &grid)?;
    let f = sample_target(&reference, &grid)?;

    let l1 = dict.solve_l1(&f, &SolverConfig::default())?;
    let l2 = dict.solve_l2_baseline(&f)?;

    for (name, s) in [("l1", &l1), ("l2", &l2)] {
        println!(
            "{name}: {:>3} of {} coefficients above 1e-3 of max, ||r||_1 = {:.4}, residual = {:.2e}",
            s.surviving_count(1e-3),
            s.coefficients.len(),
            s.l1_norm,
            s.residual_norm
        );
    }
    Ok(())
}
