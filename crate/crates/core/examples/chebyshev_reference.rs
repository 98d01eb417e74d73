//! Dolph-Chebyshev weights and the equiripple sidelobes they produce.

use sparse_array::array_model::{array_factor_symmetric, AngleGrid};
use sparse_array::metrics::sidelobe_peaks;
use sparse_array::reference::{chebyshev_excitations, ChebyshevSpec};

fn main() -> sparse_array::Result<()> {
    let spec = ChebyshevSpec::new(20, -30.0);
    let array = chebyshev_excitations(&spec)?;

    println!("N = {}, SLL = {} dB, spacing {} wavelengths", spec.n_elements, spec.sll_db, spec.spacing);
    for el in array.half_elements() {
        println!("  d = {:>5.2}  R = {:.6}", el.position, el.excitation);
    }

    let pattern = array_factor_symmetric(&array, &AngleGrid::half_space(2001)?)?;
    let u = pattern.grid().u_values();
    println!("sidelobe peaks:");
    for (i, level) in sidelobe_peaks(&pattern)? {
        println!("  u = {:.4}  {:.3} dB", u[i], level);
    }
    Ok(())
}
