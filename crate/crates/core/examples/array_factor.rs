//! Evaluates the far-field pattern of a small symmetric array and prints it
//! in dB, once through the cosine form and once through the full complex sum.

use sparse_array::array_model::{array_factor_full, array_factor_symmetric, AngleGrid, SymmetricArray};

fn main() -> sparse_array::Result<()> {
    // 7 elements: a center element plus three mirrored pairs
    let array = SymmetricArray::from_parts(&[0.0, 0.5, 1.0, 1.5], &[0.5, 0.9, 0.6, 0.3])?;
    let grid = AngleGrid::half_space(11)?;

    let cosine = array_factor_symmetric(&array, &grid)?;
    let full = array_factor_full(&array.mirrored(), &grid)?;
    let db = cosine.to_db()?;

    println!("{} physical elements", array.element_count());
    println!("{:>6} {:>8} {:>12} {:>12} {:>9}", "u", "theta", "cosine form", "full sum", "dB");
    for i in 0..grid.len() {
        println!(
            "{:>6.2} {:>8.2} {:>12.6} {:>12.6} {:>9.2}",
            grid.u_values()[i],
            grid.theta_deg()[i],
            cosine.values()[i],
            full.values()[i],
            db[i]
        );
    }
    Ok(())
}
