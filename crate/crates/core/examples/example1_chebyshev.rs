//! Thins the 20-element -30 dB Chebyshev array over a 10-wavelength
//! half-aperture with a 0.1-wavelength position grid.

use sparse_array::reference::load_fixture;
use sparse_array::synthesis::{synthesize, SynthesisParams};

fn main() -> sparse_array::Result<()> {
    let target = load_fixture("chebyshev20_table1")?;
    let report = synthesize(&target.array, &SynthesisParams::default())?;

    println!("{}: {} elements -> {}", target.name, report.n_uniform, report.n_sparse);
    println!("reduction        {:.1}%", report.reduction_percent);
    println!("peak sidelobe    {:.2} dB", report.metrics.peak_sidelobe_db);
    println!("max deviation    {:.2} dB above {} dB", report.metrics.max_dev_db, report.params.floor_db);
    println!("half array:");
    for el in report.sparse_array.half_elements() {
        println!("  {:>7.4}  {:>8.5}", el.position, el.excitation);
    }
    Ok(())
}
