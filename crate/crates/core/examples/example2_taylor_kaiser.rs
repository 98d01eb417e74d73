//! Thins the 29-element Taylor-Kaiser array and writes the element table and
//! both patterns as CSV for plotting.

use std::path::PathBuf;

use sparse_array::reference::load_fixture;
use sparse_array::synthesis::{synthesize, SynthesisParams};
use sparse_array::table::{write_element_table, write_pattern_table};

fn main() -> sparse_array::Result<()> {
    let target = load_fixture("taylor_kaiser_table2_ref1")?;
    let report = synthesize(&target.array, &SynthesisParams::default())?;

    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    write_element_table(&dir.join("tk_elements.csv"), &report.sparse_array)?;
    write_pattern_table(&dir.join("tk_target.csv"), &report.target_pattern)?;
    write_pattern_table(&dir.join("tk_synthesized.csv"), &report.synthesized_pattern)?;

    println!(
        "{} -> {} elements ({:.1}% fewer), max deviation {:.2} dB",
        report.n_uniform, report.n_sparse, report.reduction_percent, report.metrics.max_dev_db
    );
    println!("tables written to {}", dir.display());
    Ok(())
}
