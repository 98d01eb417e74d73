//! Lists the built-in reference arrays and round-trips one through the CSV
//! element-table format.

use sparse_array::reference::{load_fixture, BUILTIN_FIXTURES};
use sparse_array::table::{format_element_table, read_element_table, write_element_table};

fn main() -> sparse_array::Result<()> {
    for name in BUILTIN_FIXTURES {
        let f = load_fixture(name)?;
        println!("{name:<32} {:>2} elements  {}", f.array.element_count(), f.source);
    }

    let pencil = load_fixture("matrix_pencil_table2_ref2")?;
    print!("\n{}", format_element_table(pencil.array.half_elements()));

    let path = std::env::temp_dir().join("sparse_array_fixture.csv");
    write_element_table(&path, &pencil.array)?;
    let back = read_element_table(&path)?;
    println!("\nread back {} physical elements from {}", back.element_count(), path.display());
    Ok(())
}
