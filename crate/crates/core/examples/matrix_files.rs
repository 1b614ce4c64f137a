// Round trip of a density matrix through the text matrix format.

use qubit_bath::algebra::max_abs_diff;
use qubit_bath::io::{format_matrix, read_matrix_file, write_atomic};
use qubit_bath::random::{random_density_matrix, seeded_rng};

pub fn run_example() -> qubit_bath::Result<()> {
    let rho = random_density_matrix(1, &mut seeded_rng(3));
    let text = format_matrix(rho.matrix());
    print!("{text}");
    let path = std::env::temp_dir().join(format!("qubit-bath-matrix-{}.txt", std::process::id()));
    write_atomic(&path, &text)?;
    let back = read_matrix_file(&path)?;
    std::fs::remove_file(&path)?;
    assert_eq!(max_abs_diff(&back, rho.matrix()), 0.0);
    Ok(())
}

#[allow(dead_code)]
fn main() -> qubit_bath::Result<()> {
    run_example()
}
