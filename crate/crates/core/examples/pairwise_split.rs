// The three-qubit generator as a sum of two-qubit blocks.

use qubit_bath::algebra::max_abs_diff;
use qubit_bath::generator::{build_generator, pairwise_decomposition, EnvironmentParams};
use qubit_bath::random::{random_density_matrix, seeded_rng};

pub fn run_example() -> qubit_bath::Result<()> {
    let params = EnvironmentParams::new(1.0, 0.3, 0.5, 2.0)?;
    let full = build_generator(&params, 3)?;
    let split = pairwise_decomposition(&params, 3)?;
    let rho = random_density_matrix(3, &mut seeded_rng(5));
    let gap = max_abs_diff(&full.apply(rho.matrix()), &split.apply(rho.matrix()));
    println!("full generator vs sum of pair blocks: {gap:.2e}");
    assert!(gap < 1e-12);
    Ok(())
}

#[allow(dead_code)]
fn main() -> qubit_bath::Result<()> {
    run_example()
}
