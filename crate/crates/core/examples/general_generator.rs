// A three-qubit generator with an arbitrary positive Kossakowski matrix.

use qubit_bath::algebra::{max_abs, trace_of_product};
use qubit_bath::dynamics::{evolve, vectorize};
use qubit_bath::generator::build_general_generator;
use qubit_bath::random::{ginibre, random_density_matrix, seeded_rng};

pub fn run_example() -> qubit_bath::Result<()> {
    let mut rng = seeded_rng(7);
    let g = ginibre(9, 9, &mut rng);
    let kossakowski = &g * g.adjoint() * qubit_bath::algebra::real(0.1);
    let generator = build_general_generator(&kossakowski, [1.0, 0.7, 0.3])?;
    let rho0 = random_density_matrix(3, &mut rng);
    let rho = evolve(&vectorize(&generator), &rho0, 2.0)?;
    let trace = trace_of_product(rho.matrix(), &qubit_bath::algebra::identity(8)).re;
    println!("trace after t = 2: {trace:.15}");
    println!("max |L[rho]| at t = 2: {:.3e}", max_abs(&generator.apply(rho.matrix())));
    assert!((trace - 1.0).abs() < 1e-10);
    Ok(())
}

#[allow(dead_code)]
fn main() -> qubit_bath::Result<()> {
    run_example()
}
