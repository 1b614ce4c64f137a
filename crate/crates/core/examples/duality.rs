// Time-averaged observables are dual to the asymptotic state map.

use qubit_bath::algebra::trace_of_product;
use qubit_bath::dynamics::{asymptotic_state, heisenberg_limit, time_average, vectorize};
use qubit_bath::generator::{build_generator, EnvironmentParams};
use qubit_bath::random::{random_density_matrix, random_hermitian, seeded_rng};

pub fn run_example() -> qubit_bath::Result<()> {
    let superop = vectorize(&build_generator(&EnvironmentParams::from_r(0.5)?, 2)?);
    let mut rng = seeded_rng(11);
    for _ in 0..3 {
        let rho = random_density_matrix(2, &mut rng);
        let x = random_hermitian(4, &mut rng);
        let averaged = trace_of_product(rho.matrix(), &time_average(&superop, &x, 200.0, 4000)?).re;
        let limit = trace_of_product(rho.matrix(), &heisenberg_limit(&superop, &x, 1e-12)?).re;
        let schrodinger = trace_of_product(asymptotic_state(&superop, &rho, 1e-12)?.state.matrix(), &x).re;
        println!("averaged {averaged:.10}  limit {limit:.10}  state side {schrodinger:.10}");
        assert!((averaged - schrodinger).abs() < 1e-7);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> qubit_bath::Result<()> {
    run_example()
}
