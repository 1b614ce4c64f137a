// The single-qubit fixed point from the Bloch equations and from propagation.

use qubit_bath::algebra::DensityMatrix;
use qubit_bath::asymptotic::{bloch_vector, one_qubit_stationary};
use qubit_bath::dynamics::{asymptotic_state, vectorize};
use qubit_bath::generator::{build_generator, EnvironmentParams};

pub fn run_example() -> qubit_bath::Result<()> {
    for b in [0.0, 0.5, -0.5, 0.9] {
        let params = EnvironmentParams::new(1.0, b, 1.0, 1.0)?;
        let closed = one_qubit_stationary(&params)?;
        let superop = vectorize(&build_generator(&params, 1)?);
        let numeric = asymptotic_state(&superop, &DensityMatrix::maximally_mixed(1), 1e-12)?;
        let bloch = bloch_vector(numeric.state.matrix());
        println!("b = {b:5}: closed-form z = {:.12}, propagated z = {:.12}", closed.bloch.z, bloch.z);
        assert!((bloch - closed.bloch).amax() < 1e-9);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> qubit_bath::Result<()> {
    run_example()
}
