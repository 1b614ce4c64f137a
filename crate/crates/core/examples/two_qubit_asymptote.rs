// Asymptote of the two-qubit alpha family, closed form against propagation.

use qubit_bath::algebra::max_abs_diff;
use qubit_bath::asymptotic::{rho_alpha, two_qubit_alpha_asymptote};
use qubit_bath::dynamics::{asymptotic_state, vectorize};
use qubit_bath::entanglement::concurrence_oracle;
use qubit_bath::generator::{build_generator, EnvironmentParams};

pub fn run_example() -> qubit_bath::Result<()> {
    let params = EnvironmentParams::from_r(0.9)?;
    let superop = vectorize(&build_generator(&params, 2)?);
    for alpha in [0.0, 0.1, 0.2, 1.0 / 3.0] {
        let closed = two_qubit_alpha_asymptote(alpha, &params)?;
        let numeric = asymptotic_state(&superop, &rho_alpha(alpha)?, 1e-12)?;
        let gap = max_abs_diff(closed.matrix(), numeric.state.matrix());
        let c = concurrence_oracle(&closed)?.value;
        println!("alpha = {alpha:.4}: concurrence {c:.6}, closed vs propagated {gap:.2e}");
        assert!(gap < 1e-8);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> qubit_bath::Result<()> {
    run_example()
}
