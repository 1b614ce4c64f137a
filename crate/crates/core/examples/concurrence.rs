// The concurrence oracle against the closed forms for the reduced state.

use qubit_bath::asymptotic::reduced_protocol_state;
use qubit_bath::entanglement::{concurrence_oracle, reduced_state_concurrence, Radicand};
use qubit_bath::generator::EnvironmentParams;

pub fn run_example() -> qubit_bath::Result<()> {
    println!("{:>6} {:>6} {:>12} {:>12} {:>12}", "alpha", "r", "oracle", "delta", "literal");
    for (alpha, r) in [(0.0, 0.5), (0.1, 0.5), (0.3, 0.9), (1.0 / 3.0, 0.99)] {
        let state = reduced_protocol_state(alpha, &EnvironmentParams::from_r(r)?)?.state;
        let oracle = concurrence_oracle(&state)?.value;
        let with_delta = reduced_state_concurrence(alpha, r, Radicand::Delta);
        let literal = reduced_state_concurrence(alpha, r, Radicand::Literal);
        println!("{alpha:6.3} {r:6.2} {oracle:12.8} {with_delta:12.8} {literal:12.8}");
        assert!((oracle - with_delta).abs() < 1e-10);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> qubit_bath::Result<()> {
    run_example()
}
