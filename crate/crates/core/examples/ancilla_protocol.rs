// One point of the ancilla protocol along both computation routes.

use qubit_bath::protocol::{params_for_r, run_protocol_point, Method};

pub fn run_example() -> qubit_bath::Result<()> {
    let params = params_for_r(0.99)?;
    let analytic = run_protocol_point(0.33, &params, Method::Analytic)?;
    let numeric = run_protocol_point(0.33, &params, Method::Numeric)?;
    for rec in [&analytic, &numeric] {
        println!(
            "{:>8}: C(start) = {:.6}, C(2q) = {:.6}, C(reduced) = {:.6}, regime {}, residual {:.1e}",
            rec.method.name(),
            rec.oracle.initial,
            rec.oracle.asymptotic_2q,
            rec.oracle.reduced_3q,
            rec.regime,
            rec.residual
        );
    }
    assert!((analytic.oracle.reduced_3q - numeric.oracle.reduced_3q).abs() < 1e-7);
    assert!(analytic.oracle.asymptotic_2q == 0.0 && analytic.oracle.reduced_3q > 0.0);
    Ok(())
}

#[allow(dead_code)]
fn main() -> qubit_bath::Result<()> {
    run_example()
}
