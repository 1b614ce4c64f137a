// Alpha thresholds as functions of the environment purity r.

use qubit_bath::entanglement::thresholds;

pub fn run_example() -> qubit_bath::Result<()> {
    println!("{:>5} {:>10} {:>10} {:>10} {:>10}", "r", "sep", "gain", "minus", "plus");
    for r in [0.0, 0.25, 0.5, 0.75, 0.9, 0.99, 1.0] {
        let t = thresholds(r)?;
        println!(
            "{r:5.2} {:10.6} {:10.6} {:10.6} {:10.6}",
            t.alpha_sep, t.alpha_gain, t.alpha_minus, t.alpha_plus
        );
    }
    let end = thresholds(1.0)?;
    assert!((end.alpha_minus - 0.3).abs() < 1e-12);
    Ok(())
}

#[allow(dead_code)]
fn main() -> qubit_bath::Result<()> {
    run_example()
}
