// Purity above which the ancilla entangles the pair at alpha = 1/3.

use qubit_bath::entanglement::{CriticalR, Radicand};

pub fn run_example() -> qubit_bath::Result<()> {
    for radicand in [Radicand::Delta, Radicand::Literal] {
        let c = CriticalR::compute(radicand)?;
        println!(
            "{:>13}: root {:.10}, alpha_minus(root) {:.10}, oracle crossing {:.10}",
            radicand.name(),
            c.root,
            c.alpha_minus_at_root,
            c.oracle_crossing
        );
    }
    let c = CriticalR::compute(Radicand::Delta)?;
    assert!((c.root - c.oracle_crossing).abs() < 1e-4);
    Ok(())
}

#[allow(dead_code)]
fn main() -> qubit_bath::Result<()> {
    run_example()
}
