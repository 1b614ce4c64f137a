// Builds the symmetric generator for one to three qubits and inspects it.

use qubit_bath::dynamics::{kernel_dimension, spectral_abscissa, vectorize};
use qubit_bath::generator::{build_generator, EnvironmentParams};

pub fn run_example() -> qubit_bath::Result<()> {
    let params = EnvironmentParams::new(1.0, 0.5, 1.0, 1.0)?;
    println!("rate matrix:\n{}", params.rate_matrix());
    for n in 1..=3 {
        let generator = build_generator(&params, n)?;
        let superop = vectorize(&generator);
        let kernel = kernel_dimension(&superop, 1e-10);
        let abscissa = spectral_abscissa(&superop);
        println!(
            "n = {n}: {} Kraus operators, kernel dimension {kernel}, spectral abscissa {abscissa:.2e}",
            generator.kraus_ops().len()
        );
        assert!(abscissa < 1e-10);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> qubit_bath::Result<()> {
    run_example()
}
