// Operators commuting with the global spin and the relations among them.

use qubit_bath::algebra::{brute_force_commutant, global_spin, identity_residuals};

pub fn run_example() -> qubit_bath::Result<()> {
    for n in 2..=3 {
        let spins = (1..=3).map(|i| global_spin(i, n)).collect::<qubit_bath::Result<Vec<_>>>()?;
        println!("n = {n}: commutant dimension {}", brute_force_commutant(&spins).len());
    }
    let res = identity_residuals();
    println!("valid relations, worst residual {:.2e}", res.valid_max());
    println!("pair commutator written with S^(bc): residual {:.3}", res.literal_pair_commutator);
    println!("triple commutator as written: residual {:.3}", res.literal_triple_commutator);
    assert!(res.valid_max() < 1e-12);
    Ok(())
}

#[allow(dead_code)]
fn main() -> qubit_bath::Result<()> {
    run_example()
}
