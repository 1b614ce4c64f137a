use qubit_bath::verify::{verify_all, Tolerances};

pub fn run_example() -> qubit_bath::Result<()> {
    let report = verify_all(&[], &Tolerances::default())?;
    print!("{}", report.to_table());
    assert!(report.passed());
    Ok(())
}

#[allow(dead_code)]
fn main() -> qubit_bath::Result<()> {
    run_example()
}
