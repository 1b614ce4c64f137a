// Drives the command-line front end in process.

use qubit_bath::cli::{run, EXIT_OK, EXIT_VALIDATION};

pub fn run_example() -> qubit_bath::Result<()> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(["qubit-bath", "critical-r"], &mut out, &mut err);
    print!("{}", String::from_utf8_lossy(&out));
    assert_eq!(code, EXIT_OK);
    let code = run(["qubit-bath", "steady", "--n", "2", "--b", "0.5", "--r", "0.5"], &mut out, &mut err);
    print!("{}", String::from_utf8_lossy(&err));
    assert_eq!(code, EXIT_VALIDATION);
    Ok(())
}

#[allow(dead_code)]
fn main() -> qubit_bath::Result<()> {
    run_example()
}
