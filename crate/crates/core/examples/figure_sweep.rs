// Sweeps a figure grid and writes the CSV pair to a temporary directory.

use qubit_bath::entanglement::Mode;
use qubit_bath::io::{parse_protocol_csv, protocol_csv, write_atomic};
use qubit_bath::protocol::{figure_grid, sweep, Figure, Method, FIGURE_ONE_LOWER_BOUND};

pub fn run_example() -> qubit_bath::Result<()> {
    let grid = figure_grid(Figure::Three, FIGURE_ONE_LOWER_BOUND);
    let records = sweep(&grid, Method::Analytic)?;
    let config = [("figure", "3".to_owned())];
    let dir = std::env::temp_dir().join(format!("qubit-bath-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    for mode in [Mode::ClosedForm, Mode::Oracle] {
        let path = dir.join(format!("figure3_{}.csv", mode.name()));
        let csv = protocol_csv(&records, mode, &config);
        write_atomic(&path, &csv)?;
        let (_, rows) = parse_protocol_csv(&csv)?;
        let positive = rows.iter().filter(|row| row[9].parse::<f64>().unwrap_or(0.0) > 0.0).count();
        println!("{}: {} rows, {positive} with delta2 > 0", path.display(), rows.len());
    }
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> qubit_bath::Result<()> {
    run_example()
}
