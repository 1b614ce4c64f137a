//! Text formats: matrix files and protocol CSVs.
//!
//! A matrix file starts with `rows cols` and then holds one row per line,
//! cells separated by commas, each cell written `re+imj`.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use crate::algebra::ComplexMatrix;
use crate::entanglement::Mode;
use crate::error::{Error, Result};
use crate::protocol::ProtocolRecord;

pub const PROTOCOL_HEADER: &str =
    "r,alpha,C_init,C_asym2q_oracle,C_asym2q_paper,C_red3q_oracle,C_red3q_paper,delta,delta1,delta2,regime,residual";

/// Shortest representation that parses back to the same `f64`.
pub fn format_float(x: f64) -> String {
    format!("{x:?}")
}

pub fn format_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}j", format_float(z.re), sign, format_float(z.im.abs()))
}

pub fn parse_complex(cell: &str) -> Result<Complex64> {
    let cell = cell.trim();
    let bad = || Error::Parse(format!("malformed complex cell {cell:?} (expected re+imj)"));
    let body = cell.strip_suffix('j').ok_or_else(bad)?;
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'))
        .ok_or_else(bad)?;
    let re: f64 = body[..split].parse().map_err(|_| bad())?;
    let im: f64 = body[split..].parse().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

pub fn format_matrix(m: &ComplexMatrix) -> String {
    let mut out = format!("{} {}\n", m.nrows(), m.ncols());
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|j| format_complex(m[(i, j)])).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<ComplexMatrix> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty matrix file".into()))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad dimension header {header:?}"))))
        .collect::<Result<_>>()?;
    let [rows, cols] = dims[..] else {
        return Err(Error::Parse(format!("dimension header must be `rows cols`, got {header:?}")));
    };
    let mut m = ComplexMatrix::zeros(rows, cols);
    let mut seen = 0;
    for (i, line) in lines.enumerate() {
        if i >= rows {
            return Err(Error::Parse(format!("more than {rows} rows")));
        }
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != cols {
            return Err(Error::Parse(format!("row {} has {} cells, expected {cols}", i + 1, cells.len())));
        }
        for (j, cell) in cells.iter().enumerate() {
            m[(i, j)] = parse_complex(cell)?;
        }
        seen += 1;
    }
    if seen != rows {
        return Err(Error::Parse(format!("expected {rows} rows, found {seen}")));
    }
    Ok(m)
}

pub fn read_matrix_file(path: &Path) -> Result<ComplexMatrix> {
    parse_matrix(&std::fs::read_to_string(path)?)
}

/// Writes through a temporary sibling and renames, so a failed write leaves nothing behind.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = std::path::PathBuf::from(tmp);
    if let Err(e) = std::fs::write(&tmp, contents).and_then(|_| std::fs::rename(&tmp, path)) {
        let _ = std::fs::remove_file(&tmp);
        return Err(e.into());
    }
    Ok(())
}

/// `# k1=v1 k2=v2`.
pub fn comment_line(config: &[(&str, String)]) -> String {
    let body: Vec<String> = config.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("# {}", body.join(" "))
}

/// Protocol CSV; the delta columns come from `mode`, rows keep the given order.
pub fn protocol_csv(records: &[ProtocolRecord], mode: Mode, config: &[(&str, String)]) -> String {
    let mut out = comment_line(config);
    out.push('\n');
    out.push_str(PROTOCOL_HEADER);
    out.push('\n');
    for rec in records {
        let d = rec.deltas(mode);
        let cells = [
            rec.r,
            rec.alpha,
            rec.oracle.initial,
            rec.oracle.asymptotic_2q,
            rec.closed_form.asymptotic_2q,
            rec.oracle.reduced_3q,
            rec.closed_form.reduced_3q,
            d.delta,
            d.delta1,
            d.delta2,
        ];
        for x in cells {
            out.push_str(&format_float(x));
            out.push(',');
        }
        let _ = writeln!(out, "{},{}", rec.regime, format_float(rec.residual));
    }
    out
}

/// Splits protocol CSV text into `(comment, header, rows)`.
pub fn parse_protocol_csv(text: &str) -> Result<(String, Vec<Vec<String>>)> {
    let mut lines = text.lines();
    let comment = lines
        .next()
        .filter(|l| l.starts_with("# "))
        .ok_or_else(|| Error::Parse("missing `# key=value` comment line".into()))?;
    if lines.next() != Some(PROTOCOL_HEADER) {
        return Err(Error::Parse("missing protocol header".into()));
    }
    let rows = lines.map(|l| l.split(',').map(str::to_owned).collect()).collect();
    Ok((comment.to_owned(), rows))
}
