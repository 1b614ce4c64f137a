//! Matrix exponential by scaling and squaring with a truncated Taylor core.

use crate::algebra::{real, ComplexMatrix};

/// Scaled 1-norm bound before the Taylor core is applied.
const SCALED_NORM: f64 = 0.25;
/// Taylor degree; remainder is below `0.25^19 / 19! ~ 1e-29` relative.
const TAYLOR_DEGREE: usize = 18;

/// Induced 1-norm (max column sum).
pub fn one_norm(m: &ComplexMatrix) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `exp(a)` for a square complex matrix.
pub fn expm(a: &ComplexMatrix) -> ComplexMatrix {
    assert!(a.is_square(), "expm needs a square matrix");
    let n = a.nrows();
    let norm = one_norm(a);
    let squarings = if norm > SCALED_NORM {
        (norm / SCALED_NORM).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a * real(0.5f64.powi(squarings as i32));

    // Horner: I + A(I + A/2 (I + A/3 (...)))
    let id = ComplexMatrix::identity(n, n);
    let mut acc = id.clone();
    for k in (1..=TAYLOR_DEGREE).rev() {
        acc = &id + (&scaled * acc) * real(1.0 / k as f64);
    }
    for _ in 0..squarings {
        acc = &acc * &acc;
    }
    acc
}
