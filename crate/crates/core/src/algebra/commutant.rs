//! Brute-force commutants as null spaces of stacked commutator maps.

use super::{hs_inner, ComplexMatrix};
use num_complex::Complex64;

/// Singular values below this count as zero.
pub const COMMUTANT_THRESHOLD: f64 = 1e-10;

/// Orthonormal (Hilbert-Schmidt) basis of `{x : [x, g] = 0 for all g}`.
///
/// With column stacking, `vec(x g - g x) = (g^T (x) 1 - 1 (x) g) vec(x)`; the
/// maps for all generators are stacked and their common null space is read
/// off the right singular vectors.
pub fn brute_force_commutant(generators: &[ComplexMatrix]) -> Vec<ComplexMatrix> {
    let Some(first) = generators.first() else {
        return Vec::new();
    };
    let d = first.nrows();
    assert!(
        generators.iter().all(|g| g.shape() == (d, d)),
        "generators must share one square dimension"
    );
    let d2 = d * d;
    let id = ComplexMatrix::identity(d, d);
    let mut stacked = ComplexMatrix::zeros(generators.len() * d2, d2);
    for (k, g) in generators.iter().enumerate() {
        let map = g.transpose().kronecker(&id) - id.kronecker(g);
        stacked.view_mut((k * d2, 0), (d2, d2)).copy_from(&map);
    }
    let svd = stacked.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let mut basis = Vec::new();
    for (row, sigma) in svd.singular_values.iter().enumerate() {
        if *sigma < COMMUTANT_THRESHOLD {
            // rows of V^dag are conjugated right singular vectors
            let v: Vec<Complex64> = v_t.row(row).iter().map(|z| z.conj()).collect();
            basis.push(ComplexMatrix::from_column_slice(d, d, &v));
        }
    }
    basis
}

/// Orthogonal projection of `x` onto the span of an orthonormal basis.
pub fn project_onto_basis(x: &ComplexMatrix, basis: &[ComplexMatrix]) -> ComplexMatrix {
    basis
        .iter()
        .fold(ComplexMatrix::zeros(x.nrows(), x.ncols()), |acc, b| acc + b * hs_inner(b, x))
}
