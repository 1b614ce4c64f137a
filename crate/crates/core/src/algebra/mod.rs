//! Dense complex-matrix primitives for systems of one to three qubits.
//!
//! Qubit 1 is always the slowest tensor index: a basis label `|q1 q2 q3>`
//! maps to the row `4*q1 + 2*q2 + q3`.

mod commutant;
mod density;
mod invariants;
mod pauli;

pub use commutant::{brute_force_commutant, project_onto_basis, COMMUTANT_THRESHOLD};
pub use density::{partial_trace, partial_trace_matrix, DensityMatrix, DENSITY_TOL, PSD_TOL};
pub use invariants::{
    identity_residuals, invariant_operators, levi_civita, pair_operator, pair_singlet,
    singlet_projector, triple_product, IdentityResiduals, InvariantOperatorSet, PAIRS,
};
pub use pauli::{embed_single_qubit, global_spin, pauli};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

pub type ComplexMatrix = DMatrix<Complex64>;

/// Default absolute tolerance for matrix equality.
pub const DEFAULT_TOL: f64 = 1e-10;

pub const I: Complex64 = Complex64::new(0.0, 1.0);

#[inline]
pub fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

pub fn identity(dim: usize) -> ComplexMatrix {
    ComplexMatrix::identity(dim, dim)
}

pub fn zeros(dim: usize) -> ComplexMatrix {
    ComplexMatrix::zeros(dim, dim)
}

/// Kronecker product with `a` as the slow index.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

/// Kronecker product of a list of factors, left to right.
pub fn kron_all<'a>(factors: impl IntoIterator<Item = &'a ComplexMatrix>) -> ComplexMatrix {
    factors
        .into_iter()
        .fold(identity(1), |acc, f| kron(&acc, f))
}

/// Largest entry modulus.
pub fn max_abs(m: &ComplexMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch");
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Entrywise equality within an absolute tolerance.
pub fn approx_eq(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
    a.shape() == b.shape() && max_abs_diff(a, b) <= tol
}

pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a * b - b * a
}

pub fn anticommutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a * b + b * a
}

/// Max-abs distance between `m` and its adjoint.
pub fn hermiticity_defect(m: &ComplexMatrix) -> f64 {
    max_abs_diff(m, &m.adjoint())
}

pub fn hermitian_part(m: &ComplexMatrix) -> ComplexMatrix {
    (m + m.adjoint()) * real(0.5)
}

/// Hilbert-Schmidt inner product `Tr(a^dag b)`.
pub fn hs_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// `Tr(a b)` without forming the product.
pub fn trace_of_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Complex64 {
    let n = a.nrows();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for k in 0..a.ncols() {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
///
/// Only the Hermitian part of `m` is used.
pub fn hermitian_eigen(m: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let eig = SymmetricEigen::new(hermitian_part(m));
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = ComplexMatrix::from_fn(m.nrows(), order.len(), |r, c| {
        eig.eigenvectors[(r, order[c])]
    });
    (values, vectors)
}

pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    hermitian_eigen(m).0
}

pub fn min_eigenvalue(m: &ComplexMatrix) -> f64 {
    hermitian_eigenvalues(m)
        .first()
        .copied()
        .unwrap_or(f64::INFINITY)
}

/// Number of qubits for a `2^n x 2^n` matrix, if it is one.
pub fn qubit_count_of(m: &ComplexMatrix) -> Option<usize> {
    let d = m.nrows();
    (m.is_square() && d.is_power_of_two() && d >= 2).then(|| d.trailing_zeros() as usize)
}
