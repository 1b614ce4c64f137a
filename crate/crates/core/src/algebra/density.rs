use super::{hermiticity_defect, min_eigenvalue, qubit_count_of, ComplexMatrix};
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Tolerance on Hermiticity and unit trace of a state.
pub const DENSITY_TOL: f64 = 1e-12;
/// Most negative eigenvalue tolerated in a state.
pub const PSD_TOL: f64 = -1e-10;

/// A validated state of one to three qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    qubit_count: usize,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, DENSITY_TOL)
    }

    /// Like [`DensityMatrix::new`] with a caller-chosen Hermiticity/trace tolerance.
    pub fn with_tolerance(matrix: ComplexMatrix, tol: f64) -> Result<Self> {
        let qubit_count = qubit_count_of(&matrix)
            .filter(|n| (1..=6).contains(n))
            .ok_or_else(|| {
                Error::Validation(format!(
                    "a state must be 2^n x 2^n with 1 <= n, got {:?}",
                    matrix.shape()
                ))
            })?;
        let herm = hermiticity_defect(&matrix);
        if herm > tol {
            return Err(Error::Validation(format!("not Hermitian (defect {herm:e})")));
        }
        let tr = matrix.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > tol {
            return Err(Error::Validation(format!("trace {tr} differs from 1")));
        }
        let min = min_eigenvalue(&matrix);
        if min < PSD_TOL {
            return Err(Error::Validation(format!(
                "not positive semidefinite (min eigenvalue {min:e})"
            )));
        }
        Ok(Self { matrix, qubit_count })
    }

    /// Symmetrizes `m` before validating; used for numerically propagated states.
    pub fn from_numeric(m: ComplexMatrix) -> Result<Self> {
        Self::new(super::hermitian_part(&m))
    }

    pub fn maximally_mixed(n: usize) -> Self {
        let d = 1usize << n;
        Self {
            matrix: super::identity(d) * super::real(1.0 / d as f64),
            qubit_count: n,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Expectation `Tr(rho x)`.
    pub fn expectation(&self, x: &ComplexMatrix) -> Complex64 {
        super::trace_of_product(&self.matrix, x)
    }

    pub fn kron(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix {
            matrix: super::kron(&self.matrix, &other.matrix),
            qubit_count: self.qubit_count + other.qubit_count,
        }
    }
}

/// Partial trace of an arbitrary `2^n x 2^n` operator, keeping the listed
/// qubits (1-based) in increasing order.
pub fn partial_trace_matrix(m: &ComplexMatrix, keep: &[usize]) -> Result<ComplexMatrix> {
    let n = qubit_count_of(m)
        .ok_or_else(|| Error::InvalidArgument(format!("not a qubit operator: {:?}", m.shape())))?;
    if keep.is_empty() {
        return Err(Error::InvalidArgument("keep-set must be nonempty".into()));
    }
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if kept.len() != keep.len() || kept.iter().any(|&q| q == 0 || q > n) {
        return Err(Error::InvalidArgument(format!(
            "keep-set {keep:?} is not a set of qubits in 1..={n}"
        )));
    }
    let traced: Vec<usize> = (1..=n).filter(|q| !kept.contains(q)).collect();
    // bit position of qubit q in a basis index (qubit 1 is the most significant)
    let bit = |q: usize| n - q;
    let spread = |value: usize, qubits: &[usize]| -> usize {
        qubits
            .iter()
            .enumerate()
            .map(|(k, &q)| ((value >> (qubits.len() - 1 - k)) & 1) << bit(q))
            .sum()
    };
    let dk = 1usize << kept.len();
    let dt = 1usize << traced.len();
    let mut out = ComplexMatrix::zeros(dk, dk);
    for i in 0..dk {
        let ii = spread(i, &kept);
        for j in 0..dk {
            let jj = spread(j, &kept);
            let mut acc = Complex64::new(0.0, 0.0);
            for t in 0..dt {
                let tt = spread(t, &traced);
                acc += m[(ii | tt, jj | tt)];
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}

/// Reduced state on the qubits in `keep`.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let m = partial_trace_matrix(rho.matrix(), keep)?;
    let qubit_count = keep.len();
    Ok(DensityMatrix { matrix: m, qubit_count })
}
