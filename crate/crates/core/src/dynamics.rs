//! Superoperator form of a generator, propagation, convergence to the
//! asymptotic state and time averages in the Heisenberg picture.
//!
//! Vectorization stacks columns: `vec(A X B) = (B^T kron A) vec(X)`.

use nalgebra::SVD;

use crate::algebra::{max_abs, max_abs_diff, real, ComplexMatrix, DensityMatrix, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::expm::expm;
use crate::generator::LindbladGenerator;

/// Base horizon of the squaring sequence.
pub const BASE_HORIZON: f64 = 1.0;
pub const MAX_DOUBLINGS: u32 = 60;

/// Matrix of a generator acting on column-stacked operators.
#[derive(Clone, Debug)]
pub struct Superoperator {
    matrix: ComplexMatrix,
    qubit_count: usize,
    degenerate: bool,
}

impl Superoperator {
    pub fn from_matrix(matrix: ComplexMatrix, qubit_count: usize) -> Result<Self> {
        let d2 = 1usize << (2 * qubit_count);
        if matrix.shape() != (d2, d2) {
            return Err(Error::InvalidArgument(format!(
                "superoperator for {qubit_count} qubits must be {d2}x{d2}, got {:?}",
                matrix.shape()
            )));
        }
        Ok(Self { matrix, qubit_count, degenerate: false })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn dim(&self) -> usize {
        1 << self.qubit_count
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn apply(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        unvec(&(&self.matrix * vec(rho)), self.dim())
    }

    /// Matrix of the dual map: the conjugate transpose.
    pub fn heisenberg(&self) -> ComplexMatrix {
        self.matrix.adjoint()
    }
}

pub fn vec(m: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_column_slice(m.len(), 1, m.as_slice())
}

pub fn unvec(v: &ComplexMatrix, dim: usize) -> ComplexMatrix {
    ComplexMatrix::from_column_slice(dim, dim, v.as_slice())
}

/// Builds the superoperator column by column from the images of the matrix units.
pub fn vectorize(generator: &LindbladGenerator) -> Superoperator {
    let d = generator.dim();
    let mut matrix = ComplexMatrix::zeros(d * d, d * d);
    let mut unit = ComplexMatrix::zeros(d, d);
    for j in 0..d {
        for i in 0..d {
            unit[(i, j)] = real(1.0);
            let image = generator.apply(&unit);
            matrix.column_mut(i + j * d).copy_from_slice(image.as_slice());
            unit[(i, j)] = real(0.0);
        }
    }
    Superoperator {
        matrix,
        qubit_count: generator.qubit_count(),
        degenerate: generator.is_degenerate(),
    }
}

/// `exp(t L)` as a matrix on vectorized operators.
pub fn propagator(superop: &Superoperator, t: f64) -> Result<ComplexMatrix> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "propagation time must be finite and nonnegative, got {t}"
        )));
    }
    Ok(expm(&(superop.matrix() * real(t))))
}

/// `rho_t = exp(t L)[rho_0]`.
pub fn evolve(superop: &Superoperator, rho0: &DensityMatrix, t: f64) -> Result<DensityMatrix> {
    check_dim(superop, rho0.matrix())?;
    let p = propagator(superop, t)?;
    DensityMatrix::from_numeric(unvec(&(p * vec(rho0.matrix())), superop.dim()))
}

fn check_dim(superop: &Superoperator, m: &ComplexMatrix) -> Result<()> {
    if m.nrows() != superop.dim() || m.ncols() != superop.dim() {
        return Err(Error::InvalidArgument(format!(
            "operator is {}x{}, superoperator acts on {}x{}",
            m.nrows(),
            m.ncols(),
            superop.dim(),
            superop.dim()
        )));
    }
    Ok(())
}

/// Outcome of the squaring sequence `t0, 2 t0, 4 t0, ...`.
#[derive(Clone, Debug)]
pub struct ConvergenceResult {
    pub state: DensityMatrix,
    pub horizon: f64,
    /// Max-abs change over the last doubling.
    pub residual: f64,
    pub doublings: u32,
    /// `max|L[rho_inf]|`.
    pub stationarity: f64,
}

struct Limit {
    vector: ComplexMatrix,
    horizon: f64,
    residual: f64,
    doublings: u32,
}

fn limit_by_squaring(generator: &ComplexMatrix, v0: &ComplexMatrix, tol: f64) -> Result<Limit> {
    let mut step = expm(&(generator * real(BASE_HORIZON)));
    let mut current = &step * v0;
    let mut horizon = BASE_HORIZON;
    let mut residual = f64::INFINITY;
    for doublings in 1..=MAX_DOUBLINGS {
        let next = &step * &current;
        residual = max_abs_diff(&next, &current);
        current = next;
        horizon *= 2.0;
        if residual < tol {
            return Ok(Limit { vector: current, horizon, residual, doublings });
        }
        step = &step * &step;
    }
    Err(Error::NonConvergence { residual, doublings: MAX_DOUBLINGS })
}

/// The state `lim exp(tL)[rho0]`, detected by propagator squaring.
pub fn asymptotic_state(
    superop: &Superoperator,
    rho0: &DensityMatrix,
    tol: f64,
) -> Result<ConvergenceResult> {
    if superop.is_degenerate() {
        return Err(Error::Degenerate(
            "asymptotics not guaranteed (need |b| < a and c > 0)".into(),
        ));
    }
    check_dim(superop, rho0.matrix())?;
    let limit = limit_by_squaring(superop.matrix(), &vec(rho0.matrix()), tol)?;
    let matrix = unvec(&limit.vector, superop.dim());
    let stationarity = max_abs(&superop.apply(&matrix));
    Ok(ConvergenceResult {
        state: DensityMatrix::from_numeric(matrix)?,
        horizon: limit.horizon,
        residual: limit.residual,
        doublings: limit.doublings,
        stationarity,
    })
}

pub fn asymptotic_state_default(superop: &Superoperator, rho0: &DensityMatrix) -> Result<ConvergenceResult> {
    asymptotic_state(superop, rho0, DEFAULT_TOL)
}

/// `lim exp(t L^)[x]` for an observable `x`.
pub fn heisenberg_limit(superop: &Superoperator, x: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    check_dim(superop, x)?;
    let limit = limit_by_squaring(&superop.heisenberg(), &vec(x), tol)?;
    Ok(unvec(&limit.vector, superop.dim()))
}

/// Trapezoid means of `exp(t L^)[x]` over `[0, T/2]` and `[0, T]` on one grid.
fn trapezoid_means(
    superop: &Superoperator,
    x0: &ComplexMatrix,
    horizon: f64,
    steps: usize,
) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if !(horizon > 0.0) || !horizon.is_finite() {
        return Err(Error::InvalidArgument(format!("horizon must be positive, got {horizon}")));
    }
    if steps < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 steps, got {steps}")));
    }
    check_dim(superop, x0)?;
    let steps = steps + steps % 2;
    let h = horizon / steps as f64;
    let step = expm(&(superop.heisenberg() * real(h)));
    let mut current = vec(x0);
    let mut sum = &current * real(0.5);
    let mut half = None;
    for k in 1..=steps {
        current = &step * &current;
        if k == steps / 2 {
            let mut s = sum.clone() + &current * real(0.5);
            s *= real(h / (horizon / 2.0));
            half = Some(s);
        }
        let w = if k == steps { 0.5 } else { 1.0 };
        sum += &current * real(w);
    }
    sum *= real(h / horizon);
    let d = superop.dim();
    Ok((unvec(&half.expect("steps >= 2"), d), unvec(&sum, d)))
}

/// `(1/T) int_0^T exp(t L^)[x0] dt` by the trapezoid rule.
pub fn cesaro_mean(
    superop: &Superoperator,
    x0: &ComplexMatrix,
    horizon: f64,
    steps: usize,
) -> Result<ComplexMatrix> {
    Ok(trapezoid_means(superop, x0, horizon, steps)?.1)
}

/// Time average of `exp(t L^)[x0]` with the leading `1/T` transient removed:
/// `2 A(T) - A(T/2)`, where `A` is the trapezoid mean.
///
/// The plain mean carries a bias of order `1/(gap T)` from the decaying part;
/// the combination cancels it together with the endpoint error of the
/// quadrature and leaves the mean over `[T/2, T]`.
pub fn time_average(
    superop: &Superoperator,
    x0: &ComplexMatrix,
    horizon: f64,
    steps: usize,
) -> Result<ComplexMatrix> {
    let (half, full) = trapezoid_means(superop, x0, horizon, steps)?;
    Ok(full * real(2.0) - half)
}

/// Dimension of the null space (singular values below `threshold`, relative
/// to the largest one when that exceeds 1).
pub fn kernel_dimension(superop: &Superoperator, threshold: f64) -> usize {
    let svd = SVD::new(superop.matrix().clone(), false, false);
    let scale = svd.singular_values.max().max(1.0);
    svd.singular_values.iter().filter(|&&s| s < threshold * scale).count()
}

/// Largest real part among the eigenvalues.
pub fn spectral_abscissa(superop: &Superoperator) -> f64 {
    let eig = superop
        .matrix()
        .clone()
        .schur()
        .eigenvalues()
        .expect("complex Schur form is triangular");
    eig.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max)
}

/// Choi matrix `sum_ij E_ij kron Phi(E_ij)` of a map given in vectorized form.
pub fn choi_matrix(map: &ComplexMatrix, dim: usize) -> ComplexMatrix {
    let mut choi = ComplexMatrix::zeros(dim * dim, dim * dim);
    for j in 0..dim {
        for i in 0..dim {
            let col = map.column(i + j * dim);
            let image = ComplexMatrix::from_column_slice(dim, dim, col.as_slice());
            choi.view_mut((i * dim, j * dim), (dim, dim)).copy_from(&image);
        }
    }
    choi
}
