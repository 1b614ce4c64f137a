//! Closed-form asymptotic maps for one, two and three qubits.

use nalgebra::{Matrix3, Vector3};

use crate::algebra::{
    embed_single_qubit, identity, kron, max_abs_diff, pair_singlet, partial_trace_matrix, pauli,
    real, singlet_projector, trace_of_product, ComplexMatrix, DensityMatrix, PAIRS,
};
use crate::dynamics::{asymptotic_state, vectorize};
use crate::error::{Error, Result};
use crate::generator::{build_generator, stationary_single_qubit_matrix, tensor_power, EnvironmentParams};

/// Largest admissible weight of the identity in the alpha family.
pub const ALPHA_MAX: f64 = 1.0 / 3.0;

/// One-qubit stationary state together with the Bloch drift
/// `dr/dt = -2 (D r - z)` it solves.
#[derive(Clone, Debug)]
pub struct BlochStationary {
    pub state: DensityMatrix,
    pub drift: Matrix3<f64>,
    pub z: Vector3<f64>,
    pub bloch: Vector3<f64>,
}

pub fn bloch_drift(params: &EnvironmentParams) -> (Matrix3<f64>, Vector3<f64>) {
    let EnvironmentParams { a, b, c, omega } = *params;
    let drift = Matrix3::new(a + c, omega / 2.0, 0.0, -omega / 2.0, a + c, 0.0, 0.0, 0.0, 2.0 * a);
    (drift, Vector3::new(0.0, 0.0, 2.0 * b))
}

/// Bloch vector `(Tr rho sigma_1, Tr rho sigma_2, Tr rho sigma_3)` of a qubit.
pub fn bloch_vector(rho: &ComplexMatrix) -> Vector3<f64> {
    let comp = |i| trace_of_product(rho, &pauli(i).expect("valid index")).re;
    Vector3::new(comp(1), comp(2), comp(3))
}

pub fn from_bloch(r: &Vector3<f64>) -> ComplexMatrix {
    let mut m = identity(2);
    for i in 0..3 {
        m += pauli(i + 1).expect("valid index") * real(r[i]);
    }
    m * real(0.5)
}

pub fn one_qubit_stationary(params: &EnvironmentParams) -> Result<BlochStationary> {
    params.require_nondegenerate()?;
    let (drift, z) = bloch_drift(params);
    let bloch = drift
        .lu()
        .solve(&z)
        .ok_or_else(|| Error::Degenerate("singular Bloch drift".into()))?;
    Ok(BlochStationary { state: DensityMatrix::from_numeric(from_bloch(&bloch))?, drift, z, bloch })
}

/// The Werner-type family `alpha 1 + (1 - 4 alpha) P` on two qubits, or that
/// state with a depolarized third qubit appended.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlphaFamilyState {
    pub alpha: f64,
    pub qubit_count: usize,
}

impl AlphaFamilyState {
    pub fn new(alpha: f64, qubit_count: usize) -> Result<Self> {
        check_alpha(alpha)?;
        if !(2..=3).contains(&qubit_count) {
            return Err(Error::InvalidArgument(format!(
                "alpha family lives on 2 or 3 qubits, got {qubit_count}"
            )));
        }
        Ok(Self { alpha, qubit_count })
    }

    pub fn matrix(&self) -> ComplexMatrix {
        let two = rho_alpha_matrix(self.alpha);
        if self.qubit_count == 3 {
            kron(&two, &(identity(2) * real(0.5)))
        } else {
            two
        }
    }

    pub fn state(&self) -> DensityMatrix {
        DensityMatrix::new(self.matrix()).expect("alpha family is a state on its range")
    }
}

pub fn check_alpha(alpha: f64) -> Result<()> {
    if (0.0..=ALPHA_MAX + 1e-15).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("alpha must lie in [0, 1/3], got {alpha}")))
    }
}

/// `alpha 1 + (1 - 4 alpha) P` without range checks.
pub fn rho_alpha_matrix(alpha: f64) -> ComplexMatrix {
    identity(4) * real(alpha) + singlet_projector() * real(1.0 - 4.0 * alpha)
}

pub fn rho_alpha(alpha: f64) -> Result<DensityMatrix> {
    Ok(AlphaFamilyState::new(alpha, 2)?.state())
}

/// Asymptotic image of an arbitrary two-qubit state:
/// `4(1-p)/(3+r^2) rho_inf^2 + (4p - 1 + r^2)/(3+r^2) P` with `p = Tr(rho P)`.
pub fn two_qubit_conditional_expectation(
    rho: &DensityMatrix,
    params: &EnvironmentParams,
) -> Result<DensityMatrix> {
    params.require_nondegenerate()?;
    if rho.qubit_count() != 2 {
        return Err(Error::InvalidArgument(format!(
            "expected a two-qubit state, got {} qubits",
            rho.qubit_count()
        )));
    }
    Ok(DensityMatrix::from_numeric(two_qubit_map(rho.matrix(), params))?)
}

/// The same linear map on any 4x4 operator.
pub fn two_qubit_map(x: &ComplexMatrix, params: &EnvironmentParams) -> ComplexMatrix {
    let r2 = params.r_infinity().powi(2);
    let p = singlet_projector();
    let weight = trace_of_product(x, &p);
    let tr = x.trace();
    let product = tensor_power(&stationary_single_qubit_matrix(params), 2);
    product * ((tr - weight) * (4.0 / (3.0 + r2))) + p * ((weight * 4.0 - tr * (1.0 - r2)) / (3.0 + r2))
}

/// Asymptote of the alpha family: `12 alpha/(3+r^2) rho_inf^2 + (3 + r^2 - 12 alpha)/(3+r^2) P`.
pub fn two_qubit_alpha_asymptote(alpha: f64, params: &EnvironmentParams) -> Result<DensityMatrix> {
    check_alpha(alpha)?;
    params.require_nondegenerate()?;
    let r2 = params.r_infinity().powi(2);
    let product = tensor_power(&stationary_single_qubit_matrix(params), 2);
    let m = product * real(12.0 * alpha / (3.0 + r2))
        + singlet_projector() * real((3.0 + r2 - 12.0 * alpha) / (3.0 + r2));
    DensityMatrix::from_numeric(m)
}

/// `P^(ab) rho_inf^(c)`: singlet on `a, b` and the one-qubit fixed point on the remaining qubit.
pub fn pair_singlet_with_stationary(a: usize, b: usize, params: &EnvironmentParams) -> ComplexMatrix {
    let c = 6 - a - b;
    let single = stationary_single_qubit_matrix(params);
    pair_singlet(a, b, 3) * embed_single_qubit(&single, c, 3).expect("qubit in range")
}

fn pair_sum(params: &EnvironmentParams) -> ComplexMatrix {
    PAIRS
        .iter()
        .map(|&(a, b)| pair_singlet_with_stationary(a, b, params))
        .fold(ComplexMatrix::zeros(8, 8), |acc, m| acc + m)
}

/// `E[1] = 8/(1+r^2) rho_inf^3 + 8 r^2/(3(1+r^2)) sum_{a<b} P^(ab) rho_inf^(c)`.
pub fn three_qubit_map_of_identity(params: &EnvironmentParams) -> Result<ComplexMatrix> {
    params.require_nondegenerate()?;
    let r2 = params.r_infinity().powi(2);
    let product = tensor_power(&stationary_single_qubit_matrix(params), 3);
    Ok(product * real(8.0 / (1.0 + r2)) + pair_sum(params) * real(8.0 * r2 / (3.0 * (1.0 + r2))))
}

/// `E[P^(ab)] = 2 P^(ab) rho_inf^(c)`.
pub fn three_qubit_map_of_pair_singlet(
    a: usize,
    b: usize,
    params: &EnvironmentParams,
) -> Result<ComplexMatrix> {
    params.require_nondegenerate()?;
    if !PAIRS.contains(&(a, b)) {
        return Err(Error::InvalidArgument(format!("pair ({a},{b}) must satisfy 1 <= a < b <= 3")));
    }
    Ok(pair_singlet_with_stationary(a, b, params) * real(2.0))
}

/// Coordinates `(l, m)` of `x = l 1 + m P^(12)` with the fit residual.
pub fn span_coordinates(x: &ComplexMatrix) -> (f64, f64, f64) {
    let p = pair_singlet(1, 2, 3);
    // Gram matrix of {1, P12}: [[8, 2], [2, 2]]
    let t1 = x.trace().re;
    let tp = trace_of_product(x, &p).re;
    let m = (4.0 * tp - t1) / 6.0;
    let l = (t1 - 2.0 * m) / 8.0;
    let fit = identity(8) * real(l) + p * real(m);
    (l, m, max_abs_diff(x, &fit))
}

/// Closed-form three-qubit asymptotic map on `span{1, P^(12)}`.
pub fn three_qubit_analytic_map(x: &ComplexMatrix, params: &EnvironmentParams) -> Result<ComplexMatrix> {
    if x.shape() != (8, 8) {
        return Err(Error::InvalidArgument(format!("expected 8x8 operator, got {:?}", x.shape())));
    }
    let (l, m, residual) = span_coordinates(x);
    if residual > 1e-12 {
        return Err(Error::OutsideAnalyticSpan(format!(
            "distance {residual:e} from span{{1, P12}}"
        )));
    }
    Ok(three_qubit_map_of_identity(params)? * real(l) + three_qubit_map_of_pair_singlet(1, 2, params)? * real(m))
}

/// Which path produced a three-qubit asymptote.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Analytic,
    Numeric,
}

/// Three-qubit asymptote, closed form when available and propagated otherwise.
pub fn three_qubit_asymptote(
    rho: &DensityMatrix,
    params: &EnvironmentParams,
    tol: f64,
) -> Result<(DensityMatrix, Route)> {
    if rho.qubit_count() != 3 {
        return Err(Error::InvalidArgument(format!(
            "expected a three-qubit state, got {} qubits",
            rho.qubit_count()
        )));
    }
    match three_qubit_analytic_map(rho.matrix(), params) {
        Ok(m) => Ok((DensityMatrix::from_numeric(m)?, Route::Analytic)),
        Err(Error::OutsideAnalyticSpan(_)) => {
            let superop = vectorize(&build_generator(params, 3)?);
            Ok((asymptotic_state(&superop, rho, tol)?.state, Route::Numeric))
        }
        Err(e) => Err(e),
    }
}

/// Asymptote of `rho(alpha) kron 1/2`.
pub fn three_qubit_protocol_asymptote(alpha: f64, params: &EnvironmentParams) -> Result<DensityMatrix> {
    check_alpha(alpha)?;
    params.require_nondegenerate()?;
    let r2 = params.r_infinity().powi(2);
    let product = tensor_power(&stationary_single_qubit_matrix(params), 3);
    let m = product * real(4.0 * alpha / (1.0 + r2))
        + pair_sum(params) * real(4.0 * alpha * r2 / (3.0 * (1.0 + r2)))
        + pair_singlet_with_stationary(1, 2, params) * real(1.0 - 4.0 * alpha);
    DensityMatrix::from_numeric(m)
}

/// Reduced two-qubit asymptote of the protocol and its X-shaped entries,
/// `state = [[x+,0,0,0],[0,y,-u,0],[0,-u,y,0],[0,0,0,x-]] / (1 + r^2)`.
#[derive(Clone, Debug)]
pub struct ReducedProtocolState {
    pub state: DensityMatrix,
    pub x_plus: f64,
    pub x_minus: f64,
    pub y: f64,
    pub u: f64,
    /// Max-abs gap between the assembled state and the X-form entries.
    pub entry_residual: f64,
}

impl ReducedProtocolState {
    pub fn x_form(&self, r: f64) -> ComplexMatrix {
        x_form_matrix(self.x_plus, self.x_minus, self.y, self.u, r)
    }
}

pub fn x_form_entries(alpha: f64, r: f64) -> (f64, f64, f64, f64) {
    let r2 = r * r;
    let x = |s: f64| alpha / 3.0 * (1.0 + s * r) * (3.0 * (1.0 + s * r) + 2.0 * r2);
    let y = (3.0 * (1.0 + r2) - 2.0 * alpha * (3.0 + 5.0 * r2)) / 6.0;
    let u = (3.0 * (1.0 + r2) - 4.0 * alpha * (3.0 + 2.0 * r2)) / 6.0;
    (x(1.0), x(-1.0), y, u)
}

pub fn x_form_matrix(x_plus: f64, x_minus: f64, y: f64, u: f64, r: f64) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4, 4);
    m[(0, 0)] = real(x_plus);
    m[(1, 1)] = real(y);
    m[(2, 2)] = real(y);
    m[(1, 2)] = real(-u);
    m[(2, 1)] = real(-u);
    m[(3, 3)] = real(x_minus);
    m / real(1.0 + r * r)
}

/// `4a/(1+r^2) rho_inf^2 + (4a r^2 + 3(1-4a)(1+r^2))/(3(1+r^2)) P
///  + 2a r^2/(3(1+r^2)) (1 kron rho_inf + rho_inf kron 1)`.
pub fn reduced_protocol_state(alpha: f64, params: &EnvironmentParams) -> Result<ReducedProtocolState> {
    check_alpha(alpha)?;
    params.require_nondegenerate()?;
    let r = params.r_infinity();
    let r2 = r * r;
    let single = stationary_single_qubit_matrix(params);
    let m = kron(&single, &single) * real(4.0 * alpha / (1.0 + r2))
        + singlet_projector()
            * real((4.0 * alpha * r2 + 3.0 * (1.0 - 4.0 * alpha) * (1.0 + r2)) / (3.0 * (1.0 + r2)))
        + (kron(&identity(2), &single) + kron(&single, &identity(2)))
            * real(2.0 * alpha * r2 / (3.0 * (1.0 + r2)));
    let (x_plus, x_minus, y, u) = x_form_entries(alpha, r);
    let entry_residual = max_abs_diff(&m, &x_form_matrix(x_plus, x_minus, y, u, r));
    Ok(ReducedProtocolState {
        state: DensityMatrix::from_numeric(m)?,
        x_plus,
        x_minus,
        y,
        u,
        entry_residual,
    })
}

/// Partial trace over the ancilla of the closed-form three-qubit asymptote.
pub fn reduced_from_three_qubit(alpha: f64, params: &EnvironmentParams) -> Result<ComplexMatrix> {
    partial_trace_matrix(three_qubit_protocol_asymptote(alpha, params)?.matrix(), &[1, 2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{invariant_operators, max_abs};
    use crate::dynamics::asymptotic_state;
    use crate::random::{random_density_matrix, seeded_rng};

    fn params(b: f64) -> EnvironmentParams {
        EnvironmentParams::new(1.0, b, 1.0, 1.0).unwrap()
    }

    #[test]
    fn one_qubit_fixed_point() {
        let s = one_qubit_stationary(&params(0.0)).unwrap();
        assert!(max_abs_diff(s.state.matrix(), &(identity(2) * real(0.5))) < 1e-15);
        let s = one_qubit_stationary(&params(0.5)).unwrap();
        assert!((s.bloch - Vector3::new(0.0, 0.0, 0.5)).amax() < 1e-15);
        let g = build_generator(&params(0.5), 1).unwrap();
        assert!(max_abs(&g.apply(s.state.matrix())) < 1e-12);
        assert!(one_qubit_stationary(&EnvironmentParams::new(1.0, 0.2, 0.0, 1.0).unwrap()).is_err());
    }

    #[test]
    fn bloch_drift_agrees_with_generator() {
        let p = EnvironmentParams::new(1.0, 0.3, 0.6, 1.7).unwrap();
        let g = build_generator(&p, 1).unwrap();
        let (drift, z) = bloch_drift(&p);
        let r = Vector3::new(0.2, -0.4, 0.1);
        let rate = bloch_vector(&g.apply(&from_bloch(&r)));
        assert!((rate + (drift * r - z) * 2.0).amax() < 1e-14);
    }

    #[test]
    fn two_qubit_map_fixed_points() {
        let p = params(0.7);
        let singlet = DensityMatrix::new(singlet_projector()).unwrap();
        let out = two_qubit_conditional_expectation(&singlet, &p).unwrap();
        assert!(max_abs_diff(out.matrix(), &singlet_projector()) < 1e-15);
        let prod = DensityMatrix::new(tensor_power(&stationary_single_qubit_matrix(&p), 2)).unwrap();
        let out = two_qubit_conditional_expectation(&prod, &p).unwrap();
        assert!(max_abs_diff(out.matrix(), prod.matrix()) < 1e-14);
    }

    #[test]
    fn two_qubit_map_on_alpha_family() {
        for b in [0.0, 0.5, -0.9] {
            let p = params(b);
            for alpha in [0.0, 0.1, 0.25, ALPHA_MAX] {
                let general = two_qubit_conditional_expectation(&rho_alpha(alpha).unwrap(), &p).unwrap();
                let special = two_qubit_alpha_asymptote(alpha, &p).unwrap();
                assert!(max_abs_diff(general.matrix(), special.matrix()) < 1e-14);
            }
        }
    }

    #[test]
    fn two_qubit_map_is_idempotent_and_linear() {
        let p = params(0.6);
        let mut rng = seeded_rng(31);
        for _ in 0..50 {
            let rho = random_density_matrix(2, &mut rng);
            let once = two_qubit_map(rho.matrix(), &p);
            assert!(max_abs_diff(&two_qubit_map(&once, &p), &once) < 1e-12);
            let sigma = random_density_matrix(2, &mut rng);
            let mix = rho.matrix() * real(0.3) + sigma.matrix() * real(0.7);
            let lhs = two_qubit_map(&mix, &p);
            let rhs = once * real(0.3) + two_qubit_map(sigma.matrix(), &p) * real(0.7);
            assert!(max_abs_diff(&lhs, &rhs) < 1e-12);
        }
    }

    #[test]
    fn numeric_two_qubit_asymptote_matches() {
        let p = EnvironmentParams::new(1.0, 0.5, 1.0, 1.0).unwrap();
        let s = vectorize(&build_generator(&p, 2).unwrap());
        let out = asymptotic_state(&s, &rho_alpha(0.1).unwrap(), 1e-12).unwrap();
        let closed = two_qubit_alpha_asymptote(0.1, &p).unwrap();
        assert!(max_abs_diff(out.state.matrix(), closed.matrix()) < 1e-8);
    }

    #[test]
    fn map_of_identity() {
        let e = three_qubit_map_of_identity(&params(0.0)).unwrap();
        assert!(max_abs_diff(&e, &identity(8)) < 1e-14);
        let p = params(0.8);
        let e = three_qubit_map_of_identity(&p).unwrap();
        assert!((e.trace().re - 8.0).abs() < 1e-13);
        let s = vectorize(&build_generator(&p, 3).unwrap());
        let num = asymptotic_state(&s, &DensityMatrix::maximally_mixed(3), 1e-12).unwrap();
        assert!(max_abs_diff(&(num.state.matrix() * real(8.0)), &e) < 1e-8);
    }

    #[test]
    fn protocol_asymptote() {
        for b in [0.0, 0.4, -0.99] {
            let p = params(b);
            for alpha in [0.0, 0.12, ALPHA_MAX] {
                let s = three_qubit_protocol_asymptote(alpha, &p).unwrap();
                assert!((s.matrix().trace().re - 1.0).abs() < 1e-14);
            }
            let zero = three_qubit_protocol_asymptote(0.0, &p).unwrap();
            let expected = kron(&singlet_projector(), &stationary_single_qubit_matrix(&p));
            assert!(max_abs_diff(zero.matrix(), &expected) < 1e-15);
        }
        let p = params(0.9);
        let s = vectorize(&build_generator(&p, 3).unwrap());
        let rho0 = AlphaFamilyState::new(0.2, 3).unwrap().state();
        let num = asymptotic_state(&s, &rho0, 1e-12).unwrap();
        let closed = three_qubit_protocol_asymptote(0.2, &p).unwrap();
        assert!(max_abs_diff(num.state.matrix(), closed.matrix()) < 1e-8);
        assert!(three_qubit_protocol_asymptote(0.4, &p).is_err());
    }

    #[test]
    fn analytic_map_agrees_with_protocol_form_and_refuses_other_inputs() {
        let p = params(0.3);
        let rho0 = AlphaFamilyState::new(0.15, 3).unwrap().matrix();
        let viaspan = three_qubit_analytic_map(&rho0, &p).unwrap();
        let direct = three_qubit_protocol_asymptote(0.15, &p).unwrap();
        assert!(max_abs_diff(&viaspan, direct.matrix()) < 1e-14);
        let mut rng = seeded_rng(40);
        let other = random_density_matrix(3, &mut rng);
        assert!(matches!(
            three_qubit_analytic_map(other.matrix(), &p),
            Err(Error::OutsideAnalyticSpan(_))
        ));
        let (_, route) = three_qubit_asymptote(&other, &p, 1e-10).unwrap();
        assert_eq!(route, Route::Numeric);
    }

    #[test]
    fn reduced_state() {
        for b in [0.0, 0.5, -0.7, 0.99] {
            let p = params(b);
            for alpha in [0.0, 0.1, 0.3, ALPHA_MAX] {
                let red = reduced_protocol_state(alpha, &p).unwrap();
                assert!(red.entry_residual < 1e-12);
                let traced = reduced_from_three_qubit(alpha, &p).unwrap();
                assert!(max_abs_diff(&traced, red.state.matrix()) < 1e-12);
                let m = red.state.matrix();
                for (i, j) in [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)] {
                    assert_eq!(m[(i, j)].norm(), 0.0);
                    assert_eq!(m[(j, i)].norm(), 0.0);
                }
            }
            let red = reduced_protocol_state(0.0, &p).unwrap();
            assert!(max_abs_diff(red.state.matrix(), &singlet_projector()) < 1e-15);
        }
    }

    #[test]
    fn pair_singlet_images() {
        let p = params(0.6);
        let s = vectorize(&build_generator(&p, 3).unwrap());
        for (a, b) in PAIRS {
            let rho0 = DensityMatrix::new(pair_singlet(a, b, 3) * real(0.5)).unwrap();
            let num = asymptotic_state(&s, &rho0, 1e-12).unwrap();
            let closed = three_qubit_map_of_pair_singlet(a, b, &p).unwrap() * real(0.5);
            assert!(max_abs_diff(num.state.matrix(), &closed) < 1e-8);
            assert!(max_abs_diff(&closed, rho0.matrix()) > 1e-3);
        }
    }

    #[test]
    fn singlet_weight_of_stationary_product() {
        let p = params(0.45);
        let r2 = p.r_infinity().powi(2);
        let prod = tensor_power(&stationary_single_qubit_matrix(&p), 3);
        let proj = invariant_operators().p;
        let rhs = pair_sum(&p) * real((1.0 - r2) / 6.0);
        assert!(max_abs_diff(&(&proj * &prod), &rhs) < 1e-12);
        assert!(max_abs_diff(&(&prod * &proj), &rhs) < 1e-12);
    }
}
