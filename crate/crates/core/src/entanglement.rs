//! Two-qubit concurrence: the general construction, the closed forms for the
//! states met along the protocol, the alpha thresholds and `r*`.

use crate::algebra::{hermitian_eigen, kron, min_eigenvalue, pauli, ComplexMatrix, DensityMatrix, PSD_TOL};
use crate::asymptotic::{check_alpha, reduced_protocol_state, rho_alpha_matrix, two_qubit_alpha_asymptote};
use crate::error::{Error, Result};
use crate::generator::EnvironmentParams;

/// Eigenvalues of the state below this are treated as zero when factoring it.
const RANK_CUTOFF: f64 = 1e-14;
/// Printed location of the critical `r`.
pub const QUOTED_CRITICAL_R: f64 = 0.980965;
/// A concurrence above this counts as entangled.
pub const ENTANGLED_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Oracle,
    ClosedForm(&'static str),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConcurrenceBreakdown {
    pub value: f64,
    /// Square roots of the eigenvalues of `rho rho~`, descending.
    pub lambdas: [f64; 4],
    pub source: Source,
}

impl ConcurrenceBreakdown {
    /// `lambda_1 - lambda_2 - lambda_3 - lambda_4` before clamping at zero.
    pub fn margin(&self) -> f64 {
        let [l1, l2, l3, l4] = self.lambdas;
        l1 - l2 - l3 - l4
    }
}

fn spin_flip() -> ComplexMatrix {
    let y = pauli(2).expect("valid index");
    kron(&y, &y)
}

/// Concurrence of a two-qubit state.
///
/// With `rho = W W^dag`, the `lambda_i` are the singular values of
/// `W^T (sigma_2 kron sigma_2) W`; this equals the square roots of the
/// spectrum of `rho rho~` without squaring and re-rooting small numbers.
pub fn concurrence_oracle(rho: &DensityMatrix) -> Result<ConcurrenceBreakdown> {
    concurrence_of_matrix(rho.matrix())
}

/// As [`concurrence_oracle`] for an unvalidated 4x4 matrix.
pub fn concurrence_of_matrix(rho: &ComplexMatrix) -> Result<ConcurrenceBreakdown> {
    if rho.shape() != (4, 4) {
        return Err(Error::InvalidArgument(format!(
            "concurrence needs a 4x4 state, got {:?}",
            rho.shape()
        )));
    }
    let min = min_eigenvalue(rho);
    if min < PSD_TOL {
        return Err(Error::InvalidArgument(format!(
            "state is not positive semidefinite (min eigenvalue {min:e})"
        )));
    }
    let (vals, vecs) = hermitian_eigen(rho);
    let mut w = vecs;
    for (k, v) in vals.iter().enumerate() {
        let s = if *v < RANK_CUTOFF { 0.0 } else { v.sqrt() };
        w.column_mut(k).scale_mut(s);
    }
    let tau = w.transpose() * spin_flip() * &w;
    let mut sv: Vec<f64> = tau.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let lambdas = [sv[0], sv[1], sv[2], sv[3]];
    let [l1, l2, l3, l4] = lambdas;
    Ok(ConcurrenceBreakdown { value: (l1 - l2 - l3 - l4).max(0.0), lambdas, source: Source::Oracle })
}

pub fn is_entangled(c: f64) -> bool {
    c > ENTANGLED_TOL
}

/// `max{0, 1 - 6 alpha}`.
pub fn initial_concurrence(alpha: f64) -> f64 {
    (1.0 - 6.0 * alpha).max(0.0)
}

/// Printed magnitude for the two-qubit asymptote of the alpha family,
/// `1/2 - 3 alpha (3 - r^2)/(3 + r^2)`, clamped at zero.
pub fn closed_form_concurrence_2q(alpha: f64, r: f64) -> f64 {
    let r2 = r * r;
    (0.5 - 3.0 * alpha * (3.0 - r2) / (3.0 + r2)).max(0.0)
}

/// Printed concurrence of a two-qubit asymptote in terms of its singlet weight `p`:
/// `max{0, 2|4p - (1-r^2)| - 2(1-p)(1-r^2)} / (2(3+r^2))`.
pub fn singlet_weight_concurrence_2q(rho_p: f64, r: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&rho_p) {
        return Err(Error::InvalidArgument(format!("singlet weight must lie in [0, 1], got {rho_p}")));
    }
    let s = 1.0 - r * r;
    Ok((2.0 * (4.0 * rho_p - s).abs() - 2.0 * (1.0 - rho_p) * s).max(0.0) / (2.0 * (3.0 + r * r)))
}

/// Radicand entering the reduced-state concurrence and `alpha_pm`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Radicand {
    /// `delta(r) = (1 - r^2)((3 + 2r^2)^2 - 9 r^2)`.
    #[default]
    Delta,
    /// `(1 - r^2)(9 + 9 r^2 + 4 r^4)`, kept for comparison.
    Literal,
}

impl Radicand {
    pub fn value(self, r: f64) -> f64 {
        let r2 = r * r;
        match self {
            Radicand::Delta => (1.0 - r2) * ((3.0 + 2.0 * r2).powi(2) - 9.0 * r2),
            Radicand::Literal => (1.0 - r2) * (9.0 + 9.0 * r2 + 4.0 * r2 * r2),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Radicand::Delta => "delta",
            Radicand::Literal => "paper-literal",
        }
    }
}

impl std::str::FromStr for Radicand {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "delta" => Ok(Radicand::Delta),
            "paper-literal" => Ok(Radicand::Literal),
            other => Err(Error::InvalidArgument(format!(
                "unknown radicand {other:?} (expected delta or paper-literal)"
            ))),
        }
    }
}

pub fn delta(r: f64) -> f64 {
    Radicand::Delta.value(r)
}

/// `[|3(1+r^2) - 4 alpha (3+2r^2)| - 2 alpha sqrt(radicand)] / (3(1+r^2))`, clamped at zero.
pub fn reduced_state_concurrence(alpha: f64, r: f64, radicand: Radicand) -> f64 {
    let r2 = r * r;
    let lead = (3.0 * (1.0 + r2) - 4.0 * alpha * (3.0 + 2.0 * r2)).abs();
    ((lead - 2.0 * alpha * radicand.value(r).max(0.0).sqrt()) / (3.0 * (1.0 + r2))).max(0.0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThresholdSet {
    /// Below this the two-qubit asymptote of the alpha family is entangled.
    pub alpha_sep: f64,
    /// Above this the two-qubit asymptote is more entangled than the start.
    pub alpha_gain: f64,
    pub alpha_minus: f64,
    pub alpha_plus: f64,
    pub delta_r: f64,
}

fn check_r(r: f64) -> Result<()> {
    if r.is_finite() && r.abs() <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("r must satisfy |r| <= 1, got {r}")))
    }
}

pub fn alpha_sep(r: f64) -> f64 {
    let r2 = r * r;
    (3.0 + r2) / (6.0 * (3.0 - r2))
}

pub fn alpha_gain(r: f64) -> f64 {
    let r2 = r * r;
    (3.0 + r2) / (18.0 * (1.0 + r2))
}

/// `(alpha_minus, alpha_plus) = 3(1+r^2) / (4(3+2r^2) -/+ 2 sqrt(radicand))`.
pub fn alpha_pm(r: f64, radicand: Radicand) -> (f64, f64) {
    let r2 = r * r;
    let root = radicand.value(r).max(0.0).sqrt();
    let num = 3.0 * (1.0 + r2);
    let base = 4.0 * (3.0 + 2.0 * r2);
    (num / (base - 2.0 * root), num / (base + 2.0 * root))
}

pub fn thresholds(r: f64) -> Result<ThresholdSet> {
    check_r(r)?;
    let (alpha_minus, alpha_plus) = alpha_pm(r, Radicand::Delta);
    Ok(ThresholdSet {
        alpha_sep: alpha_sep(r),
        alpha_gain: alpha_gain(r),
        alpha_minus,
        alpha_plus,
        delta_r: delta(r),
    })
}

/// Bisection for a sign change of `f` on `[lo, hi]`.
pub fn bisect(mut lo: f64, mut hi: f64, tol: f64, f: impl Fn(f64) -> f64) -> Result<f64> {
    let (flo, fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::InvalidArgument(format!("no sign change on [{lo}, {hi}]")));
    }
    let lo_sign = flo.signum();
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if f(mid).signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Root of `alpha_minus(r) = 1/3` on `(0, 1)` under the chosen radicand.
pub fn critical_r(radicand: Radicand) -> f64 {
    bisect(0.0, 1.0, 1e-12, |r| alpha_pm(r, radicand).0 - 1.0 / 3.0)
        .expect("alpha_minus(0) = 1/2 and alpha_minus(1) = 3/10 bracket 1/3")
}

/// Where the oracle concurrence of the reduced protocol state at `alpha = 1/3`
/// turns positive, scanned on a grid of step `resolution`.
pub fn oracle_critical_r(resolution: f64) -> Result<f64> {
    let margin = |r: f64| -> Result<f64> {
        let red = reduced_protocol_state(1.0 / 3.0, &EnvironmentParams::from_r(r)?)?;
        Ok(concurrence_oracle(&red.state)?.value)
    };
    let steps = (1.0 / resolution).round() as usize;
    for k in 1..steps {
        let r = k as f64 * resolution;
        if is_entangled(margin(r)?) {
            return Ok(r);
        }
    }
    Err(Error::InvalidArgument("no crossing below r = 1".into()))
}

/// Sign-resolved crossing of the oracle margin at `alpha = 1/3`, by bisection.
pub fn oracle_critical_r_refined(tol: f64) -> Result<f64> {
    let margin = |r: f64| {
        let p = EnvironmentParams::from_r(r).expect("|r| < 1");
        let red = reduced_protocol_state(1.0 / 3.0, &p).expect("valid alpha");
        concurrence_oracle(&red.state).expect("valid state").margin()
    };
    bisect(0.9, 0.9999, tol, margin)
}

/// All the ways of locating `r*`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CriticalR {
    pub radicand: Radicand,
    pub root: f64,
    pub alpha_minus_at_root: f64,
    pub oracle_crossing: f64,
    pub quoted_value: f64,
}

impl CriticalR {
    pub fn compute(radicand: Radicand) -> Result<Self> {
        let root = critical_r(radicand);
        Ok(Self {
            radicand,
            root,
            alpha_minus_at_root: alpha_pm(root, radicand).0,
            oracle_crossing: oracle_critical_r_refined(1e-12)?,
            quoted_value: QUOTED_CRITICAL_R,
        })
    }
}

/// Location of the zero of the oracle concurrence of the two-qubit alpha asymptote.
pub fn asymptotic_2q_crossing(r: f64, tol: f64) -> Result<f64> {
    let p = EnvironmentParams::from_r(r)?;
    p.require_nondegenerate()?;
    bisect(0.0, 1.0 / 3.0, tol, |alpha| {
        let s = two_qubit_alpha_asymptote(alpha, &p).expect("valid alpha");
        concurrence_oracle(&s).expect("valid state").margin()
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    /// Closed-form concurrences, spelled `paper` on the command line.
    #[default]
    ClosedForm,
    Oracle,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::ClosedForm => "paper",
            Mode::Oracle => "oracle",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Mode::ClosedForm),
            "oracle" => Ok(Mode::Oracle),
            other => Err(Error::InvalidArgument(format!("unknown mode {other:?} (expected paper or oracle)"))),
        }
    }
}

/// Concurrences of the three states compared along the protocol.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProtocolConcurrences {
    pub initial: f64,
    pub asymptotic_2q: f64,
    pub reduced_3q: f64,
}

impl ProtocolConcurrences {
    pub fn compute(alpha: f64, r: f64, mode: Mode) -> Result<Self> {
        check_alpha(alpha)?;
        if !(r.abs() < 1.0) {
            return Err(Error::InvalidArgument(format!("r must satisfy |r| < 1, got {r}")));
        }
        match mode {
            Mode::ClosedForm => Ok(Self {
                initial: initial_concurrence(alpha),
                asymptotic_2q: closed_form_concurrence_2q(alpha, r),
                reduced_3q: reduced_state_concurrence(alpha, r, Radicand::Delta),
            }),
            Mode::Oracle => {
                let p = EnvironmentParams::from_r(r)?;
                Ok(Self {
                    initial: concurrence_of_matrix(&rho_alpha_matrix(alpha))?.value,
                    asymptotic_2q: concurrence_oracle(&two_qubit_alpha_asymptote(alpha, &p)?)?.value,
                    reduced_3q: concurrence_oracle(&reduced_protocol_state(alpha, &p)?.state)?.value,
                })
            }
        }
    }

    pub fn deltas(&self) -> Deltas {
        Deltas {
            delta: self.asymptotic_2q - self.initial,
            delta1: self.reduced_3q - self.initial,
            delta2: self.reduced_3q - self.asymptotic_2q,
        }
    }
}

/// Concurrence differences: asymptote vs start, reduced vs start, reduced vs asymptote.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Deltas {
    pub delta: f64,
    pub delta1: f64,
    pub delta2: f64,
}

pub fn delta_quantities(alpha: f64, r: f64, mode: Mode) -> Result<Deltas> {
    Ok(ProtocolConcurrences::compute(alpha, r, mode)?.deltas())
}

/// `C` of the two-qubit asymptote from its singlet weight, via the oracle.
pub fn oracle_concurrence_from_weight(rho_p: f64, r: f64) -> Result<f64> {
    let p = EnvironmentParams::from_r(r)?;
    let alpha_equiv = (1.0 - rho_p) / 3.0;
    let m = crate::asymptotic::two_qubit_map(&rho_alpha_matrix(alpha_equiv), &p);
    Ok(concurrence_of_matrix(&m)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{real, singlet_projector};
    use crate::random::{random_density_matrix, random_unitary, seeded_rng};

    fn maximally_mixed_two_qubit() -> ComplexMatrix {
        ComplexMatrix::identity(4, 4) * real(0.25)
    }

    fn c(m: &ComplexMatrix) -> f64 {
        concurrence_of_matrix(m).unwrap().value
    }

    #[test]
    fn oracle_reference_states() {
        assert!((c(&singlet_projector()) - 1.0).abs() < 1e-14);
        assert!(c(&maximally_mixed_two_qubit()).abs() < 1e-14);
        assert!((c(&rho_alpha_matrix(0.1)) - 0.4).abs() < 1e-14);
        for alpha in [0.0, 0.05, 0.1, 1.0 / 6.0, 0.2, 1.0 / 3.0] {
            assert!((c(&rho_alpha_matrix(alpha)) - initial_concurrence(alpha)).abs() < 1e-13);
        }
    }

    #[test]
    fn oracle_rejects_non_states() {
        let mut m = maximally_mixed_two_qubit();
        m[(0, 0)] = real(-0.1);
        assert!(concurrence_of_matrix(&m).is_err());
        assert!(concurrence_of_matrix(&ComplexMatrix::identity(2, 2)).is_err());
    }

    #[test]
    fn oracle_local_unitary_invariance_and_products() {
        let mut rng = seeded_rng(50);
        for _ in 0..20 {
            let rho = random_density_matrix(2, &mut rng).into_matrix();
            let u = kron(&random_unitary(2, &mut rng), &random_unitary(2, &mut rng));
            let rotated = &u * &rho * u.adjoint();
            assert!((c(&rho) - c(&rotated)).abs() < 1e-10);
            let a = random_density_matrix(1, &mut rng).into_matrix();
            let b = random_density_matrix(1, &mut rng).into_matrix();
            assert!(c(&kron(&a, &b)) < 1e-10);
        }
    }

    #[test]
    fn printed_asymptotic_magnitude() {
        assert_eq!(closed_form_concurrence_2q(0.0, 0.3), 0.5);
        for r in [0.0, 0.5, 0.9] {
            assert!(closed_form_concurrence_2q(alpha_sep(r), r).abs() < 1e-15);
        }
        let p = EnvironmentParams::from_r(0.0).unwrap();
        let oracle = concurrence_oracle(&two_qubit_alpha_asymptote(0.0, &p).unwrap()).unwrap().value;
        assert!((oracle - 1.0).abs() < 1e-12);
    }

    #[test]
    fn printed_general_formula() {
        assert!((singlet_weight_concurrence_2q(1.0, 0.4).unwrap() - 1.0).abs() < 1e-15);
        let r: f64 = 0.6;
        assert_eq!(singlet_weight_concurrence_2q((1.0 - r * r) / 4.0, r).unwrap(), 0.0);
        let alpha = 0.1;
        let printed = singlet_weight_concurrence_2q(1.0 - 3.0 * alpha, 0.0).unwrap();
        assert!((printed - (1.0 - 5.0 * alpha)).abs() < 1e-14);
        let oracle = oracle_concurrence_from_weight(1.0 - 3.0 * alpha, 0.0).unwrap();
        assert!((oracle - (1.0 - 6.0 * alpha)).abs() < 1e-12);
        assert!(singlet_weight_concurrence_2q(1.5, 0.0).is_err());
    }

    #[test]
    fn reduced_concurrence_matches_oracle() {
        let mut worst: f64 = 0.0;
        for i in 0..50 {
            for j in 0..50 {
                let alpha = i as f64 / 49.0 / 3.0;
                let r = j as f64 / 49.0 * 0.99;
                let red = reduced_protocol_state(alpha, &EnvironmentParams::from_r(r).unwrap()).unwrap();
                let oracle = concurrence_oracle(&red.state).unwrap().value;
                worst = worst.max((oracle - reduced_state_concurrence(alpha, r, Radicand::Delta)).abs());
            }
        }
        assert!(worst < 1e-10, "{worst:e}");
    }

    #[test]
    fn reduced_concurrence_zeros() {
        assert!((reduced_state_concurrence(0.0, 0.7, Radicand::Delta) - 1.0).abs() < 1e-15);
        for r in [0.2, 0.6, 0.99] {
            let t = thresholds(r).unwrap();
            assert!(reduced_state_concurrence(t.alpha_plus, r, Radicand::Delta) < 1e-14);
            assert!(reduced_state_concurrence(t.alpha_minus, r, Radicand::Delta) < 1e-14);
        }
    }

    #[test]
    fn threshold_endpoints_and_orderings() {
        let t0 = thresholds(0.0).unwrap();
        assert!((t0.alpha_sep - 1.0 / 6.0).abs() < 1e-15);
        assert!((t0.alpha_gain - 1.0 / 6.0).abs() < 1e-15);
        assert!((t0.alpha_minus - 0.5).abs() < 1e-15);
        assert!((t0.alpha_plus - 1.0 / 6.0).abs() < 1e-15);
        let t1 = thresholds(1.0).unwrap();
        assert!((t1.alpha_sep - 1.0 / 3.0).abs() < 1e-15);
        assert!((t1.alpha_gain - 1.0 / 9.0).abs() < 1e-15);
        assert!((t1.alpha_minus - 0.3).abs() < 1e-15);
        assert!((t1.alpha_plus - 0.3).abs() < 1e-15);
        let mut prev = t0;
        for k in 1..=100 {
            let t = thresholds(k as f64 / 100.0).unwrap();
            assert!(t.alpha_sep > prev.alpha_sep && t.alpha_plus > prev.alpha_plus);
            assert!(t.alpha_gain < prev.alpha_gain && t.alpha_minus < prev.alpha_minus);
            assert!(t.alpha_plus <= t.alpha_sep + 1e-15);
            assert!(t.alpha_gain <= 1.0 / 6.0 && 1.0 / 6.0 <= t.alpha_sep);
            prev = t;
        }
        assert!(thresholds(1.5).is_err());
    }

    #[test]
    fn critical_r_values() {
        let root = critical_r(Radicand::Delta);
        assert!(root > 0.9 && root < 1.0);
        assert!((alpha_pm(root, Radicand::Delta).0 - 1.0 / 3.0).abs() < 1e-9);
        let oracle = oracle_critical_r_refined(1e-12).unwrap();
        assert!((oracle - root).abs() < 1e-8);
        assert!((oracle_critical_r(1e-4).unwrap() - root).abs() <= 1e-4);
        let literal = critical_r(Radicand::Literal);
        assert!((literal - root).abs() > 1e-3);
        assert!((QUOTED_CRITICAL_R - root).abs() > 1e-3);
    }

    #[test]
    fn crossing_of_two_qubit_asymptote() {
        for r in [0.0, 0.5, 0.9] {
            assert!((asymptotic_2q_crossing(r, 1e-12).unwrap() - alpha_sep(r)).abs() < 1e-8);
        }
    }

    #[test]
    fn closed_form_mode_deltas() {
        for r in [0.0, 0.4, 0.95] {
            let d = delta_quantities(alpha_gain(r), r, Mode::ClosedForm).unwrap();
            assert!(d.delta.abs() < 1e-14);
            let r2 = r * r;
            let d = delta_quantities(0.0, r, Mode::ClosedForm).unwrap();
            assert!((d.delta - (9.0 * 0.0 * (1.0 + r2) / (3.0 + r2) - 0.5)).abs() < 1e-15);
        }
        for alpha in [0.0, 0.1, 0.3] {
            let d = delta_quantities(alpha, 0.0, Mode::Oracle).unwrap();
            assert!(d.delta.abs() < 1e-12);
        }
    }

    #[test]
    fn radicand_parsing() {
        assert_eq!("delta".parse::<Radicand>().unwrap(), Radicand::Delta);
        assert_eq!("paper-literal".parse::<Radicand>().unwrap(), Radicand::Literal);
        assert!("x".parse::<Radicand>().is_err());
        assert_eq!("oracle".parse::<Mode>().unwrap(), Mode::Oracle);
    }
}
