//! The ancilla protocol: append a depolarized qubit to `rho(alpha)`, let the
//! three qubits relax, trace the ancilla out, and compare concurrences.

use rayon::prelude::*;

use crate::algebra::{max_abs_diff, partial_trace_matrix, ComplexMatrix, DensityMatrix, DEFAULT_TOL};
use crate::asymptotic::{
    check_alpha, reduced_protocol_state, rho_alpha_matrix, two_qubit_alpha_asymptote,
    AlphaFamilyState, ALPHA_MAX,
};
use crate::dynamics::{asymptotic_state, vectorize};
use crate::entanglement::{
    alpha_gain, alpha_pm, alpha_sep, concurrence_of_matrix, concurrence_oracle, is_entangled,
    Deltas, Mode, ProtocolConcurrences, Radicand,
};
use crate::error::{Error, Result};
use crate::generator::{build_generator, EnvironmentParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Method {
    #[default]
    Analytic,
    Numeric,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Analytic => "analytic",
            Method::Numeric => "numeric",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "analytic" => Ok(Method::Analytic),
            "numeric" => Ok(Method::Numeric),
            other => Err(Error::InvalidArgument(format!(
                "unknown method {other:?} (expected analytic or numeric)"
            ))),
        }
    }
}

/// Entanglement regime of one grid point, from which of the initial state,
/// the two-qubit asymptote and the reduced three-qubit asymptote are entangled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `alpha = 0`: the singlet survives both routes.
    SingletPreserved,
    /// Entangled start and asymptote, with less entanglement at the end.
    EntangledLoss,
    /// Entangled start and asymptote, with more entanglement at the end.
    EntangledGain,
    /// Entangled start, separable asymptote.
    EntanglementLost,
    /// Separable start, entangled asymptote.
    Dissipative,
    /// Start and asymptote separable, reduced three-qubit asymptote entangled.
    AncillaActivated,
    /// Nothing entangled.
    Separable,
}

impl Regime {
    pub const ALL: [Regime; 7] = [
        Regime::SingletPreserved,
        Regime::EntangledLoss,
        Regime::EntangledGain,
        Regime::EntanglementLost,
        Regime::Dissipative,
        Regime::AncillaActivated,
        Regime::Separable,
    ];

    pub fn classify(alpha: f64, c: &ProtocolConcurrences) -> Self {
        if alpha == 0.0 {
            return Regime::SingletPreserved;
        }
        match (is_entangled(c.initial), is_entangled(c.asymptotic_2q)) {
            (true, true) if c.asymptotic_2q > c.initial => Regime::EntangledGain,
            (true, true) => Regime::EntangledLoss,
            (true, false) => Regime::EntanglementLost,
            (false, true) => Regime::Dissipative,
            (false, false) if is_entangled(c.reduced_3q) => Regime::AncillaActivated,
            (false, false) => Regime::Separable,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Regime::SingletPreserved => "singlet-preserved",
            Regime::EntangledLoss => "entangled-loss",
            Regime::EntangledGain => "entangled-gain",
            Regime::EntanglementLost => "entanglement-lost",
            Regime::Dissipative => "dissipative",
            Regime::AncillaActivated => "ancilla-activated",
            Regime::Separable => "separable",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Everything computed at one `(r, alpha)` point.
#[derive(Clone, Debug)]
pub struct ProtocolRecord {
    pub r: f64,
    pub alpha: f64,
    pub method: Method,
    pub oracle: ProtocolConcurrences,
    pub closed_form: ProtocolConcurrences,
    pub deltas_oracle: Deltas,
    pub deltas_closed_form: Deltas,
    /// Classified from the oracle concurrences.
    pub regime: Regime,
    /// Classified from the closed-form concurrences.
    pub closed_form_regime: Regime,
    /// Numeric method: max-abs gap between propagated and closed-form
    /// reduced states. Analytic method: gap between the traced three-qubit
    /// closed form and the two-qubit closed form.
    pub residual: f64,
    pub asymptote_2q: ComplexMatrix,
    pub asymptote_3q: ComplexMatrix,
    pub reduced: ComplexMatrix,
}

impl ProtocolRecord {
    pub fn deltas(&self, mode: Mode) -> Deltas {
        match mode {
            Mode::ClosedForm => self.deltas_closed_form,
            Mode::Oracle => self.deltas_oracle,
        }
    }
}

/// Rates used for a grid point: `a = 1`, `b = r`, `c = 1`, `omega = 1`.
pub fn params_for_r(r: f64) -> Result<EnvironmentParams> {
    let p = EnvironmentParams::from_r(r)?;
    p.require_nondegenerate()?;
    Ok(p)
}

pub fn run_protocol_point(alpha: f64, params: &EnvironmentParams, method: Method) -> Result<ProtocolRecord> {
    check_alpha(alpha)?;
    params.require_nondegenerate()?;
    let r = params.r_infinity();
    let closed = reduced_protocol_state(alpha, params)?;
    let (asymptote_2q, asymptote_3q, reduced, residual) = match method {
        Method::Analytic => {
            let three = crate::asymptotic::three_qubit_protocol_asymptote(alpha, params)?.into_matrix();
            let traced = partial_trace_matrix(&three, &[1, 2])?;
            let residual = max_abs_diff(&traced, closed.state.matrix());
            let two = two_qubit_alpha_asymptote(alpha, params)?.into_matrix();
            (two, three, closed.state.matrix().clone(), residual)
        }
        Method::Numeric => {
            let two = asymptotic_state(
                &vectorize(&build_generator(params, 2)?),
                &DensityMatrix::new(rho_alpha_matrix(alpha))?,
                DEFAULT_TOL * 1e-2,
            )?
            .state
            .into_matrix();
            let three = asymptotic_state(
                &vectorize(&build_generator(params, 3)?),
                &AlphaFamilyState::new(alpha, 3)?.state(),
                DEFAULT_TOL * 1e-2,
            )?
            .state
            .into_matrix();
            let reduced = partial_trace_matrix(&three, &[1, 2])?;
            let residual = max_abs_diff(&reduced, closed.state.matrix());
            (two, three, reduced, residual)
        }
    };
    let oracle = ProtocolConcurrences {
        initial: concurrence_of_matrix(&rho_alpha_matrix(alpha))?.value,
        asymptotic_2q: concurrence_of_matrix(&asymptote_2q)?.value,
        reduced_3q: concurrence_of_matrix(&reduced)?.value,
    };
    let closed_form = ProtocolConcurrences::compute(alpha, r, Mode::ClosedForm)?;
    Ok(ProtocolRecord {
        r,
        alpha,
        method,
        oracle,
        closed_form,
        deltas_oracle: oracle.deltas(),
        deltas_closed_form: closed_form.deltas(),
        regime: Regime::classify(alpha, &oracle),
        closed_form_regime: Regime::classify(alpha, &closed_form),
        residual,
        asymptote_2q,
        asymptote_3q,
        reduced,
    })
}

/// A list of `(r, alpha)` points.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Grid {
    pub points: Vec<(f64, f64)>,
}

impl Grid {
    pub fn rectangular(rs: &[f64], alphas: &[f64]) -> Self {
        let points = rs.iter().flat_map(|&r| alphas.iter().map(move |&a| (r, a))).collect();
        Self { points }
    }

    /// For each `r`, the alphas produced by `range(r)`.
    pub fn per_r(rs: &[f64], range: impl Fn(f64) -> Vec<f64>) -> Self {
        let points = rs.iter().flat_map(|&r| range(r).into_iter().map(move |a| (r, a))).collect();
        Self { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        if self.points.is_empty() {
            return Err(Error::Validation("grid is empty".into()));
        }
        for &(r, alpha) in &self.points {
            let bad = |e: Error| Error::Validation(format!("grid point (r={r}, alpha={alpha}): {e}"));
            params_for_r(r).map_err(bad)?;
            check_alpha(alpha).map_err(bad)?;
        }
        Ok(())
    }
}

/// `lo, lo + step, ...` strictly below `hi`, then `hi` itself.
pub fn inclusive_range(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::Validation(format!("step must be positive, got {step}")));
    }
    if !(lo <= hi) {
        return Err(Error::Validation(format!("range lower bound {lo} exceeds upper bound {hi}")));
    }
    let mut out = Vec::new();
    let mut k = 0usize;
    loop {
        let x = lo + k as f64 * step;
        if x >= hi - 1e-12 {
            break;
        }
        out.push(x);
        k += 1;
    }
    out.push(hi);
    Ok(out)
}

pub const R_STEP: f64 = 0.02;
pub const ALPHA_STEP: f64 = 0.005;
pub const FIGURE_ONE_LOWER_BOUND: f64 = 0.2;

/// `0, 0.02, ..., 0.98` followed by `0.99`.
pub fn default_r_values() -> Vec<f64> {
    let mut rs: Vec<f64> = (0..=49).map(|k| k as f64 / 50.0).collect();
    rs.push(0.99);
    rs
}

/// Alphas on `[lo, hi]` with the default step; empty when `lo > hi`.
pub fn alpha_values(lo: f64, hi: f64) -> Vec<f64> {
    if lo > hi {
        return Vec::new();
    }
    inclusive_range(lo, hi, ALPHA_STEP).expect("valid range")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Figure {
    /// Reduced concurrence where neither the start nor the two-qubit asymptote is entangled.
    One,
    /// Gain of the ancilla route over the start, below the two-qubit gain threshold.
    Two,
    /// Gain of the ancilla route over the two-qubit asymptote, above that threshold.
    Three,
}

impl Figure {
    pub fn from_index(k: u8) -> Result<Self> {
        match k {
            1 => Ok(Figure::One),
            2 => Ok(Figure::Two),
            3 => Ok(Figure::Three),
            other => Err(Error::Validation(format!("figure must be 1, 2 or 3, got {other}"))),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Figure::One => 1,
            Figure::Two => 2,
            Figure::Three => 3,
        }
    }
}

/// Default grid of a figure; `lower_bound` only affects [`Figure::One`].
pub fn figure_grid(figure: Figure, lower_bound: f64) -> Grid {
    let rs = default_r_values();
    match figure {
        Figure::One => Grid::per_r(&rs, |r| alpha_values(lower_bound.max(alpha_sep(r)), ALPHA_MAX)),
        Figure::Two => Grid::per_r(&rs, |r| alpha_values(0.0, alpha_gain(r))),
        Figure::Three => Grid::per_r(&rs, |r| alpha_values(alpha_gain(r), ALPHA_MAX)),
    }
}

/// Runs every point, in parallel, and returns the records sorted by `(r, alpha)`.
/// An invalid point fails the whole sweep before anything is computed.
pub fn sweep(grid: &Grid, method: Method) -> Result<Vec<ProtocolRecord>> {
    grid.validate()?;
    let mut records = grid
        .points
        .par_iter()
        .map(|&(r, alpha)| run_protocol_point(alpha, &params_for_r(r)?, method))
        .collect::<Result<Vec<_>>>()?;
    records.sort_by(|x, y| x.r.total_cmp(&y.r).then(x.alpha.total_cmp(&y.alpha)));
    Ok(records)
}

/// An alpha in `(alpha_minus(r), 1/3]` whose start and two-qubit asymptote
/// are separable while the reduced three-qubit asymptote is entangled.
pub fn headline_witness(r: f64, samples: usize) -> Result<Option<ProtocolRecord>> {
    let params = params_for_r(r)?;
    let lo = alpha_pm(r, Radicand::Delta).0;
    if lo >= ALPHA_MAX {
        return Ok(None);
    }
    for k in 0..samples {
        let alpha = ALPHA_MAX - (ALPHA_MAX - lo) * k as f64 / samples as f64;
        let rec = run_protocol_point(alpha, &params, Method::Analytic)?;
        if !is_entangled(rec.oracle.initial)
            && !is_entangled(rec.oracle.asymptotic_2q)
            && is_entangled(rec.oracle.reduced_3q)
        {
            return Ok(Some(rec));
        }
    }
    Ok(None)
}

/// Oracle concurrence of the reduced state, for scans that need nothing else.
pub fn reduced_concurrence_oracle(alpha: f64, r: f64) -> Result<f64> {
    Ok(concurrence_oracle(&reduced_protocol_state(alpha, &params_for_r(r)?)?.state)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entanglement::thresholds;

    #[test]
    fn alpha_zero_keeps_singlet() {
        let rec = run_protocol_point(0.0, &params_for_r(0.7).unwrap(), Method::Analytic).unwrap();
        assert!((rec.oracle.reduced_3q - 1.0).abs() < 1e-12);
        assert_eq!(rec.regime, Regime::SingletPreserved);
    }

    #[test]
    fn headline_point() {
        let rec = run_protocol_point(0.33, &params_for_r(0.99).unwrap(), Method::Analytic).unwrap();
        assert_eq!(rec.oracle.initial, 0.0);
        assert_eq!(rec.oracle.asymptotic_2q, 0.0);
        assert!(rec.oracle.reduced_3q > 0.0);
        assert_eq!(rec.regime, Regime::AncillaActivated);
        assert!(headline_witness(0.99, 200).unwrap().is_some());
        assert!(headline_witness(0.5, 200).unwrap().is_none());
    }

    #[test]
    fn analytic_and_numeric_agree() {
        for (r, alpha) in [(0.0, 0.1), (0.5, 0.25), (-0.9, 0.3), (0.99, 0.33)] {
            let p = params_for_r(r).unwrap();
            let a = run_protocol_point(alpha, &p, Method::Analytic).unwrap();
            let n = run_protocol_point(alpha, &p, Method::Numeric).unwrap();
            assert!(n.residual < 1e-7, "{}", n.residual);
            assert!(a.residual < 1e-12);
            assert!((a.oracle.asymptotic_2q - n.oracle.asymptotic_2q).abs() < 1e-7);
            assert!((a.oracle.reduced_3q - n.oracle.reduced_3q).abs() < 1e-7);
            assert!(max_abs_diff(&a.asymptote_3q, &n.asymptote_3q) < 1e-7);
            assert_eq!(a.regime, n.regime);
        }
    }

    #[test]
    fn regimes_follow_thresholds() {
        for r in [0.0, 0.3, 0.8, 0.99] {
            let t = thresholds(r).unwrap();
            for alpha in alpha_values(0.0, ALPHA_MAX) {
                let rec = run_protocol_point(alpha, &params_for_r(r).unwrap(), Method::Analytic).unwrap();
                if matches!(rec.regime, Regime::Separable | Regime::AncillaActivated) {
                    assert!(alpha >= t.alpha_sep - 1e-9, "r={r} alpha={alpha}");
                }
            }
        }
    }

    #[test]
    fn ranges() {
        assert_eq!(inclusive_range(0.0, 0.01, 0.005).unwrap(), vec![0.0, 0.005, 0.01]);
        assert_eq!(inclusive_range(0.0, 0.012, 0.005).unwrap(), vec![0.0, 0.005, 0.01, 0.012]);
        assert!(inclusive_range(1.0, 0.0, 0.1).is_err());
        assert!(inclusive_range(0.0, 1.0, 0.0).is_err());
        let rs = default_r_values();
        assert_eq!(rs.len(), 51);
        assert_eq!(rs[49], 0.98);
        assert_eq!(*rs.last().unwrap(), 0.99);
    }

    #[test]
    fn sweep_is_sorted_and_rejects_bad_points() {
        let grid = Grid { points: vec![(0.5, 0.2), (0.1, 0.3), (0.5, 0.1), (0.1, 0.0)] };
        let recs = sweep(&grid, Method::Analytic).unwrap();
        let keys: Vec<_> = recs.iter().map(|r| (r.r, r.alpha)).collect();
        assert_eq!(keys, vec![(0.1, 0.0), (0.1, 0.3), (0.5, 0.1), (0.5, 0.2)]);
        let bad = Grid { points: vec![(0.5, 0.2), (1.0, 0.1)] };
        let err = sweep(&bad, Method::Analytic).unwrap_err();
        assert!(err.to_string().contains("r=1"), "{err}");
        let bad = Grid { points: vec![(0.5, 0.4)] };
        assert!(sweep(&bad, Method::Analytic).is_err());
        assert!(sweep(&Grid::default(), Method::Analytic).is_err());
    }

    #[test]
    fn figure_grids_respect_bounds() {
        let g = figure_grid(Figure::One, FIGURE_ONE_LOWER_BOUND);
        assert!(g.points.iter().all(|&(r, a)| a >= alpha_sep(r).max(0.2) - 1e-15 && a <= ALPHA_MAX));
        let g = figure_grid(Figure::Two, FIGURE_ONE_LOWER_BOUND);
        assert!(g.points.iter().all(|&(r, a)| a <= alpha_gain(r) + 1e-15));
        let g = figure_grid(Figure::Three, FIGURE_ONE_LOWER_BOUND);
        assert!(g.points.iter().all(|&(r, a)| a >= alpha_gain(r) - 1e-15));
        assert!(Figure::from_index(4).is_err());
    }
}
