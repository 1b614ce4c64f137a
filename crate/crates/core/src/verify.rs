//! Cross-checks of every closed form against propagation and the concurrence
//! oracle, collected into a report.

use std::fmt::Write as _;

use nalgebra::Vector3;

use crate::algebra::{
    brute_force_commutant, global_spin, identity_residuals, max_abs, max_abs_diff, pauli,
    trace_of_product, ComplexMatrix, DensityMatrix,
};
use crate::asymptotic::{
    bloch_vector, reduced_protocol_state, rho_alpha, three_qubit_protocol_asymptote,
    two_qubit_alpha_asymptote, x_form_matrix, AlphaFamilyState,
};
use crate::dynamics::{asymptotic_state, kernel_dimension, time_average, vectorize};
use crate::entanglement::{
    alpha_gain, alpha_pm, alpha_sep, asymptotic_2q_crossing, concurrence_oracle, critical_r,
    initial_concurrence, oracle_concurrence_from_weight, oracle_critical_r_refined,
    closed_form_concurrence_2q, singlet_weight_concurrence_2q, reduced_state_concurrence,
    Mode, Radicand, QUOTED_CRITICAL_R,
};
use crate::error::Result;
use crate::generator::{build_generator, stationary_single_qubit_matrix, tensor_power, EnvironmentParams};
use crate::io::protocol_csv;
use crate::protocol::{figure_grid, headline_witness, sweep, Figure, Method, FIGURE_ONE_LOWER_BOUND};
use crate::random::{random_density_matrix, random_hermitian, seeded_rng};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// A known disagreement with a reference formula, reported but not failing.
    Flag,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Flag => "flag",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Claim {
    pub id: &'static str,
    pub group: &'static str,
    pub description: String,
    pub residual: f64,
    pub tolerance: f64,
    pub status: Status,
}

impl Claim {
    fn check(id: &'static str, group: &'static str, description: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        let status = if residual <= tolerance { Status::Pass } else { Status::Fail };
        Self { id, group, description: description.into(), residual, tolerance, status }
    }

    /// A discrepancy expected to exceed `tolerance`; it is flagged when it does.
    fn discrepancy(id: &'static str, group: &'static str, description: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        let status = if residual <= tolerance { Status::Pass } else { Status::Flag };
        Self { id, group, description: description.into(), residual, tolerance, status }
    }

    fn condition(id: &'static str, group: &'static str, description: impl Into<String>, holds: bool) -> Self {
        let status = if holds { Status::Pass } else { Status::Fail };
        Self { id, group, description: description.into(), residual: if holds { 0.0 } else { 1.0 }, tolerance: 0.0, status }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerificationReport {
    pub claims: Vec<Claim>,
}

impl VerificationReport {
    pub fn count(&self, status: Status) -> usize {
        self.claims.iter().filter(|c| c.status == status).count()
    }

    /// No claim failed; flags are allowed.
    pub fn passed(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("claim,group,status,residual,tolerance,description\n");
        for c in &self.claims {
            let _ = writeln!(
                out,
                "{},{},{},{:?},{:?},\"{}\"",
                c.id,
                c.group,
                c.status.as_str(),
                c.residual,
                c.tolerance,
                c.description.replace('"', "'")
            );
        }
        out
    }

    pub fn to_table(&self) -> String {
        let width = self.claims.iter().map(|c| c.id.len()).max().unwrap_or(5).max(5);
        let mut out = format!("{:<width$}  {:<6}  {:>12}  {:>9}  description\n", "claim", "status", "residual", "tol");
        for c in &self.claims {
            let _ = writeln!(
                out,
                "{:<width$}  {:<6}  {:>12.3e}  {:>9.1e}  {}",
                c.id,
                c.status.as_str(),
                c.residual,
                c.tolerance,
                c.description
            );
        }
        let _ = writeln!(
            out,
            "{} pass, {} flag, {} fail",
            self.count(Status::Pass),
            self.count(Status::Flag),
            self.count(Status::Fail)
        );
        out
    }
}

/// Tolerance of every numeric check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub stationarity: f64,
    pub fixed_point: f64,
    pub asymptote: f64,
    pub oracle: f64,
    pub endpoints: f64,
    pub crossing: f64,
    pub critical_r: f64,
    pub critical_r_oracle: f64,
    pub algebra: f64,
    pub duality: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            stationarity: 1e-11,
            fixed_point: 1e-9,
            asymptote: 1e-8,
            oracle: 1e-10,
            endpoints: 1e-12,
            crossing: 1e-8,
            critical_r: 1e-10,
            critical_r_oracle: 1e-4,
            algebra: 1e-12,
            duality: 1e-7,
        }
    }
}

impl Tolerances {
    /// The same tolerance everywhere.
    pub fn uniform(tol: f64) -> Self {
        Self {
            stationarity: tol,
            fixed_point: tol,
            asymptote: tol,
            oracle: tol,
            endpoints: tol,
            crossing: tol,
            critical_r: tol,
            critical_r_oracle: tol,
            algebra: tol,
            duality: tol,
        }
    }
}

/// `a = 1`, `c = 1`, `omega = 1`, `b` in `{0, 0.5, -0.5, 0.9, 0.99}`.
pub fn default_params() -> Vec<EnvironmentParams> {
    [0.0, 0.5, -0.5, 0.9, 0.99]
        .iter()
        .map(|&b| EnvironmentParams::new(1.0, b, 1.0, 1.0).expect("valid"))
        .collect()
}

/// `0, 0.05, ..., 0.30, 1/3`.
pub fn default_alphas() -> Vec<f64> {
    let mut v: Vec<f64> = (0..=6).map(|k| k as f64 * 0.05).collect();
    v.push(1.0 / 3.0);
    v
}

pub const GROUPS: [&str; 12] = [
    "stationarity",
    "fixed-point",
    "two-qubit",
    "three-qubit",
    "reduced-concurrence",
    "thresholds",
    "zero-crossing",
    "headline",
    "critical-r",
    "algebra",
    "figures",
    "duality",
];

/// Runs every claim group; an empty `params` list means [`default_params`].
pub fn verify_all(params: &[EnvironmentParams], tol: &Tolerances) -> Result<VerificationReport> {
    verify_groups(params, tol, &GROUPS)
}

/// Runs the named claim groups only.
pub fn verify_groups(params: &[EnvironmentParams], tol: &Tolerances, groups: &[&str]) -> Result<VerificationReport> {
    let defaults;
    let params = if params.is_empty() {
        defaults = default_params();
        &defaults[..]
    } else {
        params
    };
    for g in groups {
        if !GROUPS.contains(g) {
            return Err(crate::Error::InvalidArgument(format!(
                "unknown claim group {g:?}; known groups: {}",
                GROUPS.join(", ")
            )));
        }
    }
    let mut claims = Vec::new();
    for &group in &GROUPS {
        if !groups.contains(&group) {
            continue;
        }
        match group {
            "stationarity" => claims.push(stationarity(params, tol)?),
            "fixed-point" => claims.push(fixed_point(params, tol)?),
            "two-qubit" => claims.push(two_qubit(params, tol)?),
            "three-qubit" => claims.extend(three_qubit(params, tol)?),
            "reduced-concurrence" => claims.extend(reduced_concurrence(tol)?),
            "thresholds" => claims.push(threshold_endpoints(tol)),
            "zero-crossing" => claims.extend(zero_crossing(tol)?),
            "headline" => claims.push(headline()?),
            "critical-r" => claims.extend(critical(tol)?),
            "algebra" => claims.extend(algebra(tol)),
            "figures" => claims.extend(figures()?),
            "duality" => claims.push(duality(tol)?),
            _ => unreachable!(),
        }
    }
    Ok(VerificationReport { claims })
}

fn nondegenerate(params: &[EnvironmentParams]) -> impl Iterator<Item = &EnvironmentParams> {
    params.iter().filter(|p| !p.is_degenerate())
}

fn stationarity(params: &[EnvironmentParams], tol: &Tolerances) -> Result<Claim> {
    let mut worst: f64 = 0.0;
    for p in params {
        let single = stationary_single_qubit_matrix(p);
        for n in 1..=3 {
            worst = worst.max(max_abs(&build_generator(p, n)?.apply(&tensor_power(&single, n))));
        }
    }
    Ok(Claim::check("stationarity", "stationarity", "product of one-qubit fixed points is annihilated, n = 1, 2, 3", worst, tol.stationarity))
}

fn fixed_point(params: &[EnvironmentParams], tol: &Tolerances) -> Result<Claim> {
    let mut worst: f64 = 0.0;
    let starts = [pauli(0)? * crate::algebra::real(0.5), {
        let mut m = ComplexMatrix::zeros(2, 2);
        m[(1, 1)] = crate::algebra::real(1.0);
        m
    }];
    for p in nondegenerate(params) {
        let s = vectorize(&build_generator(p, 1)?);
        for start in &starts {
            let out = asymptotic_state(&s, &DensityMatrix::new(start.clone())?, 1e-12)?;
            let bloch = bloch_vector(out.state.matrix());
            worst = worst.max((bloch - Vector3::new(0.0, 0.0, p.r_infinity())).amax());
        }
    }
    Ok(Claim::check("one-qubit-fixed-point", "fixed-point", "propagated one-qubit Bloch vector equals (0, 0, b/a)", worst, tol.fixed_point))
}

fn two_qubit(params: &[EnvironmentParams], tol: &Tolerances) -> Result<Claim> {
    let mut worst: f64 = 0.0;
    for p in nondegenerate(params) {
        let s = vectorize(&build_generator(p, 2)?);
        for alpha in default_alphas() {
            let num = asymptotic_state(&s, &rho_alpha(alpha)?, 1e-12)?;
            worst = worst.max(max_abs_diff(num.state.matrix(), two_qubit_alpha_asymptote(alpha, p)?.matrix()));
        }
    }
    Ok(Claim::check("two-qubit-asymptote", "two-qubit", "propagated two-qubit asymptote of the alpha family matches the closed form", worst, tol.asymptote))
}

fn three_qubit(params: &[EnvironmentParams], tol: &Tolerances) -> Result<Vec<Claim>> {
    let (mut full, mut reduced): (f64, f64) = (0.0, 0.0);
    for p in nondegenerate(params) {
        let s = vectorize(&build_generator(p, 3)?);
        let r = p.r_infinity();
        for alpha in default_alphas() {
            let num = asymptotic_state(&s, &AlphaFamilyState::new(alpha, 3)?.state(), 1e-12)?;
            full = full.max(max_abs_diff(num.state.matrix(), three_qubit_protocol_asymptote(alpha, p)?.matrix()));
            let traced = crate::algebra::partial_trace_matrix(num.state.matrix(), &[1, 2])?;
            let red = reduced_protocol_state(alpha, p)?;
            reduced = reduced.max(max_abs_diff(&traced, &x_form_matrix(red.x_plus, red.x_minus, red.y, red.u, r)));
        }
    }
    Ok(vec![
        Claim::check("three-qubit-asymptote", "three-qubit", "propagated asymptote with a depolarized ancilla matches the closed form", full, tol.asymptote),
        Claim::check("reduced-entries", "three-qubit", "ancilla-traced propagated asymptote matches the X-shaped entries", reduced, tol.asymptote),
    ])
}

fn reduced_grid() -> impl Iterator<Item = (f64, f64)> {
    (0..50).flat_map(|i| (0..50).map(move |j| (i as f64 / 49.0 / 3.0, j as f64 / 49.0 * 0.99)))
}

fn reduced_concurrence(tol: &Tolerances) -> Result<Vec<Claim>> {
    let (mut delta_form, mut literal): (f64, f64) = (0.0, 0.0);
    for (alpha, r) in reduced_grid() {
        let red = reduced_protocol_state(alpha, &EnvironmentParams::from_r(r)?)?;
        let oracle = concurrence_oracle(&red.state)?.value;
        delta_form = delta_form.max((oracle - reduced_state_concurrence(alpha, r, Radicand::Delta)).abs());
        literal = literal.max((oracle - reduced_state_concurrence(alpha, r, Radicand::Literal)).abs());
    }
    Ok(vec![
        Claim::check("reduced-concurrence", "reduced-concurrence", "closed-form reduced concurrence equals the oracle on a 50x50 grid", delta_form, tol.oracle),
        Claim::discrepancy("literal-reduced-radicand", "reduced-concurrence", "reduced concurrence with radicand (1-r^2)(9+9r^2+4r^4) vs oracle", literal, tol.oracle),
    ])
}

fn threshold_endpoints(tol: &Tolerances) -> Claim {
    let (m0, p0) = alpha_pm(0.0, Radicand::Delta);
    let (m1, p1) = alpha_pm(1.0, Radicand::Delta);
    let pairs = [
        (alpha_sep(0.0), 1.0 / 6.0),
        (alpha_sep(1.0), 1.0 / 3.0),
        (alpha_gain(0.0), 1.0 / 6.0),
        (alpha_gain(1.0), 1.0 / 9.0),
        (m0, 0.5),
        (m1, 0.3),
        (p0, 1.0 / 6.0),
        (p1, 0.3),
    ];
    let worst = pairs.iter().map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    Claim::check("threshold-endpoints", "thresholds", "alpha thresholds at r = 0 and r = 1", worst, tol.endpoints)
}

fn zero_crossing(tol: &Tolerances) -> Result<Vec<Claim>> {
    let mut worst: f64 = 0.0;
    for r in [0.0, 0.5, 0.9] {
        worst = worst.max((asymptotic_2q_crossing(r, 1e-13)? - alpha_sep(r)).abs());
    }
    let p0 = EnvironmentParams::from_r(0.0)?;
    let oracle_at_zero = concurrence_oracle(&two_qubit_alpha_asymptote(0.0, &p0)?)?.value;
    let magnitude = (closed_form_concurrence_2q(0.0, 0.0) - oracle_at_zero).abs();
    let alpha = 0.1;
    let general = (singlet_weight_concurrence_2q(1.0 - 3.0 * alpha, 0.0)?
        - oracle_concurrence_from_weight(1.0 - 3.0 * alpha, 0.0)?)
    .abs();
    Ok(vec![
        Claim::check("zero-crossing", "zero-crossing", "oracle concurrence of the two-qubit asymptote vanishes at alpha_sep(r)", worst, tol.crossing),
        Claim::discrepancy("literal-asymptotic-magnitude", "zero-crossing", "closed-form asymptotic concurrence 1/2 - 3a(3-r^2)/(3+r^2) vs oracle at alpha = 0, r = 0", magnitude, tol.oracle),
        Claim::discrepancy("literal-general-concurrence", "zero-crossing", "singlet-weight concurrence formula vs oracle at alpha = 0.1, r = 0 (1 - 5a vs 1 - 6a)", general, tol.oracle),
    ])
}

fn headline() -> Result<Claim> {
    let witness = headline_witness(0.99, 400)?;
    let description = match &witness {
        Some(rec) => format!(
            "r = 0.99, alpha = {:.6}: C(start) = {}, C(2q) = {}, C(reduced) = {:.6}",
            rec.alpha, rec.oracle.initial, rec.oracle.asymptotic_2q, rec.oracle.reduced_3q
        ),
        None => "no alpha in (alpha_minus(0.99), 1/3] activates entanglement".to_owned(),
    };
    Ok(Claim::condition("headline", "headline", description, witness.is_some()))
}

fn critical(tol: &Tolerances) -> Result<Vec<Claim>> {
    let root = critical_r(Radicand::Delta);
    let oracle = oracle_critical_r_refined(1e-12)?;
    Ok(vec![
        Claim::check("critical-r", "critical-r", format!("alpha_minus(r) = 1/3 at r = {root:.10}"), (alpha_pm(root, Radicand::Delta).0 - 1.0 / 3.0).abs(), tol.critical_r),
        Claim::check("critical-r-oracle", "critical-r", format!("oracle crossing at alpha = 1/3 is r = {oracle:.10}"), (oracle - root).abs(), tol.critical_r_oracle),
        Claim::discrepancy("literal-critical-r", "critical-r", format!("quoted r* = {QUOTED_CRITICAL_R} vs root {root:.10}"), (QUOTED_CRITICAL_R - root).abs(), tol.critical_r_oracle),
    ])
}

fn algebra(tol: &Tolerances) -> Vec<Claim> {
    let res = identity_residuals();
    let spins = |n| (1..=3).map(|i| global_spin(i, n).expect("valid")).collect::<Vec<_>>();
    let dims = (brute_force_commutant(&spins(2)).len(), brute_force_commutant(&spins(3)).len());
    let kernels = (
        kernel_dimension(&vectorize(&build_generator(&EnvironmentParams::from_r(0.5).expect("valid"), 2).expect("valid")), 1e-10),
        kernel_dimension(&vectorize(&build_generator(&EnvironmentParams::from_r(0.5).expect("valid"), 3).expect("valid")), 1e-10),
    );
    vec![
        Claim::check("invariant-identities", "algebra", "anticommutator, center, square and complement relations plus corrected commutators", res.valid_max(), tol.algebra),
        Claim::discrepancy("literal-pair-commutator", "algebra", "[S^(ab), S^(ac)] = 2i eps S^(bc) (the commutator is 2i eps S)", res.literal_pair_commutator, tol.algebra),
        Claim::discrepancy("literal-triple-commutator", "algebra", "[S^(ab), S] = 4i (S^(bc) - S^(ac)) (sign flips for the pair (1,3))", res.literal_triple_commutator, tol.algebra),
        Claim::condition("commutant-dimensions", "algebra", format!("commutant dimensions {} and {} (expected 2 and 5)", dims.0, dims.1), dims == (2, 5)),
        Claim::condition("kernel-dimensions", "algebra", format!("generator kernel dimensions {} and {} (expected 2 and 5)", kernels.0, kernels.1), kernels == (2, 5)),
    ]
}

/// Qualitative checks of the three figure datasets in closed-form mode.
pub fn figure_features() -> Result<Vec<(Figure, bool, String)>> {
    let mut out = Vec::new();
    for fig in [Figure::One, Figure::Two, Figure::Three] {
        let grid = figure_grid(fig, FIGURE_ONE_LOWER_BOUND);
        let records = sweep(&grid, Method::Analytic)?;
        let again = sweep(&grid, Method::Analytic)?;
        let deterministic = protocol_csv(&records, Mode::ClosedForm, &[]) == protocol_csv(&again, Mode::ClosedForm, &[]);
        let (ok, what) = match fig {
            Figure::One => {
                let corner = records
                    .iter()
                    .filter(|r| r.r >= 0.99 && r.alpha >= 1.0 / 3.0 - 1e-12)
                    .all(|r| r.closed_form.reduced_3q > 0.0);
                (corner, "reduced concurrence positive at r = 0.99, alpha = 1/3")
            }
            Figure::Two => (records.iter().any(|r| r.deltas_closed_form.delta1 > 0.0), "some delta1 > 0"),
            Figure::Three => (records.iter().any(|r| r.deltas_closed_form.delta2 > 0.0), "some delta2 > 0"),
        };
        out.push((
            fig,
            ok && deterministic && !records.is_empty(),
            format!("{} points, deterministic = {deterministic}, {what}: {ok}", records.len()),
        ));
    }
    Ok(out)
}

fn figures() -> Result<Vec<Claim>> {
    let ids = ["figure-1", "figure-2", "figure-3"];
    let mut claims: Vec<Claim> = figure_features()?
        .into_iter()
        .zip(ids)
        .map(|((_, ok, what), id)| Claim::condition(id, "figures", what, ok))
        .collect();
    let mut worst: f64 = 0.0;
    for fig in [Figure::One, Figure::Two, Figure::Three] {
        for rec in sweep(&figure_grid(fig, FIGURE_ONE_LOWER_BOUND), Method::Analytic)? {
            let (a, b) = (rec.deltas_closed_form, rec.deltas_oracle);
            worst = worst.max((a.delta - b.delta).abs()).max((a.delta1 - b.delta1).abs()).max((a.delta2 - b.delta2).abs());
        }
    }
    claims.push(Claim::discrepancy("figure-oracle-deltas", "figures", "closed-form vs oracle concurrence differences over the figure grids", worst, 1e-10));
    Ok(claims)
}

fn duality(tol: &Tolerances) -> Result<Claim> {
    let p = EnvironmentParams::from_r(0.5)?;
    let s = vectorize(&build_generator(&p, 2)?);
    let mut rng = seeded_rng(2024);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let rho = random_density_matrix(2, &mut rng);
        let x = random_hermitian(4, &mut rng);
        let lhs = trace_of_product(rho.matrix(), &time_average(&s, &x, 200.0, 4000)?);
        let rhs = trace_of_product(asymptotic_state(&s, &rho, 1e-12)?.state.matrix(), &x);
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(Claim::check("duality", "duality", "Tr(rho avg[x]) = Tr(E[rho] x) for 20 random pairs at T = 200", worst, tol.duality))
}

/// `max{0, 1 - 6 alpha}` against the oracle on the alpha family.
pub fn initial_family_residual() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for alpha in default_alphas() {
        worst = worst.max((concurrence_oracle(&rho_alpha(alpha)?)?.value - initial_concurrence(alpha)).abs());
    }
    Ok(worst)
}
