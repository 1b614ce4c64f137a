//! Kossakowski matrices and Lindblad generators for qubits coupled to a
//! permutation-symmetric bath.
//!
//! Every generator is stored in the form
//! `L[rho] = -i[H, rho] + sum_mn K_mn (F_m rho F_n - 1/2 {F_n F_m, rho})`
//! with Hermitian coupling operators `F_m`.

use std::collections::BTreeMap;

use crate::algebra::{
    anticommutator, commutator, embed_single_qubit, global_spin, hermitian_eigen,
    hermiticity_defect, identity, kron, pauli, real, ComplexMatrix, I,
};
use crate::error::{Error, Result};

/// Bath parameters: rates `a`, `b`, `c` and qubit frequency `omega`.
///
/// Admissible when `a > 0`, `c >= 0` and `|b| <= a`. The boundary cases
/// `c = 0` and `|b| = a` are admitted but marked degenerate: the asymptotic
/// results (unique full-rank stationary state, convergence) need `|b| < a`
/// and `c > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnvironmentParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub omega: f64,
}

impl EnvironmentParams {
    pub fn new(a: f64, b: f64, c: f64, omega: f64) -> Result<Self> {
        let p = Self { a, b, c, omega };
        p.validate()?;
        Ok(p)
    }

    /// `a = 1`, `b = r`, `c = 1`, `omega = 1`.
    pub fn from_r(r: f64) -> Result<Self> {
        Self::new(1.0, r, 1.0, 1.0)
    }

    pub fn validate(&self) -> Result<()> {
        let Self { a, b, c, omega } = *self;
        if ![a, b, c, omega].iter().all(|x| x.is_finite()) {
            return Err(Error::Validation("parameters must be finite".into()));
        }
        if a <= 0.0 {
            return Err(Error::Validation(format!("a must be positive, got {a}")));
        }
        if c < 0.0 {
            return Err(Error::Validation(format!("c must be nonnegative, got {c}")));
        }
        if b.abs() > a {
            return Err(Error::Validation(format!(
                "|b| < a violated: |b| = {} > a = {a} (the rate matrix has eigenvalue a - |b| < 0)",
                b.abs()
            )));
        }
        Ok(())
    }

    /// `r_inf = b / a`, the Bloch z-component of the one-qubit stationary state.
    pub fn r_infinity(&self) -> f64 {
        self.b / self.a
    }

    pub fn is_degenerate(&self) -> bool {
        self.c == 0.0 || self.b.abs() == self.a
    }

    /// Errors unless the asymptotic theory applies.
    pub fn require_nondegenerate(&self) -> Result<()> {
        self.validate()?;
        if self.is_degenerate() {
            return Err(Error::Degenerate(format!(
                "asymptotics not guaranteed for a={}, b={}, c={} (need |b| < a and c > 0)",
                self.a, self.b, self.c
            )));
        }
        Ok(())
    }

    /// The 3x3 rate matrix shared by one- and two-qubit terms:
    /// `[[a, -ib, 0], [ib, a, 0], [0, 0, c]]`.
    ///
    /// The sign of the off-diagonal entries fixes the stationary Bloch vector
    /// at `+b/a` with `sigma_z |0> = +|0>`.
    pub fn rate_matrix(&self) -> ComplexMatrix {
        let Self { a, b, c, .. } = *self;
        let z = real(0.0);
        ComplexMatrix::from_row_slice(
            3,
            3,
            &[real(a), -I * b, z, I * b, real(a), z, z, z, real(c)],
        )
    }
}

/// Hermitian PSD coefficient matrix over the operators `sigma_i^(a)`, with
/// the qubit index `a` slow and the Pauli index `i` fast.
#[derive(Clone, Debug, PartialEq)]
pub struct KossakowskiMatrix {
    matrix: ComplexMatrix,
}

impl KossakowskiMatrix {
    /// Validates Hermiticity (1e-12) and positivity (min eigenvalue >= -1e-10).
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() % 3 != 0 || matrix.nrows() == 0 {
            return Err(Error::Validation(format!(
                "Kossakowski matrix must be 3n x 3n, got {:?}",
                matrix.shape()
            )));
        }
        let herm = hermiticity_defect(&matrix);
        if herm > 1e-12 {
            return Err(Error::Validation(format!(
                "Kossakowski matrix is not Hermitian (defect {herm:e})"
            )));
        }
        let min = hermitian_eigen(&matrix).0[0];
        if min < -1e-10 {
            return Err(Error::Validation(format!(
                "Kossakowski matrix is not positive semidefinite: most negative eigenvalue {min:e}"
            )));
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn qubit_count(&self) -> usize {
        self.matrix.nrows() / 3
    }

    /// Block `C^(ab)` (1-based qubits).
    pub fn block(&self, a: usize, b: usize) -> ComplexMatrix {
        self.matrix.view((3 * (a - 1), 3 * (b - 1)), (3, 3)).into_owned()
    }
}

/// Kossakowski matrix with every qubit block equal to the rate matrix.
pub fn symmetric_kossakowski_n(params: &EnvironmentParams, n: usize) -> Result<KossakowskiMatrix> {
    params.validate()?;
    let rates = params.rate_matrix();
    let mut k = ComplexMatrix::zeros(3 * n, 3 * n);
    for a in 0..n {
        for b in 0..n {
            k.view_mut((3 * a, 3 * b), (3, 3)).copy_from(&rates);
        }
    }
    KossakowskiMatrix::new(k)
}

/// Three-qubit Kossakowski matrix of the symmetric bath.
pub fn symmetric_kossakowski(params: &EnvironmentParams) -> Result<KossakowskiMatrix> {
    symmetric_kossakowski_n(params, 3)
}

/// Master-equation generator on `n` qubits.
#[derive(Clone, Debug)]
pub struct LindbladGenerator {
    qubit_count: usize,
    hamiltonian: ComplexMatrix,
    coupling_ops: Vec<ComplexMatrix>,
    coefficients: ComplexMatrix,
    kossakowski: KossakowskiMatrix,
    kraus_ops: Vec<ComplexMatrix>,
    degenerate: bool,
}

impl LindbladGenerator {
    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn dim(&self) -> usize {
        1 << self.qubit_count
    }

    pub fn hamiltonian(&self) -> &ComplexMatrix {
        &self.hamiltonian
    }

    pub fn kossakowski(&self) -> &KossakowskiMatrix {
        &self.kossakowski
    }

    pub fn kraus_ops(&self) -> &[ComplexMatrix] {
        &self.kraus_ops
    }

    /// Coupling operators `F_m` and coefficients `K_mn` of the stored form.
    pub fn coupling(&self) -> (&[ComplexMatrix], &ComplexMatrix) {
        (&self.coupling_ops, &self.coefficients)
    }

    /// Built from degenerate parameters; asymptotic operations refuse it.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// `L[rho]` for any operator `rho` of matching dimension.
    pub fn apply(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        let mut out = commutator(&self.hamiltonian, rho) * (-I);
        out += self.dissipator(rho);
        out
    }

    /// Dissipative part from the coefficient form.
    pub fn dissipator(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        let d = rho.nrows();
        let mut out = ComplexMatrix::zeros(d, d);
        for (m, fm) in self.coupling_ops.iter().enumerate() {
            for (n, fn_) in self.coupling_ops.iter().enumerate() {
                let k = self.coefficients[(m, n)];
                if k.norm() == 0.0 {
                    continue;
                }
                let term = fm * rho * fn_ - anticommutator(&(fn_ * fm), rho) * real(0.5);
                out += term * k;
            }
        }
        out
    }

    /// Dissipative part from the diagonal (Kraus) form
    /// `sum_k V_k rho V_k^dag - 1/2 {V_k^dag V_k, rho}`.
    pub fn dissipator_from_kraus(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        let d = rho.nrows();
        self.kraus_ops.iter().fold(ComplexMatrix::zeros(d, d), |acc, v| {
            let vd = v.adjoint();
            acc + v * rho * &vd - anticommutator(&(&vd * v), rho) * real(0.5)
        })
    }

    /// Dual (Heisenberg-picture) generator `L^[x]` with `Tr(L[rho] x) = Tr(rho L^[x])`.
    pub fn apply_heisenberg(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let d = x.nrows();
        let mut out = commutator(&self.hamiltonian, x) * I;
        for (m, fm) in self.coupling_ops.iter().enumerate() {
            for (n, fn_) in self.coupling_ops.iter().enumerate() {
                let k = self.coefficients[(m, n)];
                if k.norm() == 0.0 {
                    continue;
                }
                out += (fn_ * x * fm - anticommutator(&(fn_ * fm), x) * real(0.5)) * k;
            }
        }
        debug_assert_eq!(out.nrows(), d);
        out
    }

    /// The generator that does nothing.
    pub fn zero(n: usize) -> Self {
        let d = 1 << n;
        Self {
            qubit_count: n,
            hamiltonian: ComplexMatrix::zeros(d, d),
            coupling_ops: Vec::new(),
            coefficients: ComplexMatrix::zeros(0, 0),
            kossakowski: KossakowskiMatrix { matrix: ComplexMatrix::zeros(3 * n, 3 * n) },
            kraus_ops: Vec::new(),
            degenerate: false,
        }
    }
}

/// Diagonal-form operators of the symmetric bath on `n` qubits:
/// `V_1 = sqrt(2(a+b)) (S_1 + i S_2)/2`, `V_2 = sqrt(2(a-b)) (S_1 - i S_2)/2`,
/// `V_3 = sqrt(c) S_3`.
pub fn kraus_operators(params: &EnvironmentParams, n: usize) -> Result<Vec<ComplexMatrix>> {
    params.validate()?;
    check_qubits(n)?;
    let s1 = global_spin(1, n)?;
    let s2 = global_spin(2, n)?;
    let s3 = global_spin(3, n)?;
    let raising = (&s1 + &s2 * I) * real(0.5);
    let lowering = (&s1 - &s2 * I) * real(0.5);
    Ok(vec![
        raising * real((2.0 * (params.a + params.b)).sqrt()),
        lowering * real((2.0 * (params.a - params.b)).sqrt()),
        s3 * real(params.c.sqrt()),
    ])
}

fn check_qubits(n: usize) -> Result<()> {
    if (1..=3).contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("qubit count {n} out of range 1..=3")))
    }
}

/// Generator of the symmetric bath on `n` qubits:
/// `L[rho] = -i (omega/2)[S_3, rho] + sum_ij A_ij (S_i rho S_j - 1/2 {S_j S_i, rho})`.
pub fn build_generator(params: &EnvironmentParams, n: usize) -> Result<LindbladGenerator> {
    params.validate()?;
    check_qubits(n)?;
    let spins = (1..=3).map(|i| global_spin(i, n)).collect::<Result<Vec<_>>>()?;
    Ok(LindbladGenerator {
        qubit_count: n,
        hamiltonian: &spins[2] * real(params.omega / 2.0),
        coupling_ops: spins,
        coefficients: params.rate_matrix(),
        kossakowski: symmetric_kossakowski_n(params, n)?,
        kraus_ops: kraus_operators(params, n)?,
        degenerate: params.is_degenerate(),
    })
}

/// Fully general three-qubit generator with an arbitrary PSD Kossakowski
/// matrix and per-qubit frequencies.
pub fn build_general_generator(
    kossakowski: &ComplexMatrix,
    omegas: [f64; 3],
) -> Result<LindbladGenerator> {
    if kossakowski.shape() != (9, 9) {
        return Err(Error::Validation(format!(
            "three-qubit Kossakowski matrix must be 9x9, got {:?}",
            kossakowski.shape()
        )));
    }
    let k = KossakowskiMatrix::new(kossakowski.clone())?;
    let n = 3;
    let mut ops = Vec::with_capacity(9);
    for a in 1..=n {
        for i in 1..=3 {
            ops.push(embed_single_qubit(&pauli(i)?, a, n)?);
        }
    }
    let z = pauli(3)?;
    let mut hamiltonian = ComplexMatrix::zeros(8, 8);
    for (a, w) in omegas.iter().enumerate() {
        hamiltonian += embed_single_qubit(&z, a + 1, n)? * real(w / 2.0);
    }
    // diagonal form: K = U diag(l) U^dag, V_k = sqrt(l_k) sum_m U_mk F_m
    let (vals, vecs) = hermitian_eigen(k.matrix());
    let kraus_ops = vals
        .iter()
        .enumerate()
        .filter(|(_, &l)| l > 0.0)
        .map(|(col, &l)| {
            ops.iter().enumerate().fold(ComplexMatrix::zeros(8, 8), |acc, (m, f)| {
                acc + f * (vecs[(m, col)] * l.sqrt())
            })
        })
        .collect();
    Ok(LindbladGenerator {
        qubit_count: n,
        hamiltonian,
        coupling_ops: ops,
        coefficients: k.matrix().clone(),
        kossakowski: k,
        kraus_ops,
        degenerate: false,
    })
}

/// One term `L_ab` of the pairwise split `L = sum_{a,b} L_ab`: the rate
/// matrix coupling `sigma^(a)` on the left to `sigma^(b)` on the right, plus
/// the qubit-`a` Hamiltonian when `a = b`.
#[derive(Clone, Debug)]
pub struct PairTerm {
    pub a: usize,
    pub b: usize,
    left: [ComplexMatrix; 3],
    right: [ComplexMatrix; 3],
    rates: ComplexMatrix,
    hamiltonian: Option<ComplexMatrix>,
}

impl PairTerm {
    pub fn apply(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        let d = rho.nrows();
        let mut out = match &self.hamiltonian {
            Some(h) => commutator(h, rho) * (-I),
            None => ComplexMatrix::zeros(d, d),
        };
        for i in 0..3 {
            for j in 0..3 {
                let k = self.rates[(i, j)];
                if k.norm() == 0.0 {
                    continue;
                }
                let (si, sj) = (&self.left[i], &self.right[j]);
                out += (si * rho * sj - anticommutator(&(sj * si), rho) * real(0.5)) * k;
            }
        }
        out
    }
}

/// The pairwise split of the `n`-qubit symmetric generator.
#[derive(Clone, Debug)]
pub struct PairwiseDecomposition {
    pub qubit_count: usize,
    pub terms: BTreeMap<(usize, usize), PairTerm>,
}

impl PairwiseDecomposition {
    /// `sum_{a,b} L_ab[rho]`.
    pub fn apply(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        let d = rho.nrows();
        self.terms
            .values()
            .fold(ComplexMatrix::zeros(d, d), |acc, t| acc + t.apply(rho))
    }

    /// `(L_aa + L_bb + L_ab + L_ba)[rho]`: the two-qubit generator on `a, b`.
    pub fn apply_pair_block(&self, a: usize, b: usize, rho: &ComplexMatrix) -> ComplexMatrix {
        [(a, a), (b, b), (a, b), (b, a)]
            .iter()
            .map(|key| self.terms[key].apply(rho))
            .fold(ComplexMatrix::zeros(rho.nrows(), rho.ncols()), |acc, m| acc + m)
    }

    pub fn term(&self, a: usize, b: usize) -> &PairTerm {
        &self.terms[&(a, b)]
    }
}

pub fn pairwise_decomposition(
    params: &EnvironmentParams,
    n: usize,
) -> Result<PairwiseDecomposition> {
    params.validate()?;
    check_qubits(n)?;
    let local = |a: usize| -> Result<[ComplexMatrix; 3]> {
        Ok([
            embed_single_qubit(&pauli(1)?, a, n)?,
            embed_single_qubit(&pauli(2)?, a, n)?,
            embed_single_qubit(&pauli(3)?, a, n)?,
        ])
    };
    let mut terms = BTreeMap::new();
    for a in 1..=n {
        for b in 1..=n {
            let hamiltonian = (a == b)
                .then(|| embed_single_qubit(&pauli(3)?, a, n).map(|z| z * real(params.omega / 2.0)))
                .transpose()?;
            terms.insert(
                (a, b),
                PairTerm {
                    a,
                    b,
                    left: local(a)?,
                    right: local(b)?,
                    rates: params.rate_matrix(),
                    hamiltonian,
                },
            );
        }
    }
    Ok(PairwiseDecomposition { qubit_count: n, terms })
}

/// Product of `n` copies of a one-qubit state.
pub fn tensor_power(single: &ComplexMatrix, n: usize) -> ComplexMatrix {
    (1..n).fold(single.clone(), |acc, _| kron(&acc, single))
}

/// `(1 + r sigma_z) / 2` with `r = b/a`.
pub fn stationary_single_qubit_matrix(params: &EnvironmentParams) -> ComplexMatrix {
    let r = params.r_infinity();
    (identity(2) + pauli(3).expect("valid") * real(r)) * real(0.5)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{approx_eq, max_abs, max_abs_diff, partial_trace_matrix};
    use crate::random::{random_density_matrix, random_hermitian, seeded_rng};

    fn params(a: f64, b: f64, c: f64) -> EnvironmentParams {
        EnvironmentParams::new(a, b, c, 1.0).unwrap()
    }

    #[test]
    fn b_zero_blocks_are_diagonal() {
        let k = symmetric_kossakowski(&params(1.0, 0.0, 1.0)).unwrap();
        for a in 1..=3 {
            for b in 1..=3 {
                assert!(approx_eq(&k.block(a, b), &identity(3), 0.0));
            }
        }
    }

    #[test]
    fn kossakowski_equals_kron_with_ones_projector() {
        let p = params(1.3, -0.4, 0.7);
        let k = symmetric_kossakowski(&p).unwrap();
        let pvec = ComplexMatrix::from_element(3, 3, real(1.0 / 3.0));
        let other = kron(&(pvec * real(3.0)), &p.rate_matrix());
        assert!(max_abs_diff(k.matrix(), &other) <= 1e-14);
    }

    #[test]
    fn kossakowski_is_psd_for_valid_params() {
        for (a, b, c) in [(1.0, 0.0, 1.0), (1.0, 0.99, 0.0), (2.0, -1.5, 3.0), (0.5, 0.5, 0.1)] {
            let k = symmetric_kossakowski(&params(a, b, c)).unwrap();
            assert!(hermitian_eigen(k.matrix()).0[0] >= -1e-10);
        }
    }

    #[test]
    fn rejects_b_beyond_a() {
        let err = EnvironmentParams::new(1.0, 1.2, 0.0, 1.0).unwrap_err();
        assert!(err.to_string().contains("|b| < a"), "{err}");
        assert!(EnvironmentParams::new(0.0, 0.0, 1.0, 1.0).is_err());
        assert!(EnvironmentParams::new(1.0, 0.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn boundary_params_are_flagged() {
        let p = params(1.0, 1.0, 1.0);
        assert!(p.is_degenerate());
        let g = build_generator(&p, 2).unwrap();
        assert!(g.is_degenerate());
        assert!(matches!(p.require_nondegenerate(), Err(Error::Degenerate(_))));
        assert!(params(1.0, 0.5, 0.0).is_degenerate());
        assert!(!params(1.0, 0.5, 1.0).is_degenerate());
    }

    #[test]
    fn unital_case_fixes_maximally_mixed() {
        for n in 1..=3 {
            let g = build_generator(&params(0.8, 0.0, 0.3), n).unwrap();
            let d = 1 << n;
            assert!(max_abs(&g.apply(&(identity(d) * real(1.0 / d as f64)))) < 1e-12);
        }
    }

    #[test]
    fn product_of_single_qubit_fixed_points_is_stationary() {
        for b in [0.0, 0.5, -0.5, 0.9, 0.99] {
            let p = params(1.0, b, 1.0);
            let single = stationary_single_qubit_matrix(&p);
            for n in 1..=3 {
                let g = build_generator(&p, n).unwrap();
                let res = max_abs(&g.apply(&tensor_power(&single, n)));
                assert!(res < 1e-11, "b={b} n={n}: {res:e}");
            }
        }
    }

    #[test]
    fn trace_and_hermiticity_preserved() {
        let mut rng = seeded_rng(1);
        for n in 1..=3 {
            let g = build_generator(&params(1.0, 0.3, 0.5), n).unwrap();
            for _ in 0..100 {
                let h = random_hermitian(1 << n, &mut rng);
                let l = g.apply(&h);
                assert!(l.trace().norm() < 1e-11);
                assert!(hermiticity_defect(&l) < 1e-11);
            }
        }
    }

    #[test]
    fn heisenberg_dual() {
        let mut rng = seeded_rng(8);
        let g = build_generator(&params(1.0, 0.6, 0.4), 2).unwrap();
        for _ in 0..10 {
            let rho = random_density_matrix(2, &mut rng).into_matrix();
            let x = random_hermitian(4, &mut rng);
            let lhs = (g.apply(&rho) * &x).trace();
            let rhs = (&rho * g.apply_heisenberg(&x)).trace();
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn general_generator_matches_symmetric() {
        let p = params(1.0, 0.7, 0.4);
        let k = symmetric_kossakowski(&p).unwrap();
        let general = build_general_generator(k.matrix(), [p.omega; 3]).unwrap();
        let symmetric = build_generator(&p, 3).unwrap();
        let mut rng = seeded_rng(17);
        for _ in 0..50 {
            let rho = random_density_matrix(3, &mut rng).into_matrix();
            assert!(max_abs_diff(&general.apply(&rho), &symmetric.apply(&rho)) < 1e-11);
            let vform = general.dissipator_from_kraus(&rho);
            assert!(max_abs_diff(&vform, &general.dissipator(&rho)) < 1e-11);
        }
    }

    #[test]
    fn zero_kossakowski_is_hamiltonian() {
        let g = build_general_generator(&ComplexMatrix::zeros(9, 9), [1.0, 2.0, 3.0]).unwrap();
        assert!(g.kraus_ops().is_empty());
        let mut rng = seeded_rng(4);
        let rho = random_density_matrix(3, &mut rng).into_matrix();
        let l = g.apply(&rho);
        // [H, rho] has zero trace and is orthogonal to rho in HS sense
        assert!(l.trace().norm() < 1e-12);
        assert!((&l * &rho).trace().norm() < 1e-12);
    }

    #[test]
    fn non_psd_kossakowski_rejected() {
        let mut k = ComplexMatrix::identity(9, 9);
        k[(4, 4)] = real(-0.1);
        let err = build_general_generator(&k, [1.0; 3]).unwrap_err();
        assert!(err.to_string().contains("-1e-1"), "{err}");
    }

    #[test]
    fn kraus_special_cases() {
        let p = params(0.5, 0.0, 1.0);
        let v = kraus_operators(&p, 2).unwrap();
        let s1 = global_spin(1, 2).unwrap();
        let s2 = global_spin(2, 2).unwrap();
        assert!(approx_eq(&v[0], &((&s1 + &s2 * I) * real(0.5)), 1e-15));
        assert!(approx_eq(&v[1], &((&s1 - &s2 * I) * real(0.5)), 1e-15));
        let v = kraus_operators(&params(1.0, 0.2, 0.0), 3).unwrap();
        assert_eq!(max_abs(&v[2]), 0.0);
    }

    #[test]
    fn kraus_form_matches_rate_form() {
        let mut rng = seeded_rng(21);
        let g = build_generator(&params(1.0, -0.35, 0.6), 3).unwrap();
        let worst = (0..50)
            .map(|_| {
                let rho = random_density_matrix(3, &mut rng).into_matrix();
                max_abs_diff(&g.dissipator(&rho), &g.dissipator_from_kraus(&rho))
            })
            .fold(0.0, f64::max);
        assert!(worst < 1e-11, "{worst:e}");
    }

    #[test]
    fn pairwise_terms_sum_to_generator() {
        let p = params(1.0, 0.45, 0.8);
        let g = build_generator(&p, 3).unwrap();
        let split = pairwise_decomposition(&p, 3).unwrap();
        let mut rng = seeded_rng(12);
        for _ in 0..20 {
            let rho = random_density_matrix(3, &mut rng).into_matrix();
            assert!(max_abs_diff(&split.apply(&rho), &g.apply(&rho)) < 1e-11);
        }
    }

    #[test]
    fn pair_block_annihilates_stationary_pair() {
        let p = params(1.0, 0.8, 0.5);
        let split = pairwise_decomposition(&p, 3).unwrap();
        let single = stationary_single_qubit_matrix(&p);
        let mut rng = seeded_rng(13);
        let sigma = random_density_matrix(1, &mut rng).into_matrix();
        let rho = kron(&kron(&single, &single), &sigma);
        assert!(max_abs(&split.apply_pair_block(1, 2, &rho)) < 1e-11);
        let rho = kron(&kron(&sigma, &single), &single);
        assert!(max_abs(&split.apply_pair_block(2, 3, &rho)) < 1e-11);
    }

    #[test]
    fn diagonal_pair_term_is_single_qubit_generator() {
        let p = params(1.0, 0.3, 0.2);
        let split = pairwise_decomposition(&p, 3).unwrap();
        let single = build_generator(&p, 1).unwrap();
        let mut rng = seeded_rng(14);
        let rest = random_density_matrix(2, &mut rng).into_matrix();
        let sigma = random_density_matrix(1, &mut rng).into_matrix();
        let out = split.term(3, 3).apply(&kron(&rest, &sigma));
        let expected = kron(&rest, &single.apply(&sigma));
        assert!(max_abs_diff(&out, &expected) < 1e-12);
        let reduced = partial_trace_matrix(&out, &[3]).unwrap();
        assert!(max_abs_diff(&reduced, &single.apply(&sigma)) < 1e-12);
    }
}
