//! Operators commuting with the collective spins of three qubits.

use super::{embed_single_qubit, identity, pauli, real, ComplexMatrix};

/// Qubit pairs `(a, b)` with `a < b` in the fixed order used throughout.
pub const PAIRS: [(usize, usize); 3] = [(1, 2), (1, 3), (2, 3)];

/// Levi-Civita symbol on indices 1..=3.
pub fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1.0,
        (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1.0,
        _ => 0.0,
    }
}

/// Projector onto `(|01> - |10>)/sqrt(2)`.
pub fn singlet_projector() -> ComplexMatrix {
    let mut p = ComplexMatrix::zeros(4, 4);
    p[(1, 1)] = real(0.5);
    p[(2, 2)] = real(0.5);
    p[(1, 2)] = real(-0.5);
    p[(2, 1)] = real(-0.5);
    p
}

/// `S^(ab) = sum_i sigma_i^(a) sigma_i^(b)` on `n` qubits.
pub fn pair_operator(a: usize, b: usize, n: usize) -> ComplexMatrix {
    (1..=3)
        .map(|i| {
            let s = pauli(i).expect("valid index");
            embed_single_qubit(&s, a, n).expect("qubit in range")
                * embed_single_qubit(&s, b, n).expect("qubit in range")
        })
        .fold(ComplexMatrix::zeros(1 << n, 1 << n), |acc, m| acc + m)
}

/// `P^(ab) = (1 - S^(ab)) / 4`: singlet on qubits `a, b`, identity elsewhere.
pub fn pair_singlet(a: usize, b: usize, n: usize) -> ComplexMatrix {
    (identity(1 << n) - pair_operator(a, b, n)) * real(0.25)
}

/// `S = sum eps_ijk sigma_i^(1) sigma_j^(2) sigma_k^(3)`.
pub fn triple_product() -> ComplexMatrix {
    let mut s = ComplexMatrix::zeros(8, 8);
    for i in 1..=3 {
        for j in 1..=3 {
            for k in 1..=3 {
                let eps = levi_civita(i, j, k);
                if eps == 0.0 {
                    continue;
                }
                let term = embed_single_qubit(&pauli(i).unwrap(), 1, 3).unwrap()
                    * embed_single_qubit(&pauli(j).unwrap(), 2, 3).unwrap()
                    * embed_single_qubit(&pauli(k).unwrap(), 3, 3).unwrap();
                s += term * real(eps);
            }
        }
    }
    s
}

/// The three-qubit invariant operators, pair-indexed in [`PAIRS`] order.
#[derive(Clone, Debug)]
pub struct InvariantOperatorSet {
    pub s_ab: [ComplexMatrix; 3],
    pub s: ComplexMatrix,
    pub t: ComplexMatrix,
    pub p_ab: [ComplexMatrix; 3],
    pub p: ComplexMatrix,
    pub q: ComplexMatrix,
}

impl InvariantOperatorSet {
    fn index(a: usize, b: usize) -> usize {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        PAIRS
            .iter()
            .position(|&p| p == (a, b))
            .unwrap_or_else(|| panic!("({a},{b}) is not a pair of distinct qubits in 1..=3"))
    }

    /// `S^(ab)`, symmetric in its arguments.
    pub fn pair(&self, a: usize, b: usize) -> &ComplexMatrix {
        &self.s_ab[Self::index(a, b)]
    }

    pub fn pair_projection(&self, a: usize, b: usize) -> &ComplexMatrix {
        &self.p_ab[Self::index(a, b)]
    }
}

pub fn invariant_operators() -> InvariantOperatorSet {
    let s_ab = PAIRS.map(|(a, b)| pair_operator(a, b, 3));
    let t = s_ab.iter().fold(ComplexMatrix::zeros(8, 8), |acc, m| acc + m);
    let p_ab = PAIRS.map(|(a, b)| pair_singlet(a, b, 3));
    let p = p_ab.iter().fold(ComplexMatrix::zeros(8, 8), |acc, m| acc + m) * real(2.0 / 3.0);
    let q = identity(8) - &p;
    InvariantOperatorSet { s_ab, s: triple_product(), t, p_ab, p, q }
}

/// Max-abs residuals of the algebraic relations among the invariant operators.
///
/// The `literal_*` fields measure the commutators in the form
/// `[S^(ab), S^(ac)] = 2i eps_abc S^(bc)` and
/// `[S^(ab), S] = 4i (S^(bc) - S^(ac))`, which do not hold; the
/// `pair_commutator` and `triple_commutator` fields measure
/// `[S^(ab), S^(ac)] = 2i eps_abc S` and
/// `[S^(ab), S] = 4i eps_abc (S^(bc) - S^(ac))`, which do.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IdentityResiduals {
    pub literal_pair_commutator: f64,
    pub pair_commutator: f64,
    pub pair_anticommutator: f64,
    pub literal_triple_commutator: f64,
    pub triple_commutator: f64,
    pub center: f64,
    pub squares: f64,
    pub complement: f64,
}

impl IdentityResiduals {
    /// Worst residual over the relations that hold.
    pub fn valid_max(&self) -> f64 {
        [
            self.pair_commutator,
            self.pair_anticommutator,
            self.triple_commutator,
            self.center,
            self.squares,
            self.complement,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

pub fn identity_residuals() -> IdentityResiduals {
    use super::{anticommutator, commutator, max_abs, max_abs_diff, I};
    let ops = invariant_operators();
    let mut r = IdentityResiduals {
        literal_pair_commutator: 0.0,
        pair_commutator: 0.0,
        pair_anticommutator: 0.0,
        literal_triple_commutator: 0.0,
        triple_commutator: 0.0,
        center: 0.0,
        squares: 0.0,
        complement: 0.0,
    };
    for a in 1..=3usize {
        for b in 1..=3usize {
            for c in 1..=3usize {
                if a == b || b == c || a == c {
                    continue;
                }
                let eps = levi_civita(a, b, c);
                let (sab, sac, sbc) = (ops.pair(a, b), ops.pair(a, c), ops.pair(b, c));
                let comm = commutator(sab, sac);
                r.literal_pair_commutator =
                    r.literal_pair_commutator.max(max_abs_diff(&comm, &(sbc * (I * 2.0 * eps))));
                r.pair_commutator = r.pair_commutator.max(max_abs_diff(&comm, &(&ops.s * (I * 2.0 * eps))));
                r.pair_anticommutator = r
                    .pair_anticommutator
                    .max(max_abs_diff(&anticommutator(sab, sac), &(sbc * real(2.0))));
            }
        }
    }
    for (a, b) in PAIRS {
        let c = 6 - a - b;
        let comm = commutator(ops.pair(a, b), &ops.s);
        let diff = ops.pair(b, c) - ops.pair(a, c);
        r.literal_triple_commutator = r.literal_triple_commutator.max(max_abs_diff(&comm, &(&diff * (I * 4.0))));
        r.triple_commutator = r
            .triple_commutator
            .max(max_abs_diff(&comm, &(&diff * (I * 4.0 * levi_civita(a, b, c)))));
    }
    for s in ops.s_ab.iter().chain([&ops.s]) {
        r.center = r.center.max(max_abs(&commutator(&ops.t, s)));
    }
    for s in &ops.s_ab {
        r.squares = r.squares.max(max_abs_diff(&(s * s), &(identity(8) * real(3.0) - s * real(2.0))));
        r.complement = r.complement.max(max_abs_diff(&(&ops.q * s), &ops.q));
    }
    r.squares = r
        .squares
        .max(max_abs_diff(&(&ops.s * &ops.s), &((identity(8) * real(3.0) - &ops.t) * real(2.0))));
    r.complement = r.complement.max(max_abs(&(&ops.q * &ops.s)));
    r
}
