//! Seeded random states and operators for sampling-based checks.

use crate::algebra::{real, ComplexMatrix, DensityMatrix, I};
use crate::expm::expm;
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;

pub fn seeded_rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Matrix with independent standard complex Gaussian entries.
pub fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    })
}

/// Hilbert-Schmidt distributed full-rank state on `n` qubits.
pub fn random_density_matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DensityMatrix {
    let d = 1 << n;
    let g = ginibre(d, d, rng);
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::from_numeric(m * real(1.0 / tr)).expect("Ginibre states are valid")
}

pub fn random_pure_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DensityMatrix {
    let d = 1 << n;
    let v = ginibre(d, 1, rng);
    let v = &v * real(1.0 / v.norm());
    DensityMatrix::from_numeric(&v * v.adjoint()).expect("pure states are valid")
}

pub fn random_hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let g = ginibre(dim, dim, rng);
    (&g + g.adjoint()) * real(0.5)
}

/// `exp(i H)` for a random Hermitian `H`.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    expm(&(random_hermitian(dim, rng) * I))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{approx_eq, identity};

    #[test]
    fn unitaries_are_unitary() {
        let mut rng = seeded_rng(3);
        let u = random_unitary(4, &mut rng);
        assert!(approx_eq(&(&u * u.adjoint()), &identity(4), 1e-12));
    }

    #[test]
    fn sampling_is_reproducible() {
        let a = random_density_matrix(2, &mut seeded_rng(42));
        let b = random_density_matrix(2, &mut seeded_rng(42));
        assert_eq!(a, b);
    }
}
