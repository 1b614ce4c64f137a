use super::{identity, kron_all, real, ComplexMatrix, I};
use crate::error::{Error, Result};

/// Pauli matrix by index: 0 is the identity, 1..=3 are sigma_x, sigma_y, sigma_z
/// in the sigma_z eigenbasis with `sigma_z |0> = +|0>`.
pub fn pauli(index: usize) -> Result<ComplexMatrix> {
    let zero = real(0.0);
    let one = real(1.0);
    let entries = match index {
        0 => [one, zero, zero, one],
        1 => [zero, one, one, zero],
        2 => [zero, -I, I, zero],
        3 => [one, zero, zero, -one],
        _ => {
            return Err(Error::InvalidArgument(format!(
                "pauli index {index} out of range 0..=3"
            )))
        }
    };
    Ok(ComplexMatrix::from_row_slice(2, 2, &entries))
}

/// `op` acting on `qubit` (1-based) of an `n`-qubit register.
pub fn embed_single_qubit(op: &ComplexMatrix, qubit: usize, n: usize) -> Result<ComplexMatrix> {
    if op.shape() != (2, 2) {
        return Err(Error::InvalidArgument(format!(
            "single-qubit operator must be 2x2, got {:?}",
            op.shape()
        )));
    }
    if qubit == 0 || qubit > n {
        return Err(Error::InvalidArgument(format!(
            "qubit {qubit} out of range 1..={n}"
        )));
    }
    let id = identity(2);
    let factors: Vec<&ComplexMatrix> = (1..=n).map(|q| if q == qubit { op } else { &id }).collect();
    Ok(kron_all(factors))
}

/// Collective spin `S_i = sum_a sigma_i^(a)` on `n` qubits.
pub fn global_spin(i: usize, n: usize) -> Result<ComplexMatrix> {
    if !(1..=3).contains(&i) {
        return Err(Error::InvalidArgument(format!("spin component {i} out of range 1..=3")));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("qubit count must be positive".into()));
    }
    let s = pauli(i)?;
    let dim = 1 << n;
    (1..=n).try_fold(ComplexMatrix::zeros(dim, dim), |acc, q| {
        Ok(acc + embed_single_qubit(&s, q, n)?)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{approx_eq, commutator};
    use nalgebra::DVector;
    use num_complex::Complex64;

    fn basis(dim: usize, k: usize) -> DVector<Complex64> {
        DVector::from_fn(dim, |i, _| real(if i == k { 1.0 } else { 0.0 }))
    }

    #[test]
    fn sigma_z_eigenbasis() {
        let z = pauli(3).unwrap();
        assert_eq!(&z * basis(2, 0), basis(2, 0));
    }

    #[test]
    fn paulis_are_traceless() {
        for i in 1..=3 {
            assert_eq!(pauli(i).unwrap().trace(), real(0.0));
        }
    }

    #[test]
    fn pauli_product() {
        let xy = pauli(1).unwrap() * pauli(2).unwrap();
        assert!(approx_eq(&xy, &(pauli(3).unwrap() * I), 0.0));
    }

    #[test]
    fn pauli_index_out_of_range() {
        assert!(matches!(pauli(4), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn embedded_z_counts_up_spins() {
        let z = pauli(3).unwrap();
        let total = (1..=3)
            .map(|q| embed_single_qubit(&z, q, 3).unwrap())
            .fold(ComplexMatrix::zeros(8, 8), |a, b| a + b);
        let v = basis(8, 0);
        assert_eq!(&total * &v, v * real(3.0));
    }

    #[test]
    fn embedding_properties() {
        assert_eq!(embed_single_qubit(&pauli(1).unwrap(), 2, 3).unwrap().trace(), real(0.0));
        for a in 1..=3 {
            assert_eq!(embed_single_qubit(&identity(2), a, 3).unwrap(), identity(8));
        }
        assert!(embed_single_qubit(&identity(2), 4, 3).is_err());
        assert!(embed_single_qubit(&identity(2), 0, 3).is_err());
        assert!(embed_single_qubit(&identity(4), 1, 3).is_err());
    }

    #[test]
    fn global_spin_algebra() {
        assert_eq!(global_spin(3, 1).unwrap(), pauli(3).unwrap());
        let s1 = global_spin(1, 3).unwrap();
        let s2 = global_spin(2, 3).unwrap();
        let s3 = global_spin(3, 3).unwrap();
        assert!(approx_eq(&commutator(&s1, &s2), &(s3.clone() * (I * 2.0)), 1e-14));
        let v = basis(8, 0);
        assert_eq!(&s3 * &v, v * real(3.0));
    }
}
