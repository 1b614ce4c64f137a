//! Markovian open dynamics of one to three qubits in a permutation-symmetric
//! bath, their asymptotic states, and the entanglement an ancilla can leave
//! behind after it is traced out.
//!
//! The runnable programs in `examples/` show each capability end to end.

pub mod algebra;
pub mod asymptotic;
pub mod cli;
pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod expm;
pub mod generator;
pub mod io;
pub mod protocol;
pub mod random;
pub mod verify;

pub use algebra::{ComplexMatrix, DensityMatrix};
pub use error::{Error, Result};
pub use generator::{build_generator, EnvironmentParams, LindbladGenerator};
