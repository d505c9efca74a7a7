//! Exact state-vector simulation of DNA base pairing modeled as multi-qubit
//! entanglement swapping.
//!
//! The pipeline for a base pair is:
//!
//! 1. [`encodings`]: each nucleotide's Watson-Crick edge starts in a 3-qubit
//!    basis state;
//! 2. [`protocol::recognize`]: a recognition unitary spreads it over its
//!    tautomer forms (intrabase entanglement);
//! 3. [`protocol::assemble_pair`]: template and incoming base are joined with
//!    bonded atoms adjacent;
//! 4. [`protocol::swap`]: an entangler, two Bell measurements and conditional
//!    Pauli-X corrections turn intrabase into interbase entanglement;
//! 5. [`protocol::canonical_table`] and [`metrics`] summarize and check the
//!    resulting outcome ensemble.
//!
//! All numeric types are generic over [`Real`] (`f64` or `f32`); the aliases
//! below fix the scalar for the common cases.

pub mod encodings;
pub mod error;
pub mod gates;
pub mod linalg;
pub mod metrics;
pub mod protocol;
pub mod reference;
pub mod scalar;
pub mod statevec;

pub use error::{Error, Result};
pub use scalar::Real;

pub type C64 = num_complex::Complex<f64>;
pub type C32 = num_complex::Complex<f32>;

pub type StateVectorF64 = statevec::StateVector<f64>;
pub type StateVectorF32 = statevec::StateVector<f32>;
pub type DensityMatrixF64 = statevec::DensityMatrix<f64>;
pub type DensityMatrixF32 = statevec::DensityMatrix<f32>;
pub type GateF64 = gates::Gate<f64>;
pub type GateF32 = gates::Gate<f32>;
pub type MatrixF64 = linalg::Matrix<f64>;
pub type ConfigF64 = protocol::ProtocolConfig<f64>;
pub type ConfigF32 = protocol::ProtocolConfig<f32>;
pub type EnsembleF64 = protocol::Ensemble<f64>;
pub type EnsembleF32 = protocol::Ensemble<f32>;
pub type OutcomeBranchF64 = protocol::OutcomeBranch<f64>;
pub type CanonicalRowF64 = protocol::CanonicalRow<f64>;
