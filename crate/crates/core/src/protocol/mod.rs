//! Recognition unitary, pair assembly, the five-step swap and its outcome
//! ensembles.
//!
//! Register layout after assembly (1-based, template base first):
//!
//! ```text
//! position   1  2  3  4  5  6
//! base       t1 i1 t2 i2 t3 i3      t = template, i = incoming
//! ```
//!
//! so that hydrogen-bonded atoms sit next to each other: bonds (1,2), (3,4), (5,6).

mod canonical;
mod recognition;
mod sample;
mod swap;

pub use canonical::{canonical_table, normalize_phase, CanonicalRow};
pub use recognition::{
    assemble_pair, build_recognition_unitary, recognition_targets, recognize, PAIR_INTERLEAVE,
};
pub use sample::{sample, SampleCounts, SampleRow};
pub use swap::{run_pair, swap, Checkpoint, Corrections, Ensemble, OutcomeBranch, Stage};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Which two-qubit gate step 1 applies to qubits (3, 5).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Entangler {
    /// Hadamard on the equal-bit subspace, identity elsewhere.
    #[default]
    Equality,
    /// Identity; only useful as a broken-model control.
    Identity,
}

/// Candidate order for the Gram-Schmidt completion of the recognition unitary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CompletionOrder {
    #[default]
    Ascending,
    Descending,
}

/// Order of the two Bell-measurement rounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StepOrder {
    /// Measure (3,4) and correct, then measure (1,2) and correct.
    #[default]
    MiddleBondFirst,
    /// Measure (1,2) and correct first.
    OuterBondFirst,
}

/// Protocol parameters. `Default` reproduces the published model exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProtocolConfig<T: Real> {
    /// Superposition angle, default `arccos(√2/√3)`.
    pub theta: T,
    /// Second circuit angle, default `arccos(1/√2)`.
    pub phi: T,
    /// Measurement branches below this probability are dropped.
    pub prune_threshold: T,
    pub entangler: Entangler,
    pub completion: CompletionOrder,
    pub order: StepOrder,
}

impl<T: Real> Default for ProtocolConfig<T> {
    fn default() -> Self {
        Self {
            theta: (T::lit(2.0).sqrt() / T::lit(3.0).sqrt()).acos(),
            phi: T::FRAC_1_SQRT_2().acos(),
            prune_threshold: T::lit(T::PRUNE),
            entangler: Entangler::default(),
            completion: CompletionOrder::default(),
            order: StepOrder::default(),
        }
    }
}

impl<T: Real> ProtocolConfig<T> {
    pub fn validate(&self) -> Result<()> {
        for angle in [self.theta, self.phi] {
            if !angle.is_finite() {
                return Err(Error::NonFiniteAngle(angle.as_f64()));
            }
        }
        Ok(())
    }
}
