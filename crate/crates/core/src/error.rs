use thiserror::Error;

/// Errors raised by state construction, gate application and the protocol engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("state has {len} amplitudes, expected 2^{num_qubits}")]
    AmplitudeCount { num_qubits: usize, len: usize },
    #[error("state norm {norm} deviates from 1")]
    NotNormalized { norm: f64 },
    #[error("register must hold at least one qubit")]
    EmptyRegister,
    #[error("qubit register of {0} qubits is too large")]
    TooManyQubits(usize),
    #[error("permutation is not a bijection on 1..={0}")]
    InvalidPermutation(usize),
    #[error("gate {gate} acts on {arity} qubits but {targets} targets were given")]
    ArityMismatch {
        gate: String,
        arity: usize,
        targets: usize,
    },
    #[error("qubit {qubit} is outside 1..={num_qubits}")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },
    #[error("qubit {0} listed more than once")]
    DuplicateQubit(usize),
    #[error("matrix of dimension {0} is not a power of two")]
    BadDimension(usize),
    #[error("gate {name} is not unitary (residual {residual})")]
    NotUnitary { name: String, residual: f64 },
    #[error("measurement basis is not orthonormal (residual {residual})")]
    NonOrthonormalBasis { residual: f64 },
    #[error("density matrix invalid: {0}")]
    InvalidDensity(String),
    #[error("qubit subset must be non-empty")]
    EmptySubset,
    #[error("entropy cut must be a non-empty strict subset")]
    TrivialCut,
    #[error("angle {0} is not finite")]
    NonFiniteAngle(f64),
    #[error("no {edge} encoding is defined for {base}")]
    UnsupportedEncoding { base: String, edge: &'static str },
    #[error("operation requires a Hoogsteen-edge pattern")]
    WrongEdge,
    #[error("ket |{ket}> is not in the support of |{base}>_WC,Q")]
    OutsideSupport { base: String, ket: String },
    #[error("pair {0} is not supported by the swap protocol")]
    UnsupportedPair(String),
    #[error("swap protocol needs a 6-qubit register, got {0}")]
    WrongRegisterSize(usize),
    #[error("shot count must be positive")]
    ZeroShots,
    #[error("no reference data for pair {0}")]
    UnknownReference(String),
    #[error("orthonormal completion failed")]
    CompletionFailed,
    #[error("invalid bit pattern {0:?}")]
    BadPattern(String),
}

pub type Result<T> = std::result::Result<T, Error>;
