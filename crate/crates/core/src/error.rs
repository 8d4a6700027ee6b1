use thiserror::Error;

/// Errors raised anywhere in the simulator, engine, or training code.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("qubit {qubit} out of range for a {num_qubits}-qubit register")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },

    #[error("target qubit {0} listed more than once")]
    DuplicateTarget(usize),

    #[error("control qubit {0} is also a target")]
    ControlInTargets(usize),

    #[error("control value must be 0 or 1, got {0}")]
    InvalidControlValue(u8),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("matrix or vector contains a non-finite entry")]
    NonFinite,

    #[error("matrix is not unitary: max |U^dag U - I| = {deviation:e}")]
    NonUnitary { deviation: f64 },

    #[error("matrix is not Hermitian: max |M - M^dag| = {deviation:e}")]
    NonHermitian { deviation: f64 },

    #[error("register of {requested} qubits exceeds the {max}-qubit cap")]
    TooManyQubits { requested: usize, max: usize },

    #[error("state is not normalized: |norm - 1| = {deviation:e}")]
    NotNormalized { deviation: f64 },

    #[error("input vector is zero")]
    ZeroVector,

    #[error("expectation value has imaginary residue {0:e}")]
    ImaginaryResidue(f64),

    #[error("step index {step} out of range 1..={d}")]
    StepOutOfRange { step: usize, d: usize },

    #[error("trajectory index {h} out of range for d = {d}")]
    TrajectoryOutOfRange { h: usize, d: usize },

    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error("cost exponents must be >= 1 (alpha = {alpha}, beta = {beta})")]
    InvalidExponent { alpha: f64, beta: f64 },

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("training diverged at epoch {epoch}: loss = {loss}")]
    Diverged { epoch: usize, loss: f64 },

    #[error("expected {expected} weak-learner angles, got {found}")]
    LearnerCount { expected: usize, found: usize },

    #[error("learner angles are not additively realizable: trajectory {h} off by {residual:e}")]
    UnrealizableLearners { h: usize, residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
