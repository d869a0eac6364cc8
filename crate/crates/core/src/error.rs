use thiserror::Error;

/// Errors produced by model construction, spectrum evaluation, and the dense oracle.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("operator size mismatch: expected {expected} qubits, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("qubit index {qubit} out of range for {n_qubits} qubits")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },

    #[error("qubit {qubit} carries both an X and a Z factor; Pauli-Y is not supported")]
    PauliYUnsupported { qubit: usize },

    #[error("generators {i} and {j} do not commute")]
    NonCommutingGenerators { i: usize, j: usize },

    #[error("generator {index} is a product of earlier generators; supply an independent set")]
    DependentGenerators { index: usize },

    #[error("coupling {index} has |t| = {value} > 1; couplings must satisfy |t| <= 1")]
    CouplingOutOfRange { index: usize, value: f64 },

    #[error("sector tables disagree: {left} vs {right} generators")]
    TableShapeMismatch { left: usize, right: usize },

    #[error("array length {len} is not a power of two")]
    BadTableLength { len: usize },

    #[error("{k} generators would need a 2^{k}-entry table (limit k <= {max}); restrict to a fragment or use a closed-form limit branch")]
    MemoryGuard { k: usize, max: usize },

    #[error("{what} exceeds the enumeration guard ({limit})")]
    EnumerationGuard { what: String, limit: usize },

    #[error("field strength is undefined for beta*lambda_A = {value}; it must be positive (or infinite)")]
    FieldStrengthUndefined { value: f64 },

    #[error("parameters must be finite for the general evaluator; use a closed-form limit branch")]
    NonFiniteParameter,

    #[error("sector sum is {sum}; cannot normalize an empty or sign-indefinite spectrum")]
    InvalidSpectrum { sum: f64 },

    #[error("invalid builder argument: {0}")]
    BuilderArg(String),

    #[error("{n_qubits} qubits exceed the dense-oracle limit of {max}")]
    OracleGuard { n_qubits: usize, max: usize },

    #[error("matrix is not symmetric (max asymmetry {dev:.3e})")]
    AsymmetricMatrix { dev: f64 },

    #[error("verification mismatch in {quantity}: deviation {deviation:.3e} exceeds tolerance {tolerance:.3e}")]
    VerificationMismatch {
        quantity: String,
        deviation: f64,
        tolerance: f64,
    },

    #[error("model error: {0}")]
    Model(String),
}

pub type Result<T> = std::result::Result<T, Error>;
