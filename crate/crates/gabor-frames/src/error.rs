//! Error type shared by all modules of the crate.

/// Errors produced by the operations in this crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GaborError {
    /// A dimension argument was zero or otherwise unusable.
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    /// Two operands do not have compatible shapes.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A residue index lies outside `[0, n)`.
    #[error("index {index} out of range for Z_{n}")]
    IndexOutOfRange { index: usize, n: usize },

    /// A residue set was empty where a nonempty one is required.
    #[error("residue set must be nonempty")]
    EmptySet,

    /// Generic invalid argument (non-divisor moduli, bad set sizes, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An input violated a documented precondition (non-Hermitian,
    /// non-unitary, non-orthogonal family, missing main diagonal, ...).
    #[error("contract violation: {0}")]
    ContractViolation(String),

    /// A matrix required to be invertible is singular or indefinite.
    #[error("matrix is not invertible: {0}")]
    NotInvertible(String),

    /// The measured diagonal support admits no nontrivial blocking.
    #[error("no block structure: gcd of the diagonal support is 1")]
    NoBlockStructure,

    /// The matrix fails the block-circulant predicate for the given block size.
    #[error("matrix is not block-circulant with {0}x{0} blocks")]
    NotBlockCirculant(usize),

    /// The system fails the frame condition (lower bound not positive).
    #[error("not a frame: lower frame bound {lower:.3e} is not positive")]
    NotAFrame { lower: f64 },

    /// A diagonal block of the frame operator is singular, so the system
    /// cannot be a frame.
    #[error("not a frame: block {index} is singular (smallest singular value {min_singular:.3e})")]
    SingularBlock { index: usize, min_singular: f64 },

    /// The interlacing construction needs more orthogonal vectors than the
    /// ambient dimension allows.
    #[error("dimensional constraint violated: {0}")]
    DimensionalConstraint(String),

    /// The request exceeds a documented size bound.
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
}

pub type Result<T> = std::result::Result<T, GaborError>;
