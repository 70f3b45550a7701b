use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("degree must be at least {required}, got {got}")]
    DegreeTooSmall { required: usize, got: usize },

    #[error("polynomial is not separable (vanishing discriminant)")]
    NotSeparable,

    #[error("constant coefficient is zero (polynomial has a root at 0)")]
    ZeroConstantCoefficient,

    #[error("precision ceiling of {ceiling_bits} bits exhausted while {context}")]
    PrecisionExhausted { ceiling_bits: u32, context: String },

    #[error("cannot resolve whether a root lies on the unit circle at the configured precision floor")]
    UnresolvedUnitRoot,

    #[error("sign-change certificate failed: {0}")]
    CertificateFailed(String),

    #[error("polynomial has an opposite root pair (some alpha_i + alpha_j = 0)")]
    OppositeRootPair,

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("bound formula requires degree >= {required}, got {got}")]
    BoundDegree { required: u32, got: u32 },

    #[error("invalid polynomial text: {0}")]
    Parse(String),

    #[error("checkpoint corrupt at line {line}: {reason}")]
    CheckpointCorrupt { line: usize, reason: String },

    #[error("checkpoint does not match this search (expected {expected}, found {found})")]
    CheckpointMismatch { expected: String, found: String },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
