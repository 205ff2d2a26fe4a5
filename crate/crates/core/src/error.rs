use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid rational literal `{0}`")]
    InvalidRational(String),
    #[error("unknown indeterminate `{0}`")]
    UnknownIndet(String),
    #[error("indeterminate `{0}` bound twice in one substitution")]
    DuplicateBinding(String),
    #[error("linear row references unknown column {0}")]
    UnknownUnknown(usize),
    #[error("linear row references unknown `{0}`")]
    UnknownName(String),
    #[error("variable `{0}` already occurs in the operands")]
    VariableCollision(String),
    #[error("element is not parity-homogeneous")]
    NonHomogeneous,
    #[error("parity mismatch: {0}")]
    ParityMismatch(String),
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("invalid algebra `{name}`: {reason}")]
    InvalidAlgebra { name: String, reason: String },
    #[error("algebra `{name}` fails {axiom} on {tuple}")]
    AxiomFailure { name: String, axiom: String, tuple: String },
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("incompatible spaces: {0}")]
    SpaceMismatch(String),
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("invalid basis file: {0}")]
    BasisFile(String),
}
