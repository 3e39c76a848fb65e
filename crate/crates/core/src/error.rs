use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable sets differ: {0:?} vs {1:?}")]
    VarMismatch(Vec<String>, Vec<String>),
    #[error("division by zero")]
    DivisionByZero,
    #[error("no value assigned to variable `{0}`")]
    MissingAssignment(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("generator `{0}` has no image")]
    UnmappedGenerator(String),
    #[error("named generator `{0}` has no matrix image")]
    NamedGenerator(String),
    #[error("unit parameter is zero")]
    ZeroUnit,
    #[error("a^2 = 1 makes psi undefined")]
    DegeneratePsi,
    #[error("relator unknown to presentation `{presentation}`: {relator}")]
    UnknownRelator { presentation: String, relator: String },
    #[error("unbalanced relator occurrences: {0}")]
    Unbalanced(String),
    #[error("odd number of relator factors")]
    OddFactorCount,
    #[error("target is not in the commutator subgroup (abelianization {0})")]
    AbelianizationNonzero(String),
    #[error("certificate does not verify: {0}")]
    VerificationFailed(String),
    #[error("missing certificate: {0}")]
    MissingCertificate(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
