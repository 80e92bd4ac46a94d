use thiserror::Error;

/// Every failure mode of the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a unit: {0}")]
    NotAUnit(String),
    #[error("Gamma has a pole at 1 + s = {0}")]
    GammaPole(String),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("ring mismatch: eps order {0} vs {1}")]
    RingMismatch(u32, u32),
    #[error("window error: {0}")]
    WindowError(String),
    #[error("invalid substitution: {0}")]
    InvalidSubstitution(String),
    #[error("series is not invertible: {0}")]
    NotInvertible(String),
    #[error("leading coefficient {0} is not the square of a rational")]
    LeadingNotASquare(String),
    #[error("formal group law axiom `{axiom}` fails in degree {degree}")]
    AxiomViolation { axiom: &'static str, degree: u32 },
    #[error("coefficient g_{0} must be nilpotent")]
    NotNilpotent(i32),
    #[error("matrix E is not nilpotent")]
    EndomorphismNotNilpotent,
    #[error("grading mismatch: [H, E] != 2E")]
    GradingMismatch,
    #[error("level {level} exceeds the level cap {cap}")]
    LevelOverflow { level: String, cap: String },
    #[error("eigenvalue {0} is not positive")]
    NonPositiveEigenvalue(String),
    #[error("partition {0} is not strict")]
    NotStrict(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
