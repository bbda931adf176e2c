use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid line: {0}")]
    InvalidLine(String),

    #[error("duplicate line: lines {0} and {1} coincide")]
    DuplicateLine(usize, usize),

    #[error("an arrangement needs at least 2 lines, got {0}")]
    TooFewLines(usize),

    #[error("invalid epimorphism: {0}")]
    InvalidEpimorphism(String),

    #[error("modulus {0} is not prime")]
    CompositeModulus(u32),

    #[error("cover is not smooth: {0}")]
    NotSmooth(String),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("divisor classes live on different blow-ups")]
    MismatchedContext,

    #[error("symmetry has no realizing (anti-)projectivity")]
    UnrealizedSymmetry,

    #[error("symmetry does not preserve the character set")]
    NotCharacterPreserving,

    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
