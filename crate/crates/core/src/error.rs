use thiserror::Error;

/// Errors raised by the workbench.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ForgeError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("inconsistent presentation: {0}")]
    Inconsistent(String),

    #[error("elements belong to different presentations")]
    MixedPresentations,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("subgroup is not abelian")]
    NotAbelian,

    #[error("refused: {what} needs order {order}, cap is {cap}")]
    CapExceeded { what: String, order: u64, cap: u64 },

    #[error("hypotheses unmet: {0}")]
    HypothesesUnmet(String),

    #[error("not an automorphism: {0}")]
    InvalidAutomorphism(String),

    #[error("no witness found: {0}")]
    NoWitness(String),

    #[error("cocycle law violated: {0}")]
    CocycleViolation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("manifest: {0}")]
    Manifest(String),

    #[error("unknown check id `{0}`")]
    UnknownCheck(String),

    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, ForgeError>;

impl From<std::io::Error> for ForgeError {
    fn from(e: std::io::Error) -> Self {
        ForgeError::Io(e.to_string())
    }
}
