use hvir_arith::ArithError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("vector has rank {found}, basis has rank {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error("construction needs rank at least {needed}, got {rank}")]
    RankTooSmall { needed: usize, rank: usize },
    #[error("zero vector where a nonzero one is required")]
    ZeroVector,
    #[error("no action rule for L{0}")]
    UndefinedGenerator(String),
    #[error("unknown layer `{0}`")]
    UnknownLayer(String),
    #[error("relation is not linear in the unknowns: {0}")]
    NonLinear(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
}

pub type Result<T, E = CoreError> = std::result::Result<T, E>;
