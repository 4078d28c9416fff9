use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("permutation degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("group order exceeds the configured bound of {bound}")]
    OrderBoundExceeded { bound: usize },

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("not a normal subgroup: {0}")]
    NotNormal(String),

    #[error("unknown builtin group `{0}`")]
    UnknownBuiltin(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("family is not closed under conjugation and subgroups: {0}")]
    FamilyNotClosed(String),

    #[error("inner product is not an integer: {0}")]
    NonIntegralInnerProduct(String),

    #[error("rank mismatch: {0}")]
    RankMismatch(String),

    #[error("character does not respect fusion: {0}")]
    FusionViolation(String),

    #[error("level component without a unique maximal class: {0}")]
    MaximalNotUnique(String),

    #[error("q-rank too large for a periodic resolution: {0}")]
    RankTooLarge(String),

    #[error("no admissible dimension function found: {0}")]
    Infeasible(String),

    #[error("boundary does not square to zero: {0}")]
    BoundaryNotSquareZero(String),

    #[error("invalid orbit category morphism: {0}")]
    InvalidMorphism(String),

    #[error("not subconjugate: {0}")]
    NotSubconjugate(String),

    #[error("map is not injective: {0}")]
    NotInjective(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
