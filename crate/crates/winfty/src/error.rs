use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("inconsistent linear system: row {row} reduces to 0 = {rhs}")]
    NoSolution { row: usize, rhs: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("evaluation failed at {point}: {reason}")]
    Evaluation { point: String, reason: String },
    #[error("charge mismatch: expected 0, found {0}")]
    ChargeMismatch(i64),
    #[error("invalid growth path: {0}")]
    InvalidGrowthPath(String),
    #[error("multiple pole at u = {0}")]
    MultiplePole(String),
    #[error("level {level} exceeds configured bound {bound}")]
    LevelOverflow { level: usize, bound: usize },
    #[error("pole coefficient outside target basis at order {order}: {detail}")]
    BasisMismatch { order: usize, detail: String },
    #[error("4F3 denominator vanishes before termination: {0}")]
    PoleInConstant(String),
    #[error("truncation depth {have} insufficient, need {need}")]
    TruncationDepth { have: i64, need: i64 },
    #[error("rank deficient matrix: rank {rank} < {rows}")]
    RankError { rank: usize, rows: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
