use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("index (0,0) is not a valid basis index for this algebra")]
    ZeroIndex,
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("relation violated between D_{i:?} and D_{j:?}: lhs {lhs}, rhs {rhs}")]
    RelationViolated {
        i: (u32, u32),
        j: (u32, u32),
        lhs: String,
        rhs: String,
    },
    #[error("representation is not irreducible")]
    NotIrreducible,
    #[error("no polynomial fit within degree cap {cap}; residual at {point:?}")]
    NoPolynomialFit { cap: u32, point: (i64, i64) },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
