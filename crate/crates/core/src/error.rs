use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomial is not square-free (repeated real root)")]
    NotSquareFree,
    #[error("zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("division by an interval containing zero")]
    DivisionByIntervalContainingZero,
    #[error("square root of a negative quantity")]
    NegativeSqrt,
    #[error("denominator is not of the form c*t^a*(t-1)^b: {0}")]
    RepresentationContract(String),
    #[error("parameter out of range: {0}")]
    BadParameters(String),
    #[error("certified inequality failed: {0}")]
    CertificationFailed(String),
    #[error("supremum bound did not converge within budget; best bound {0}")]
    SupremumBudget(String),
    #[error("normalized coefficient is unbounded as t -> infinity (j={0})")]
    UnboundedSupremum(usize),
    #[error("corrupted checkpoint at line {line}: {content:?}")]
    Checkpoint { line: usize, content: String },
    #[error("derived polynomial disagrees with the stored table: {0}")]
    TableMismatch(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
