use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("no square root in series ring")]
    NoSquareRoot,
    #[error("zero series has no inverse")]
    ZeroSeries,
    #[error("{0}")]
    Precision(String),
    #[error("cycle basis degenerate")]
    DegenerateCycleBasis,
    #[error("point is not in the Voronoi cell")]
    NotInVoronoi,
    #[error("classification certified only for g <= 4")]
    GenusTooLarge,
    #[error("unbounded system: {0}")]
    Unbounded(String),
    #[error("coincident parameters: {0}")]
    Coincident(String),
    #[error("rank deficient: {0}")]
    RankDeficient(String),
    #[error("invalid input: {0}")]
    Input(String),
}

impl Error {
    pub fn precision(msg: impl Into<String>) -> Self {
        Error::Precision(msg.into())
    }

    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn is_precision(&self) -> bool {
        matches!(self, Error::Precision(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
