use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("dimension {n} exceeds the supported maximum {max}")]
    DimensionTooLarge { n: usize, max: usize },
    #[error("subgroup basis is singular")]
    SingularSubgroupBasis,
    #[error("Hom module has rank zero")]
    ZeroModule,
    #[error("class index {c_omega} exceeds the bound {bound}")]
    InvalidClassIndex { c_omega: u64, bound: String },
    #[error("target genus one is handled by the lattice bounds, not here")]
    GenusOneNotHandledHere,
    #[error("inconsistent instance: {0}")]
    InconsistentInstance(String),
    #[error("invalid order: {0}")]
    InvalidOrder(String),
    #[error("invalid instance field `{field}`: {message}")]
    InvalidField { field: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn field(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::InvalidField { field: field.into(), message: message.into() }
    }
}
