use thiserror::Error;

/// Errors raised by the library operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown root system type {0}")]
    UnknownType(String),
    #[error("subset contains {0}, which is not a simple root")]
    BadSubset(String),
    #[error("Weyl group would exceed {limit} elements")]
    WeylGroupTooLarge { limit: usize },
    #[error("normalization needs sqrt({0}), which the coefficient field cannot represent")]
    NormalizationUnavailable(String),
    #[error(
        "operation requires a coefficient field with an imaginary unit and unitary normalization"
    )]
    NoCompactForm,
    #[error("elements live over different algebras or have incompatible degrees")]
    DegreeMismatch,
    #[error("r-matrix has a pole at root {0}")]
    PoleAt(String),
    #[error("phi does not satisfy the triple condition (residual {0:e})")]
    NotClassifiable(f64),
    #[error("regularity violated: alpha(lambda_1) = 0 for even-parity root {0}")]
    RegularityViolated(String),
    #[error("X1 is not contained in X")]
    BadNesting,
    #[error("leaf enumeration is only available for X1 = empty set")]
    UnsupportedX1,
    #[error("unsupported type for this operation: {0}")]
    UnsupportedType(String),
    #[error("matrix is singular or too ill-conditioned (condition number {0:e})")]
    Singular(f64),
    #[error("point is off the manifold (deviation {0:e})")]
    OffManifold(f64),
    #[error("point is not in the requested Bruhat cell")]
    OffCell,
    #[error("lambda is not regular")]
    IrregularLambda,
    #[error("chart singularity near a pole of the sphere")]
    ChartSingularity,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable machine-readable kind name used in JSON error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::UnknownType(_) => "UnknownType",
            Error::BadSubset(_) => "BadSubset",
            Error::WeylGroupTooLarge { .. } => "WeylGroupTooLarge",
            Error::NormalizationUnavailable(_) => "NormalizationUnavailable",
            Error::NoCompactForm => "NoCompactForm",
            Error::DegreeMismatch => "DegreeMismatch",
            Error::PoleAt(_) => "PoleAt",
            Error::NotClassifiable(_) => "NotClassifiable",
            Error::RegularityViolated(_) => "RegularityViolated",
            Error::BadNesting => "BadNesting",
            Error::UnsupportedX1 => "UnsupportedX1",
            Error::UnsupportedType(_) => "UnsupportedType",
            Error::Singular(_) => "Singular",
            Error::OffManifold(_) => "OffManifold",
            Error::OffCell => "OffCell",
            Error::IrregularLambda => "IrregularLambda",
            Error::ChartSingularity => "ChartSingularity",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
