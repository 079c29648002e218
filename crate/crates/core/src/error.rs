use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("negative exponent in `{0}`")]
    NegativeExponent(String),

    #[error("the ideal is the unit ideal, so R = 0")]
    UnitIdeal,

    #[error("no generators given")]
    NoGenerators,

    #[error("arity mismatch: expected {expected} variables, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("ideal is not Artinian: no pure power of {0}")]
    NotArtinian(String),

    #[error("{0} is not a standard monomial of R")]
    NotInPoset(String),

    #[error("ideal view belongs to a different divisor poset")]
    ForeignView,

    #[error("{0} is not prime")]
    CompositeModulus(u64),

    #[error("the ring is Gorenstein")]
    Gorenstein,

    #[error("simplicial complex is not flag")]
    NotFlag,

    #[error("not a linear extension: {0}")]
    NotLinearExtension(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Short machine-readable tag used in CLI and FFI error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Malformed(_) => "malformed",
            Error::NegativeExponent(_) => "negative_exponent",
            Error::UnitIdeal => "unit_ideal",
            Error::NoGenerators => "no_generators",
            Error::ArityMismatch { .. } => "arity_mismatch",
            Error::NotArtinian(_) => "not_artinian",
            Error::NotInPoset(_) => "not_in_poset",
            Error::ForeignView => "foreign_view",
            Error::CompositeModulus(_) => "composite_modulus",
            Error::Gorenstein => "gorenstein",
            Error::NotFlag => "not_flag",
            Error::NotLinearExtension(_) => "not_linear_extension",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Inconsistent(_) => "inconsistent",
            Error::Json(_) => "json",
            Error::Io(_) => "io",
        }
    }
}
