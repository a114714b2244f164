use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("leading term of the zero element")]
    ZeroElement,

    #[error("map does not preserve xy - yx: {0}")]
    InvalidAutomorphism(String),

    #[error("inverse of automorphism is not available (build it from transvection generators)")]
    NoInverse,

    #[error("chirality mismatch: {0}")]
    Chirality(String),

    #[error("not an element of the expected subspace: {0}")]
    Membership(String),

    #[error("invalid Calogero-Moser point: {0}")]
    InvalidPoint(String),

    #[error("truncation overflow: {0}")]
    TruncationOverflow(String),

    #[error("step bound of {0} reductions exceeded")]
    StepBound(u64),

    #[error(
        "induced operator has a non-rational eigenvalue; factor {factor} has no rational roots"
    )]
    NonSplitSpectrum { factor: String },

    #[error("staircase complement is infinite: {0}")]
    InfiniteComplement(String),

    #[error("singular matrix")]
    Singular,

    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
