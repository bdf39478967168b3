use thiserror::Error;

/// Every failure the pipeline can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("elements belong to different number fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus is reducible: found factor {factor}")]
    ReducibleModulus { factor: String },
    #[error("requested precision {requested:e} not reachable (best radius {achieved:e})")]
    PrecisionExhausted { requested: f64, achieved: f64 },
    #[error("polynomial of degree {0} does not define a nontrivial field")]
    TrivialField(usize),

    #[error("join of two equal points")]
    DegenerateJoin,
    #[error("meet of two equal lines")]
    DegenerateMeet,
    #[error("points are not collinear")]
    NotCollinear,
    #[error("quadruple has coincident points")]
    DegenerateQuadruple,
    #[error("cross-ratio is infinite (fourth point equals third)")]
    InfiniteCrossRatio,

    #[error("gadget degenerate: {0}")]
    GadgetDegenerate(String),
    #[error("final register point is not the origin")]
    NotARoot,
    #[error("genericity exhausted: {0}")]
    GenericityExhausted(String),

    #[error("duplicate line at index {0}")]
    DuplicateLine(usize),
    #[error("ambiguous valences: {0}")]
    AmbiguousValences(String),

    #[error("invalid m-map: {0}")]
    InvalidMMap(String),
    #[error("parity violation: {0}")]
    ParityViolation(String),
    #[error("lines {0} and {1} meet at a point that is not blown up")]
    MissedIntersection(usize, usize),

    #[error("schema error: {0}")]
    Schema(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::FieldMismatch
            | Error::DivisionByZero
            | Error::ReducibleModulus { .. }
            | Error::PrecisionExhausted { .. }
            | Error::TrivialField(_)
            | Error::NotARoot
            | Error::InvalidMMap(_)
            | Error::ParityViolation(_) => 3,
            Error::GadgetDegenerate(_)
            | Error::GenericityExhausted(_)
            | Error::DegenerateJoin
            | Error::DegenerateMeet => 4,
            Error::AmbiguousValences(_)
            | Error::NotCollinear
            | Error::DegenerateQuadruple
            | Error::InfiniteCrossRatio
            | Error::MissedIntersection(..) => 5,
            Error::DuplicateLine(_) | Error::Schema(_) => 6,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
