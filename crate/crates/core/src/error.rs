use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },

    #[error("element {0:?} is a loop")]
    LoopDetected(String),

    #[error("rank axiom violated ({axiom}): witnesses {first:?} and {second:?}")]
    RankAxiomViolation {
        axiom: &'static str,
        first: Vec<String>,
        second: Vec<String>,
    },

    #[error("not a lattice: {0}")]
    NotALattice(String),

    #[error("{0:?} is not a flat")]
    NotAFlat(Vec<String>),

    #[error("label {0:?} already in the ground set")]
    LabelCollision(String),

    #[error("operation requires a matroid")]
    NotAMatroid,

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: u32, found: u32 },

    #[error("lattice has more than {cap} flats")]
    LatticeTooLarge { cap: usize },

    #[error("ground set of {0} elements exceeds the supported maximum")]
    GroundSetTooLarge(usize),

    #[error("invalid interval [{bottom}, {top}]")]
    InvalidInterval { bottom: usize, top: usize },

    #[error("not a building set: flat {flat:?} fails {clause}")]
    NotABuildingSet { flat: Vec<String>, clause: String },

    #[error("inexact polynomial division: {0}")]
    NonzeroRemainder(String),

    #[error("negative coefficient at index {index}")]
    NegativeCoefficient { index: usize },

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("inner series has a nonzero constant term")]
    NonzeroConstantTerm,

    #[error("incidence element has a non-invertible diagonal entry at flat {0}")]
    NonInvertibleDiagonal(usize),

    #[error("more than {cap} chains")]
    TooManyChains { cap: usize },

    #[error("no valid ordering of building set additions: {0}")]
    NoValidOrdering(String),

    #[error("identity violated: {0}")]
    IdentityViolated(String),

    #[error("Keel recursion produced a non-integral term at n = {0}")]
    NonIntegralKeelTerm(usize),

    #[error("non-integral result: {0}")]
    NonIntegralResult(String),

    #[error("higher-order terms failed to cancel at degree {degree}")]
    TruncationResidue { degree: usize },

    #[error("not a spanning nested set: {0}")]
    NotSpanningNested(String),

    #[error("golden mismatch in {name}: expected {expected}, got {got}")]
    GoldenMismatch {
        name: String,
        expected: String,
        got: String,
    },

    #[error("engines disagree: {0}")]
    EngineDisagreement(String),

    #[error("{0} too large for this operation")]
    TooLarge(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            message: message.into(),
        }
    }
}
