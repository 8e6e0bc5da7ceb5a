use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    // frames and propositions
    #[error("duplicate atom `{0}` in frame")]
    DuplicateAtom(String),
    #[error("a frame needs at least one atom")]
    EmptyFrame,
    #[error("frame has {0} atoms, at most 64 are supported")]
    TooManyAtoms(usize),
    #[error("atom names must be non-empty")]
    EmptyAtomName,
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("operands belong to different frames")]
    FrameMismatch,
    #[error("query attribute `{0}` has no proposition mapping")]
    UnmappedAttribute(String),
    #[error("malformed query: {0}")]
    MalformedQuery(String),

    // mass functions
    #[error("positive mass assigned to the empty proposition")]
    MassOnEmptySet,
    #[error("masses sum to {0}, expected 1")]
    NotNormalized(f64),
    #[error("negative mass {0}")]
    NegativeMass(f64),
    #[error("no probability given for atom `{0}`")]
    MissingAtom(String),
    #[error("simple support focus must be non-empty")]
    EmptyFocus,
    #[error("support degree {0} outside [0, 1]")]
    DegreeOutOfRange(f64),
    #[error("invalid evidential interval [{support}, {plausibility}]")]
    InvalidInterval { support: f64, plausibility: f64 },
    #[error("discount factor {0} outside [0, 1]")]
    FactorOutOfRange(f64),

    // combination and decision
    #[error("total conflict combining evidence at input {index}")]
    TotalConflict { index: usize },
    #[error("nothing to combine")]
    EmptyEvidence,
    #[error("pro/con support is undefined for the empty or full proposition")]
    TrivialProposition,
    #[error("threshold {0} out of range")]
    InvalidThreshold(f64),

    // routing
    #[error("implication cannot be routed; rewrite it with translate_logical first")]
    ImpliesNotRoutable,
    #[error("decomposition needs a non-empty shortlist")]
    EmptyShortlist,
    #[error("view parts disagree on attributes: {}", .0.join(", "))]
    SchemaMismatch(Vec<String>),
    #[error("a view needs at least two parts")]
    TooFewParts,
    #[error("capability weight {weight} for `{attribute}` outside [0, 1]")]
    WeightOutOfRange { attribute: String, weight: f64 },
    #[error("source id must be non-empty")]
    EmptySourceId,
    #[error("duplicate source id `{0}`")]
    DuplicateSource(String),

    // scenarios and traces
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("report {index} is earlier than the report before it")]
    UnsortedReports { index: usize },
    #[error("window must be positive, got {0}")]
    InvalidWindow(f64),
    #[error("step must be positive, got {0}")]
    InvalidStep(f64),
    #[error("discount rate {0} outside [0, 1]")]
    InvalidDiscountRate(f64),
    #[error("report time {0} must be finite and non-negative")]
    InvalidTime(f64),
    #[error("cannot emit an empty trace")]
    EmptyTrace,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the command-line front end: 2 for I/O, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) => 2,
            _ => 1,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        if e.is_io() {
            return Error::Io(e.into());
        }
        Error::Parse {
            line: e.line(),
            message: e.to_string(),
        }
    }
}
