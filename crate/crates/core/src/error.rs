use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("duplicate vertex id `{0}`")]
    DuplicateId(String),

    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),

    #[error("`{from}` lists `{to}` but `{to}` does not list `{from}`")]
    NonMutualAdjacency { from: String, to: String },

    #[error("`{vertex}` lists `{entry}` more than once")]
    RepeatedPreference { vertex: String, entry: String },

    #[error("critical vertices must all be on one side (found `{man}` and `{woman}`)")]
    CriticalOnBothSides { man: String, woman: String },

    #[error("`{0}` is not a valid vertex id")]
    InvalidId(String),

    #[error("({man}, {woman}) is not an edge of the instance")]
    UnknownEdge { man: String, woman: String },

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("critical vertices must be men here; normalize the instance first")]
    NotNormalized,

    #[error("instance admits no matching that saturates the critical set")]
    Infeasible,

    #[error("no feasible instance after {attempts} attempts (seed {seed})")]
    GeneratorExhausted { seed: u64, attempts: usize },

    #[error("invalid generator spec: {0}")]
    InvalidGenSpec(String),

    #[error("matching is not stable in the reduced instance: ({man}, {woman}) blocks")]
    NotStable { man: String, woman: String },

    #[error("two copies of `{0}` are matched to non-dummy women")]
    TwoActiveCopies(String),

    #[error("level {level} of `{vertex}` is outside 0..={max}")]
    LevelOutOfRange { vertex: String, level: u32, max: u32 },

    #[error("matched pair ({man}, {woman}) has unequal levels {man_level} and {woman_level}")]
    LevelMismatch {
        man: String,
        woman: String,
        man_level: u32,
        woman_level: u32,
    },

    #[error("certificate rejected at ({man}, {woman}): {reason}")]
    CertificateRejected {
        man: String,
        woman: String,
        reason: String,
    },

    #[error("leveling did not reach a fixpoint within {0} rounds")]
    LevelingDiverged(usize),

    #[error("`{vertex}` is non-critical but sits at level {level}")]
    NonCriticalLevel { vertex: String, level: u32 },

    #[error("no size-reducing alternating path: the matching is already minimum size")]
    NoSrap,

    #[error("no size-increasing alternating path: the matching is already dominant")]
    NoSiap,

    #[error("partition conflict: `{0}` is claimed by two parts")]
    PartitionConflict(String),

    #[error("proposal phase exceeded its step bound of {0}")]
    ProposalBound(usize),

    #[error("oracle enumeration cap exceeded: {edges} edges > {cap}")]
    OracleCap { edges: usize, cap: usize },

    #[error("internal verification failed: {0}")]
    Verification(String),

    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
