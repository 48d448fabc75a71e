use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown lattice `{0}`")]
    UnknownLattice(String),

    #[error("malformed spec file: {0}")]
    Parse(String),

    #[error("invalid lattice spec: {0}")]
    InvalidSpec(String),

    #[error("resource limit: {what} needs {needed}, cap is {cap}")]
    ResourceLimit {
        what: &'static str,
        needed: usize,
        cap: usize,
    },

    #[error("{0} is not in the graph")]
    NotInGraph(String),

    #[error("insufficient radius: ball radius {have} but at least {need} is required for exact counts")]
    InsufficientRadius { have: usize, need: usize },

    #[error("graph is not cubic")]
    NotCubic,

    #[error("graph is not simple (parallel edges present)")]
    NotSimple,

    #[error("graph is not bipartite-coloured")]
    NotBipartite,

    #[error("a black vertex does not have degree 3")]
    BlackNotCubic,

    #[error("operation needs a periodic lattice, `{0}` is aperiodic")]
    NotPeriodic(String),

    #[error("graph carries no original/triangle origin tags")]
    NoOriginTags,

    #[error("start mid-edge {0} is not an original-origin edge")]
    StartNotOriginal(String),

    #[error("value {value} outside domain {domain}")]
    OutOfDomain { value: String, domain: &'static str },

    #[error("series kind mismatch: {0}")]
    WrongSeriesKind(String),

    #[error("degree {needed} unavailable, series valid only to degree {available}")]
    DegreeUnavailable { needed: usize, available: usize },

    #[error("series is empty or has zero counts")]
    EmptySeries,

    #[error("insufficient data: {have} usable lengths, need at least {need}")]
    InsufficientData { have: usize, need: usize },
}
