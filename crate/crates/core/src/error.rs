use thiserror::Error;

/// Errors raised by constructors and operations across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("distance table is {rows}x{cols} but there are {labels} labels")]
    Shape {
        labels: usize,
        rows: usize,
        cols: usize,
    },
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("asymmetric distance: d({0},{1}) != d({1},{0})")]
    Asymmetric(String, String),
    #[error("nonzero self-distance at `{0}`")]
    NonzeroDiagonal(String),
    #[error("negative or NaN distance between `{0}` and `{1}`")]
    NegativeDistance(String, String),
    #[error("infinite distance between `{0}` and `{1}` (infinite entries not allowed)")]
    InfiniteDistance(String, String),
    #[error("zero distance between distinct points `{0}` and `{1}` (not a pseudometric space)")]
    ZeroDistance(String, String),
    #[error("triangle inequality violated: d({0},{2}) > d({0},{1}) + d({1},{2})")]
    Triangle(String, String, String),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("operation undefined on a space with {0} point(s)")]
    TooFewPoints(usize),
    #[error("ground sets differ")]
    GroundMismatch,
    #[error("malformed point mapping: {0}")]
    MalformedMap(String),
    #[error("motif has {size} points, above the search limit of {limit} (use force to lift)")]
    SearchLimit { size: usize, limit: usize },
    #[error("persistent set is not a dendrogram: `{0}` and `{1}` never merge")]
    NotDendrogram(String, String),
    #[error("generation failed after {0} attempts")]
    GenerationFailed(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
