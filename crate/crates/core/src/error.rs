use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("{what} supports at most {max} vertices, got {got}")]
    TooLarge {
        what: &'static str,
        max: usize,
        got: usize,
    },
    #[error("permutation of length {perm} cannot act on labels below {needed}")]
    LengthMismatch { perm: usize, needed: usize },
    #[error("not a permutation: {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("not a split graph")]
    NotSplit,
    #[error("vertex sets do not form a KS-partition of the graph")]
    NotAPartition,
    #[error("KS-partition is not S-max")]
    NotSMax,
    #[error("expected a {expected} split graph, found {found}")]
    WrongClass {
        expected: &'static str,
        found: &'static str,
    },
    #[error("set needs at least {min} elements, got {got}")]
    TooSmall { min: usize, got: usize },
    #[error("label sets overlap")]
    LabelClash,
    #[error("green vertex {0} is isolated")]
    IsolatedGreen(usize),
    #[error("edge {0}-{1} joins two vertices of the same color")]
    Monochromatic(usize, usize),
    #[error("cannot combine an {0} series with an {1} series")]
    ConventionMismatch(&'static str, &'static str),
    #[error("series has zero constant term and cannot be inverted")]
    NotAUnit,
    #[error("requested order {requested} but only {available} base terms supplied")]
    InsufficientBase { requested: usize, available: usize },
    #[error("non-integral result at n = {0}")]
    NonIntegralResult(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
