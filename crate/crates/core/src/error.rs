use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: u64, n: usize },
    #[error("invalid vertex set: {0}")]
    InvalidSet(&'static str),
    #[error("sets overlap")]
    Overlap,
    #[error("need at least two terminals")]
    TooFewTerminals,
    #[error("instance has {n} vertices, limit is {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("family is not laminar: {a:?} and {b:?} cross")]
    NotLaminar { a: Vec<u32>, b: Vec<u32> },
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("packed {built} trees, needed {wanted}")]
    Packing { built: usize, wanted: usize },
    #[error("class {0:?} is not locatable in the parent tree")]
    ClassNotLocatable(Vec<u32>),
    #[error("child connectivity {child} is below the parent threshold {num}/{den}")]
    LambdaChain { child: i64, num: i128, den: i128 },
    #[error("total edge weight must stay below 2^60")]
    WeightOverflow,
    #[error("malformed tree: {0}")]
    MalformedTree(String),
    #[error("result differs from the exhaustive oracle: {missing} sets missing, {extra} extra")]
    OracleMismatch { missing: usize, extra: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
