use thiserror::Error;

/// Errors surfaced by the exact kernels.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input is identically zero")]
    ZeroInput,
    #[error("Laurent polynomial is not homogeneous")]
    NotHomogeneous,
    /// Two denominator factors would expand around the same center with
    /// different constants. Cannot happen for plain type A input; guards the
    /// generalized operators.
    #[error("two distinct factors share the center x{i} = x{j}")]
    CenterCollision { i: u32, j: u32 },
    #[error("no edge {0} -> {1} in the forest")]
    NoSuchEdge(u32, u32),
    #[error("malformed forest: {0}")]
    MalformedForest(String),
    /// The ordered digraph of a word is not a rooted forest, i.e. the word is
    /// the zero operator.
    #[error("word does not realize a forest (zero operator)")]
    NotAForest,
    #[error("operator combination mixes degrees")]
    MixedDegrees,
    #[error("non-rational constant not supported: {0}")]
    ComplexConstant(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
