use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("empty word has no factorization")]
    EmptyWord,
    #[error("word {0} is not a Lyndon word of length at least 2")]
    NotLyndon(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("split table line {line}: {msg}")]
    Table { line: usize, msg: String },
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("split {entry} of {block}: part weights do not add up to the block weight")]
    WeightMismatch { block: String, entry: String },
    #[error("block {0} is missing its trivial splits")]
    MissingTrivialSplit(String),
    #[error("split {entry} of {block} has no mirrored entry")]
    AsymmetricSplit { block: String, entry: String },
    #[error("split {entry} of {block} is listed twice")]
    DuplicateSplit { block: String, entry: String },
    #[error("elements belong to different models")]
    MixedModels,
    #[error("weight {weight} exceeds the model's maximum block weight {max}")]
    WeightOverflow { weight: u32, max: u32 },
    #[error("operation requires a {0} model")]
    WrongKind(&'static str),
    #[error("element is zero")]
    ZeroElement,
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("model has no weight-1 block to pad with")]
    NoPaddingBlock,
    #[error("induced ordering is not injective: {0} and {1} first appear at the same orbit")]
    NotInjective(String, String),
    #[error("non-integral value at index {index}: {value}")]
    NonIntegral { index: usize, value: String },
    #[error("negative value at index {index}: {value}")]
    Negative { index: usize, value: String },
}

pub type Result<T> = std::result::Result<T, Error>;
