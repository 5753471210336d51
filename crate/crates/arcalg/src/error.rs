use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("position {0} is not a diamond position of the block")]
    NotDiamond(usize),
    #[error("weights {0} and {1} do not lie in a common block")]
    BlockMismatch(String, String),
    #[error("weight {0} does not belong to the block")]
    NotInBlock(String),
    #[error("cup diagram is not admissible: {0}")]
    Inadmissible(String),
    #[error("{0} is not an oriented circle diagram")]
    NotOriented(String),
    #[error("vertices lie on different components")]
    DifferentComponents,
    #[error("{0} and {1} are not related by a lambda-pair")]
    NotLambdaPair(String, String),
    #[error("triple is not a chain of lambda-pair moves")]
    NotChained,
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
