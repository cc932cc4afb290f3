use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: u32,
        column: u32,
        message: String,
    },

    #[error("unsupported construct at {line}:{column}: {construct}")]
    UnsupportedConstruct {
        line: u32,
        column: u32,
        construct: String,
    },

    #[error("unknown entity kind '{0}'")]
    UnknownKind(String),

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("invalid taxonomy: {0}")]
    InvalidTaxonomy(String),

    #[error("matching is inconsistent with the given trees: {0}")]
    InconsistentMatching(String),

    #[error("unclassifiable operation: {0}")]
    Unclassifiable(String),

    #[error("invalid change type and entity type combination: {change_type} of {entity_type}")]
    InvalidCombination {
        change_type: String,
        entity_type: String,
    },

    #[error("unknown feature '{0}'")]
    UnknownFeature(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("correlation undefined: {0}")]
    UndefinedCorrelation(String),

    #[error("no critical value for a space of {0} features")]
    UnsupportedSpaceSize(usize),

    #[error("unsupported significance level {0}")]
    UnsupportedSignificanceLevel(f64),

    #[error("invalid rating matrix: {0}")]
    InvalidRatingMatrix(String),

    #[error("bag '{0}' is empty, cannot train a model")]
    EmptyTrainingBag(String),

    #[error("empty repair shape: {0}")]
    EmptyShape(String),

    #[error("transaction '{0}' has not been mined")]
    NotMined(String),

    #[error("action '{0}' is not in the model's space")]
    UnknownAction(String),

    #[error("simulation would not terminate: {0}")]
    NonterminatingOracle(String),

    #[error("cross-validation fold error for project '{project}': {message}")]
    Fold { project: String, message: String },

    #[error("cannot split corpus: {0}")]
    Split(String),

    #[error("operator distribution {0} does not sum to 1: {1}")]
    InvalidDistribution(String, f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("corrupt corpus record at line {line}: {message}")]
    CorruptRecord { line: usize, message: String },

    #[error("version-control error: {0}")]
    Vcs(String),

    #[error("environment error: {0}")]
    Environment(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code the command-line tool maps this error to:
    /// 2 for usage and input errors, 3 for environment and internal failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) | Error::Vcs(_) | Error::Environment(_) => 3,
            _ => 2,
        }
    }
}
