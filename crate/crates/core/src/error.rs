use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid subset: {0}")]
    InvalidSubset(String),

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("malformed context: {0}")]
    MalformedContext(String),

    #[error("malformed partition: {0}")]
    MalformedPartition(String),

    #[error("partitions are over different carriers ({left} vs {right} elements)")]
    MismatchedCarrier { left: usize, right: usize },

    #[error("concept {0} is the top element, its upper cone is empty")]
    EmptyUpperCone(usize),

    #[error("concept {0} is the bottom element, its lower cone is empty")]
    EmptyLowerCone(usize),

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("fresh element name `{0}` collides with an existing name")]
    FreshNameCollision(String),

    #[error("verification failed: {0}")]
    VerificationFailure(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{step}: {source}")]
    Step {
        step: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn at_step(self, step: impl Into<String>) -> Self {
        Error::Step {
            step: step.into(),
            source: Box::new(self),
        }
    }

    /// True for failures that indicate a broken invariant rather than bad
    /// input. The CLI maps these to exit code 2.
    pub fn is_verification_failure(&self) -> bool {
        match self {
            Error::VerificationFailure(_) => true,
            Error::Step { source, .. } => source.is_verification_failure(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
