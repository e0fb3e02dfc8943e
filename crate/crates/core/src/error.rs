use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input text or table shape could not be understood.
    #[error("malformed input: {0}")]
    Malformed(String),

    /// A link diagram is syntactically fine but does not close up.
    #[error("invalid link diagram: {0}")]
    Diagram(String),

    #[error("not a rack: {0}")]
    NotARack(String),

    #[error("not a quandle: {0}")]
    NotAQuandle(String),

    #[error("not a subquandle: {0}")]
    NotASubquandle(String),

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),

    #[error("evaluation domain: {0}")]
    EvaluationDomain(String),

    #[error("unsupported order {order} (limit {limit})")]
    UnsupportedOrder { order: usize, limit: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Parse-type failures, as opposed to well-formed input that violates an
    /// algebraic requirement.
    pub fn is_parse_error(&self) -> bool {
        matches!(self, Error::Malformed(_) | Error::Diagram(_))
    }
}
