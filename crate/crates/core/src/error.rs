use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("morphisms are not composable: source of {left} is {left_source}, target of {right} is {right_target}")]
    NonComposable {
        left: String,
        left_source: String,
        right: String,
        right_target: String,
    },

    #[error("interface mismatch: {0}")]
    InterfaceMismatch(String),

    #[error("linear map undefined on key {0}")]
    UndefinedKey(String),

    #[error("enumeration bound exceeded for {morphism}: more than {bound} factorizations")]
    EnumerationBound { morphism: String, bound: usize },

    #[error("length of {morphism} exceeds the declared bound {bound}")]
    Divergence { morphism: String, bound: usize },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not related: {0}")]
    NotRelated(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
