use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("stage V_{requested} is too large to enumerate (maximum is V_{max})")]
    StageTooLarge { requested: usize, max: usize },

    #[error("{what}: size {size} exceeds the limit of {limit}")]
    SizeLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("expansion depth {depth} exceeds the limit of {limit}")]
    DepthLimit { depth: usize, limit: usize },

    #[error("state {0} is referenced but has no transition")]
    DanglingState(String),

    #[error("state {0} is defined twice")]
    DuplicateState(String),

    #[error("tuple arity mismatch: expected {expected} components, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("index set mismatch: {left} vs {right}")]
    IndexMismatch { left: usize, right: usize },

    #[error("variant pairs need an index set of size at least 2, got {0}")]
    IndexTooSmall(usize),

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("variable `{0}` has more than one equation")]
    DuplicateVariable(String),

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("value does not match the functor shape: {0}")]
    ShapeMismatch(String),

    #[error(
        "the identity functor is not uniform on maps: a bare slot has no U_A translation \
         (h1(1) = 1 forces the atom, h2(1) = <1;1> forces a tuple)"
    )]
    NotUniform,

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown check `{0}` (expected prop3 or lemma31)")]
    UnknownCheck(String),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

impl Error {
    /// True for errors raised by size and depth guards rather than bad input.
    pub fn is_resource_guard(&self) -> bool {
        matches!(
            self,
            Error::StageTooLarge { .. } | Error::SizeLimit { .. } | Error::DepthLimit { .. }
        )
    }
}
