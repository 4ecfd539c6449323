use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("edge set contains a cycle")]
    Cyclic,

    #[error("self-loop on vertex v{0}")]
    SelfLoop(usize),

    #[error("vertex v{vertex} out of range (graph has {n} vertices)")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("v{0} and v{1} are not adjacent")]
    NotAdjacent(usize, usize),

    #[error("v{vertex} holds {have} pebbles, a move needs 2")]
    InsufficientPebbles { vertex: usize, have: u32 },

    #[error("vector has {got} entries, graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },

    #[error("pebble count overflows the {0}-bit cell")]
    Overflow(u32),

    #[error("arithmetic overflow: {0}")]
    ArithmeticOverflow(String),

    #[error("enumeration cap exceeded: {needed} states requested, cap is {cap}")]
    CapExceeded { needed: u128, cap: u128 },

    #[error("solver state limit of {0} states exceeded")]
    StateLimit(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
