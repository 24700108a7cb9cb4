use thiserror::Error;

/// Errors raised while building or transforming posets.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("cover ({0}, {1}) references an element outside 0..{2}")]
    IndexOutOfRange(usize, usize, usize),
    #[error("cover ({0}, {1}) listed more than once")]
    DuplicateCover(usize, usize),
    #[error("covers contain a directed cycle through element {0}")]
    CycleDetected(usize),
    #[error("cover ({0}, {1}) is implied by a longer cover path")]
    RedundantCover(usize, usize),
    #[error("rank {rank} is outside 0..={top}")]
    RankOutOfRange { rank: usize, top: usize },
    #[error("rank selection is empty")]
    EmptySelection,
    #[error("poset is empty")]
    Empty,
}

/// Errors raised by the morphism engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("element {0} is not up-single")]
    NotUpSingle(usize),
    #[error("{b} is not an older sibling of {a}")]
    NotOlderSibling { a: usize, b: usize },
    #[error("element {x} is not central in the window: {detail}")]
    NotCentral { x: usize, detail: String },
    #[error("element {0} does not lie strictly inside the window")]
    NotInterior(usize),
    #[error("pair classification is {0}, expected an S2 ladder")]
    WrongCase(String),
    #[error("constructed map is not order-preserving: cover ({0}, {1}) is violated")]
    NotOrderPreserving(usize, usize),
    #[error("maps act on different element counts ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("search exceeded the budget of {0} nodes")]
    Budget(u64),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
}

/// Errors raised by the family generators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("glue mismatch: {0}")]
    GlueMismatch(String),
    #[error("no connected sample after {0} retries")]
    RetryExhausted(usize),
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
}
