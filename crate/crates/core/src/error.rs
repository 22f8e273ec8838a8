use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("pattern on {size} vertices does not fit in a graph of order {order}")]
    PatternTooLarge { size: usize, order: usize },

    #[error("graph order {0} exceeds the build cap of {max}", max = crate::bits::MAX_ORDER)]
    OrderTooLarge(usize),

    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("graph is not triangle-free")]
    NotTriangleFree,

    #[error("no bound recorded for e(3,J_{k},{n})")]
    MissingTableEntry { k: usize, n: usize },

    #[error("conflicting bounds for e(3,J_{k},{n}): {old} vs {new}")]
    ExactConflict {
        k: usize,
        n: usize,
        old: String,
        new: String,
    },

    #[error("missing census for {0}")]
    MissingCensus(String),

    #[error("resource limit reached: {0}")]
    ResourceLimit(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
