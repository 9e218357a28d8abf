//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SkeinError {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),

    #[error("pd diagram too large: {crossings} crossings (limit {limit})")]
    DiagramTooLarge { crossings: usize, limit: usize },

    #[error("operation requires a single-component diagram, found {components}")]
    MultiComponent { components: usize },

    #[error("operation requires zero total writhe, found {writhe}")]
    NonzeroWrithe { writhe: i64 },

    #[error("module action reduction exceeded depth {0}; internal inconsistency")]
    ReductionDepthExceeded(usize),

    #[error("untagged generator in relation: {0}")]
    UntaggedGenerator(String),
}
