use thiserror::Error;

use crate::ingest::LineIssue;

#[derive(Debug, Error)]
pub enum Error {
    #[error("network has no valid edges")]
    EmptyNetwork,

    #[error("no valid edges found ({} malformed lines)", .issues.len())]
    NoValidEdges { issues: Vec<LineIssue> },

    #[error("sampling produced a network without edges")]
    EmptySample,

    #[error("invalid sampling spec: {0}")]
    InvalidSampling(String),

    #[error("invalid slice count {requested}: must be in 1..={max}")]
    InvalidSliceCount { requested: usize, max: i64 },

    #[error("modularity is undefined on a graph without edges")]
    EmptyGraph,

    #[error("community has {size} nodes, summarization needs more than {threshold}")]
    BelowThreshold { size: usize, threshold: usize },

    #[error("node {0:?} is not a member of the community")]
    NodeNotInCommunity(String),

    #[error("unknown community ({slice}, {local})")]
    UnknownCommunity { slice: usize, local: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
