//! Temporal network community analysis: ingest, sampling, uniform timeslicing,
//! per-slice community detection and tracking, taxonomy classification, and
//! the geometry of the views built on top of them.

pub mod community;
pub mod error;
pub mod ingest;
pub mod layout;
pub mod metrics;
pub mod model;
pub mod pipeline;
pub mod rng;
pub mod sampling;
pub mod slicing;
pub mod taxonomy;
pub mod views;

pub use error::{Error, Result};
pub use model::{
    build_network, network_summary, Community, CommunityKey, NetworkSummary, TemporalEdge,
    TemporalNetwork, Timeslice,
};
pub use pipeline::{analyze, analyze_with_progress, AnalysisConfig, AnalysisResult, Progress};
