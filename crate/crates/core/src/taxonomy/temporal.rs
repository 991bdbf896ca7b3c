use serde::{Deserialize, Serialize};

use super::{Dispersion, Frequency, TemporalCategory};
use crate::model::{Community, Timeslice};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TemporalParams {
    pub dispersion_alpha: f64,
}

impl Default for TemporalParams {
    fn default() -> Self {
        TemporalParams {
            dispersion_alpha: 0.5,
        }
    }
}

/// Activity measurements a temporal category is derived from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TemporalProfile {
    /// Slice timestamps carrying at least one intra-community edge.
    pub active: usize,
    /// Slice length in timestamps.
    pub span: i64,
    /// Population standard deviation of intra-edge timestamps.
    pub sigma: f64,
    /// `sigma / (span / sqrt(12))`.
    pub sigma_ratio: f64,
}

pub fn temporal_profile(c: &Community, slice: &Timeslice) -> TemporalProfile {
    let times: Vec<f64> = c.intra_edges.iter().map(|e| e.t as f64).collect();
    let mut active = 0;
    let mut last = None;
    for e in &c.intra_edges {
        if last != Some(e.t) {
            active += 1;
            last = Some(e.t);
        }
    }
    let sigma = if times.is_empty() {
        0.0
    } else {
        let mean = times.iter().sum::<f64>() / times.len() as f64;
        (times.iter().map(|t| (t - mean).powi(2)).sum::<f64>() / times.len() as f64).sqrt()
    };
    let span = slice.len();
    TemporalProfile {
        active,
        span,
        sigma,
        sigma_ratio: sigma / (span as f64 / 12f64.sqrt()),
    }
}

pub fn classify_temporal(c: &Community, slice: &Timeslice, p: &TemporalParams) -> TemporalCategory {
    let profile = temporal_profile(c, slice);
    let frequency = if profile.active as i64 == profile.span {
        Frequency::Continuous
    } else {
        Frequency::Sporadic
    };
    let dispersion = if profile.sigma_ratio <= p.dispersion_alpha {
        Dispersion::Grouped
    } else {
        Dispersion::Dispersed
    };
    TemporalCategory::new(frequency, dispersion)
}
