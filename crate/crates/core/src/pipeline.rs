//! End-to-end analysis: sampling, slicing, detection, linking, classification.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::community::{detect_communities, link_communities, EvolutionLink, DEFAULT_MIN_SIZE, DEFAULT_TAU};
use crate::error::{Error, Result};
use crate::layout::DEFAULT_SUPERNODE_THRESHOLD;
use crate::model::{Community, CommunityKey, NetworkSummary, TemporalNetwork, Timeslice};
use crate::rng;
use crate::sampling::{apply_sampling, SamplingSpec};
use crate::slicing::{
    default_window, suggest_slice_counts, uniform_slices, SliceSuggestion, DEFAULT_SUGGESTION_BASELINE,
};
use crate::taxonomy::{classify_evolution, classify_structural, classify_temporal, StructuralParams, TemporalParams};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AnalysisConfig {
    /// `None` uses the suggested default count.
    pub slice_count: Option<usize>,
    pub min_community_size: usize,
    pub sampling: SamplingSpec,
    pub seed: u64,
    pub tau: f64,
    pub structural: StructuralParams,
    pub temporal: TemporalParams,
    pub supernode_threshold: usize,
    /// Suggestion window stride; `None` means one hundredth of the period.
    pub suggestion_window: Option<i64>,
    pub suggestion_baseline: usize,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            slice_count: None,
            min_community_size: DEFAULT_MIN_SIZE,
            sampling: SamplingSpec::default(),
            seed: 0,
            tau: DEFAULT_TAU,
            structural: StructuralParams::default(),
            temporal: TemporalParams::default(),
            supernode_threshold: DEFAULT_SUPERNODE_THRESHOLD,
            suggestion_window: None,
            suggestion_baseline: DEFAULT_SUGGESTION_BASELINE,
        }
    }
}

impl AnalysisConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.slice_count == Some(0) {
            return bad("slice_count must be >= 1".into());
        }
        if self.min_community_size == 0 {
            return bad("min_community_size must be >= 1".into());
        }
        if !(self.tau > 0.0 && self.tau <= 1.0) {
            return bad(format!("tau must be in (0, 1], got {}", self.tau));
        }
        let s = &self.structural;
        for (name, v) in [
            ("clique_density_min", s.clique_density_min),
            ("star_hub_min", s.star_hub_min),
            ("circular_degree2_min", s.circular_degree2_min),
        ] {
            if !(v > 0.0 && v <= 1.0) {
                return bad(format!("{name} must be in (0, 1], got {v}"));
            }
        }
        if !(self.temporal.dispersion_alpha > 0.0) {
            return bad("dispersion_alpha must be > 0".into());
        }
        if self.suggestion_window.is_some_and(|w| w < 1) {
            return bad("suggestion_window must be >= 1".into());
        }
        if self.suggestion_baseline < 2 {
            return bad("suggestion_baseline must be >= 2".into());
        }
        self.sampling.validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "stage", rename_all = "snake_case")]
pub enum Progress {
    Sampling,
    Suggesting,
    Slicing,
    Detecting { done: usize, total: usize },
    Linking,
    Classifying,
    Done,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct StageTimings {
    pub sampling: Duration,
    pub suggestion: Duration,
    pub detection: Duration,
    pub linking: Duration,
    pub classification: Duration,
}

#[derive(Debug, Clone)]
pub struct AnalysisResult {
    /// The network as ingested.
    pub summary: NetworkSummary,
    /// The network after sampling; what slices and communities refer to.
    pub network: TemporalNetwork,
    pub suggestion: SliceSuggestion,
    pub slices: Vec<Timeslice>,
    /// Requested slice count when it had to be lowered.
    pub slice_count_clamped_from: Option<usize>,
    /// Louvain modularity per slice; `None` for slices without edges.
    pub slice_modularity: Vec<Option<f64>>,
    pub mean_modularity: f64,
    /// Sorted by key.
    pub communities: Vec<Community>,
    pub links: Vec<EvolutionLink>,
    pub truncated_links: usize,
    pub config: AnalysisConfig,
    pub timings: StageTimings,
}

impl AnalysisResult {
    pub fn community(&self, key: CommunityKey) -> Option<&Community> {
        self.communities
            .binary_search_by_key(&key, |c| c.key)
            .ok()
            .map(|i| &self.communities[i])
    }

    pub fn slice(&self, index: usize) -> Option<&Timeslice> {
        self.slices.get(index.checked_sub(1)?)
    }

    pub fn keys(&self) -> Vec<CommunityKey> {
        self.communities.iter().map(|c| c.key).collect()
    }

    /// Seed for layouts and metrics of one community.
    pub fn community_seed(&self, key: CommunityKey) -> u64 {
        rng::derive(rng::derive(self.config.seed, key.slice as u64), key.local as u64)
    }
}

pub fn analyze(net: &TemporalNetwork, config: &AnalysisConfig) -> Result<AnalysisResult> {
    analyze_with_progress(net, config, &|_| {})
}

pub fn analyze_with_progress(
    net: &TemporalNetwork,
    config: &AnalysisConfig,
    progress: &(dyn Fn(Progress) + Sync),
) -> Result<AnalysisResult> {
    config.validate()?;
    let mut timings = StageTimings::default();

    progress(Progress::Sampling);
    let clock = Instant::now();
    let sampled = apply_sampling(net, &config.sampling)?;
    timings.sampling = clock.elapsed();

    progress(Progress::Suggesting);
    let clock = Instant::now();
    let window = config.suggestion_window.unwrap_or_else(|| default_window(&sampled));
    let suggestion = suggest_slice_counts(&sampled, window, config.suggestion_baseline);
    timings.suggestion = clock.elapsed();

    progress(Progress::Slicing);
    let k = config.slice_count.unwrap_or(suggestion.default_count);
    let slicing = uniform_slices(&sampled, k)?;

    let clock = Instant::now();
    let total = slicing.slices.len();
    let done = std::sync::atomic::AtomicUsize::new(0);
    progress(Progress::Detecting { done: 0, total });
    let detections: Vec<_> = slicing
        .slices
        .par_iter()
        .map(|slice| {
            let seed = rng::derive(config.seed, slice.index as u64);
            let d = detect_communities(&sampled, slice, config.min_community_size, seed);
            let n = done.fetch_add(1, std::sync::atomic::Ordering::Relaxed) + 1;
            progress(Progress::Detecting { done: n, total });
            d
        })
        .collect();
    timings.detection = clock.elapsed();

    let slice_modularity: Vec<Option<f64>> = detections.iter().map(|d| d.modularity).collect();
    let measured: Vec<f64> = slice_modularity.iter().flatten().copied().collect();
    let mean_modularity = if measured.is_empty() {
        0.0
    } else {
        measured.iter().sum::<f64>() / measured.len() as f64
    };
    let per_slice: Vec<Vec<Community>> = detections.into_iter().map(|d| d.communities).collect();

    progress(Progress::Linking);
    let clock = Instant::now();
    let linkings: Vec<_> = per_slice
        .par_windows(2)
        .map(|w| link_communities(&w[0], &w[1], config.tau))
        .collect();
    let truncated_links = linkings.iter().map(|l| l.truncated).sum();
    let links: Vec<EvolutionLink> = linkings.into_iter().flat_map(|l| l.links).collect();
    timings.linking = clock.elapsed();

    progress(Progress::Classifying);
    let clock = Instant::now();
    let mut communities: Vec<Community> = per_slice.into_iter().flatten().collect();
    communities.par_iter_mut().for_each(|c| {
        let slice = &slicing.slices[c.key.slice - 1];
        c.structural = classify_structural(c, &config.structural);
        c.temporal = classify_temporal(c, slice, &config.temporal);
    });
    let mut events = classify_evolution(&communities, &links);
    for c in &mut communities {
        c.evolution = events.remove(&c.key).unwrap_or_default();
    }
    timings.classification = clock.elapsed();
    progress(Progress::Done);

    Ok(AnalysisResult {
        summary: net.summary(),
        network: sampled,
        suggestion,
        slices: slicing.slices,
        slice_count_clamped_from: slicing.clamped_from,
        slice_modularity,
        mean_modularity,
        communities,
        links,
        truncated_links,
        config: config.clone(),
        timings,
    })
}
