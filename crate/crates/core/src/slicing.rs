//! Uniform timeslicing and the slice-count suggestion.
//!
//! The suggestion follows a density-driven rule where every edge has the same
//! weight: a target mass `E / baseline` is fixed, and for each window start
//! `p` we measure the shortest interval beginning at `p` holding that mass.
//! Intervals that would run past `t_max` are right-aligned to end at `t_max`
//! instead, so the tail of the stream is measured on the same footing as the
//! head. The min/mean/max interval lengths translate into slice counts. This
//! is an approximation of data-driven nonuniform slicing, used only to
//! propose a range; slicing itself is always uniform.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{TemporalNetwork, Timeslice, Timestamp};

pub const DEFAULT_SUGGESTION_BASELINE: usize = 50;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Slicing {
    pub slices: Vec<Timeslice>,
    /// Set when the requested count could not be honoured without zero-width
    /// trailing slices and was lowered to `slices.len()`.
    pub clamped_from: Option<usize>,
}

pub fn uniform_slices(net: &TemporalNetwork, k: usize) -> Result<Slicing> {
    let span = net.span();
    if k == 0 || k as i64 > span {
        return Err(Error::InvalidSliceCount {
            requested: k,
            max: span,
        });
    }
    let (t_min, t_max) = net.time_range();
    let len = (span + k as i64 - 1) / k as i64;
    let count = ((span + len - 1) / len) as usize;
    let slices = (0..count)
        .map(|i| {
            let t_start = t_min + i as i64 * len;
            let t_end = (t_start + len - 1).min(t_max);
            let edge_range = net.edge_range(t_start, t_end);
            Timeslice {
                index: i + 1,
                t_start,
                t_end,
                edge_count: edge_range.len(),
                edge_range,
            }
        })
        .collect();
    Ok(Slicing {
        slices,
        clamped_from: (count != k).then_some(k),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceSuggestion {
    pub min_count: usize,
    pub default_count: usize,
    pub max_count: usize,
}

/// Default window stride: one hundredth of the observation period.
pub fn default_window(net: &TemporalNetwork) -> i64 {
    (net.span() + 99) / 100
}

pub fn suggest_slice_counts(net: &TemporalNetwork, window: i64, baseline: usize) -> SliceSuggestion {
    let degenerate = SliceSuggestion {
        min_count: 1,
        default_count: 1,
        max_count: 1,
    };
    let span = net.span();
    if span <= 1 || net.edge_count() == 0 {
        return degenerate;
    }
    let window = window.max(1);
    let baseline = baseline.max(2);

    // distinct timestamps with cumulative edge counts
    let mut times: Vec<Timestamp> = Vec::new();
    let mut cum: Vec<usize> = Vec::new();
    for (i, e) in net.edges().iter().enumerate() {
        if times.last() == Some(&e.t) {
            *cum.last_mut().unwrap() = i + 1;
        } else {
            times.push(e.t);
            cum.push(i + 1);
        }
    }
    let total = net.edge_count();
    let target = total as f64 / baseline as f64;
    let (t_min, t_max) = net.time_range();

    // Right-aligned interval length used when the forward one cannot be filled.
    let tail_len = {
        let mut i = times.len();
        loop {
            i -= 1;
            let mass = total - if i == 0 { 0 } else { cum[i - 1] };
            if mass as f64 >= target || i == 0 {
                break t_max - times[i] + 1;
            }
        }
    };

    let mut lengths: Vec<i64> = Vec::new();
    let mut block = t_min;
    while block <= t_max {
        // first active timestamp in [block, block + window)
        let j = times.partition_point(|&t| t < block);
        if j < times.len() && times[j] < block + window {
            let before = if j == 0 { 0 } else { cum[j - 1] };
            let k = j + cum[j..].partition_point(|&c| ((c - before) as f64) < target);
            let len = if k < times.len() {
                times[k] - times[j] + 1
            } else {
                tail_len
            };
            lengths.push(len.clamp(1, span));
        }
        block += window;
    }
    if lengths.is_empty() {
        return degenerate;
    }

    let to_count = |len: f64| ((span as f64 / len).ceil() as i64).clamp(1, span) as usize;
    let longest = *lengths.iter().max().unwrap() as f64;
    let shortest = *lengths.iter().min().unwrap() as f64;
    let mean = lengths.iter().sum::<i64>() as f64 / lengths.len() as f64;
    SliceSuggestion {
        min_count: to_count(longest),
        default_count: to_count(mean),
        max_count: to_count(shortest),
    }
}
