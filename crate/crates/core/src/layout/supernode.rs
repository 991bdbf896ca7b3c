use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::spring::{spring_layout, DEFAULT_ITERATIONS};
use crate::community::detect_subcommunities;
use crate::error::{Error, Result};
use crate::model::{Community, NodeIdx, TemporalNetwork};

pub const DEFAULT_SUPERNODE_THRESHOLD: usize = 200;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Supernode {
    pub id: usize,
    pub members: Vec<NodeIdx>,
    pub size: usize,
    /// Most frequent metadata label among members; ties go to the smallest.
    pub label: Option<String>,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Superedge {
    pub source: usize,
    pub target: usize,
    /// Distinct member pairs joining the two sub-communities.
    pub weight: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuperGraph {
    pub supernodes: Vec<Supernode>,
    pub superedges: Vec<Superedge>,
}

pub fn summarize_supernodes(
    net: &TemporalNetwork,
    c: &Community,
    threshold: usize,
    seed: u64,
) -> Result<SuperGraph> {
    if c.size() <= threshold {
        return Err(Error::BelowThreshold {
            size: c.size(),
            threshold,
        });
    }
    let groups = detect_subcommunities(c, seed);
    let mut owner: HashMap<NodeIdx, usize> = HashMap::new();
    for (g, members) in groups.iter().enumerate() {
        for &m in members {
            owner.insert(m, g);
        }
    }
    let mut weights: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (a, b) in c.aggregated_pairs() {
        let (ga, gb) = (owner[&a], owner[&b]);
        if ga != gb {
            *weights.entry((ga.min(gb), ga.max(gb))).or_default() += 1;
        }
    }
    let superedges: Vec<Superedge> = weights
        .into_iter()
        .map(|((source, target), weight)| Superedge {
            source,
            target,
            weight,
        })
        .collect();

    let layout_edges: Vec<(u32, u32, f64)> = superedges
        .iter()
        .map(|e| (e.source as u32, e.target as u32, e.weight as f64))
        .collect();
    let positions = spring_layout(groups.len(), &layout_edges, seed, DEFAULT_ITERATIONS);

    let supernodes = groups
        .into_iter()
        .zip(positions)
        .enumerate()
        .map(|(id, (members, [x, y]))| Supernode {
            id,
            size: members.len(),
            label: predominant_label(net, &members),
            members,
            x,
            y,
        })
        .collect();
    Ok(SuperGraph {
        supernodes,
        superedges,
    })
}

fn predominant_label(net: &TemporalNetwork, members: &[NodeIdx]) -> Option<String> {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for &m in members {
        if let Some(l) = net.label(m) {
            *counts.entry(l).or_default() += 1;
        }
    }
    // BTreeMap iterates labels in order, so the first maximum is the smallest label
    let mut best: Option<(&str, usize)> = None;
    for (l, n) in counts {
        if best.map_or(true, |(_, b)| n > b) {
            best = Some((l, n));
        }
    }
    best.map(|(l, _)| l.to_owned())
}
