//! Core data model: temporal networks, timeslices and communities.
//!
//! Node identifiers are interned: [`TemporalNetwork`] keeps the sorted list of
//! node names and every [`Edge`] refers to nodes by index into that list. Because
//! the list is sorted, index order equals lexicographic id order, so edges sorted
//! by `(t, u, v)` are in canonical `(timestamp, min-id, max-id)` order.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::taxonomy::{EvolutionEvent, StructuralCategory, TemporalCategory};

pub type NodeIdx = u32;
pub type Timestamp = i64;

/// An undirected timestamped edge between two named nodes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TemporalEdge {
    pub source: String,
    pub target: String,
    pub timestamp: Timestamp,
}

impl TemporalEdge {
    pub fn new(source: impl Into<String>, target: impl Into<String>, timestamp: Timestamp) -> Self {
        TemporalEdge {
            source: source.into(),
            target: target.into(),
            timestamp,
        }
    }
}

/// Interned edge. Always `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub t: Timestamp,
    pub u: NodeIdx,
    pub v: NodeIdx,
}

impl Edge {
    pub fn other(&self, x: NodeIdx) -> NodeIdx {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// What [`build_network`] dropped or collapsed on the way in.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildReport {
    pub self_loops_dropped: usize,
    pub duplicates_collapsed: usize,
    /// Metadata keys that do not name a node of the network.
    pub metadata_dropped: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TemporalNetwork {
    nodes: Vec<String>,
    index: HashMap<String, NodeIdx>,
    edges: Vec<Edge>,
    labels: Option<Vec<Option<String>>>,
    t_min: Timestamp,
    t_max: Timestamp,
}

/// Builds a network from raw edges. Self-loops are dropped, `(a,b,t)` and
/// `(b,a,t)` collapse to one edge, and metadata keys that are not nodes are
/// dropped (both reported, neither fatal).
pub fn build_network(
    edges: impl IntoIterator<Item = TemporalEdge>,
    metadata: Option<&BTreeMap<String, String>>,
) -> Result<(TemporalNetwork, BuildReport)> {
    let mut report = BuildReport::default();
    let mut raw: Vec<(String, String, Timestamp)> = Vec::new();
    for e in edges {
        if e.source == e.target {
            report.self_loops_dropped += 1;
            continue;
        }
        let (a, b) = if e.source < e.target {
            (e.source, e.target)
        } else {
            (e.target, e.source)
        };
        raw.push((a, b, e.timestamp));
    }
    if raw.is_empty() {
        return Err(Error::EmptyNetwork);
    }

    let names: BTreeSet<&str> = raw
        .iter()
        .flat_map(|(a, b, _)| [a.as_str(), b.as_str()])
        .collect();
    let nodes: Vec<String> = names.into_iter().map(str::to_owned).collect();
    let index: HashMap<String, NodeIdx> = nodes
        .iter()
        .enumerate()
        .map(|(i, n)| (n.clone(), i as NodeIdx))
        .collect();

    let mut interned: Vec<Edge> = raw
        .iter()
        .map(|(a, b, t)| Edge {
            t: *t,
            u: index[a],
            v: index[b],
        })
        .collect();
    interned.sort_unstable();
    let before = interned.len();
    interned.dedup();
    report.duplicates_collapsed = before - interned.len();

    let labels = metadata.map(|meta| {
        let mut labels = vec![None; nodes.len()];
        for (node, label) in meta {
            match index.get(node) {
                Some(&i) => labels[i as usize] = Some(label.clone()),
                None => report.metadata_dropped.push(node.clone()),
            }
        }
        labels
    });

    let t_min = interned.first().map(|e| e.t).unwrap_or_default();
    let t_max = interned.iter().map(|e| e.t).max().unwrap_or_default();
    Ok((
        TemporalNetwork {
            nodes,
            index,
            edges: interned,
            labels,
            t_min,
            t_max,
        },
        report,
    ))
}

impl TemporalNetwork {
    /// Rebuilds a network from already interned edges of `self`, keeping only
    /// nodes that still have an edge. Used by sampling.
    pub(crate) fn restrict_to_edges(&self, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let meta = self.metadata_map();
        let raw: Vec<TemporalEdge> = edges
            .into_iter()
            .map(|e| TemporalEdge::new(self.name(e.u), self.name(e.v), e.t))
            .collect();
        // metadata keys outside the sample are expected here, so the report is ignored
        build_network(raw, meta.as_ref()).map(|(net, _)| net)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn name(&self, idx: NodeIdx) -> &str {
        &self.nodes[idx as usize]
    }

    pub fn node_index(&self, name: &str) -> Option<NodeIdx> {
        self.index.get(name).copied()
    }

    /// Edges in canonical `(timestamp, min-id, max-id)` order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn time_range(&self) -> (Timestamp, Timestamp) {
        (self.t_min, self.t_max)
    }

    /// Number of timestamps in the observation period, `t_max - t_min + 1`.
    pub fn span(&self) -> i64 {
        self.t_max - self.t_min + 1
    }

    pub fn has_metadata(&self) -> bool {
        self.labels.is_some()
    }

    pub fn label(&self, idx: NodeIdx) -> Option<&str> {
        self.labels
            .as_ref()
            .and_then(|l| l[idx as usize].as_deref())
    }

    pub fn metadata_map(&self) -> Option<BTreeMap<String, String>> {
        self.labels.as_ref().map(|labels| {
            labels
                .iter()
                .enumerate()
                .filter_map(|(i, l)| l.as_ref().map(|l| (self.nodes[i].clone(), l.clone())))
                .collect()
        })
    }

    /// Edges back in string form, canonical order.
    pub fn temporal_edges(&self) -> Vec<TemporalEdge> {
        self.edges
            .iter()
            .map(|e| TemporalEdge::new(self.name(e.u), self.name(e.v), e.t))
            .collect()
    }

    /// Index range of the edges with `start <= t <= end`.
    pub fn edge_range(&self, start: Timestamp, end: Timestamp) -> Range<usize> {
        let lo = self.edges.partition_point(|e| e.t < start);
        let hi = self.edges.partition_point(|e| e.t <= end);
        lo..hi
    }

    pub fn summary(&self) -> NetworkSummary {
        network_summary(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkSummary {
    pub nodes: usize,
    pub edges: usize,
    /// Length of the observation period in timestamps (`t_max - t_min + 1`).
    pub timestamps: i64,
    /// Distinct timestamps carrying at least one edge.
    pub active_timestamps: usize,
    pub t_min: Timestamp,
    pub t_max: Timestamp,
    pub metadata_categories: Vec<String>,
}

pub fn network_summary(net: &TemporalNetwork) -> NetworkSummary {
    let mut active = 0;
    let mut last = None;
    for e in &net.edges {
        if last != Some(e.t) {
            active += 1;
            last = Some(e.t);
        }
    }
    let categories: BTreeSet<&str> = net
        .labels
        .iter()
        .flatten()
        .filter_map(|l| l.as_deref())
        .collect();
    NetworkSummary {
        nodes: net.node_count(),
        edges: net.edge_count(),
        timestamps: net.span(),
        active_timestamps: active,
        t_min: net.t_min,
        t_max: net.t_max,
        metadata_categories: categories.into_iter().map(str::to_owned).collect(),
    }
}

/// A contiguous, inclusive interval of timestamps and the edges inside it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timeslice {
    /// 1-based.
    pub index: usize,
    pub t_start: Timestamp,
    pub t_end: Timestamp,
    /// Index range into [`TemporalNetwork::edges`].
    #[serde(skip)]
    pub edge_range: Range<usize>,
    pub edge_count: usize,
}

impl Timeslice {
    pub fn len(&self) -> i64 {
        self.t_end - self.t_start + 1
    }

    pub fn is_empty(&self) -> bool {
        self.edge_count == 0
    }

    pub fn edges<'a>(&self, net: &'a TemporalNetwork) -> &'a [Edge] {
        &net.edges()[self.edge_range.clone()]
    }
}

/// `(slice index, local id)`. Slice indices are 1-based, local ids 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CommunityKey {
    pub slice: usize,
    pub local: usize,
}

impl CommunityKey {
    pub fn new(slice: usize, local: usize) -> Self {
        CommunityKey { slice, local }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Community {
    pub key: CommunityKey,
    /// Sorted node indices.
    pub members: Vec<NodeIdx>,
    /// Temporal edges with both endpoints in `members`, canonical order.
    pub intra_edges: Vec<Edge>,
    pub structural: StructuralCategory,
    pub temporal: TemporalCategory,
    pub evolution: BTreeSet<EvolutionEvent>,
}

impl Community {
    pub fn new(key: CommunityKey, mut members: Vec<NodeIdx>, intra_edges: Vec<Edge>) -> Self {
        members.sort_unstable();
        Community {
            key,
            members,
            intra_edges,
            structural: StructuralCategory::LowConnectivity,
            temporal: TemporalCategory::default(),
            evolution: BTreeSet::new(),
        }
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, node: NodeIdx) -> bool {
        self.members.binary_search(&node).is_ok()
    }

    /// Distinct node pairs among the intra edges, sorted.
    pub fn aggregated_pairs(&self) -> Vec<(NodeIdx, NodeIdx)> {
        let mut pairs: Vec<(NodeIdx, NodeIdx)> =
            self.intra_edges.iter().map(|e| (e.u, e.v)).collect();
        pairs.sort_unstable();
        pairs.dedup();
        pairs
    }
}

/// True when no node belongs to two communities of the same slice.
pub fn communities_disjoint(communities: &[Community]) -> bool {
    let mut seen: HashMap<usize, BTreeSet<NodeIdx>> = HashMap::new();
    for c in communities {
        let set = seen.entry(c.key.slice).or_default();
        for &m in &c.members {
            if !set.insert(m) {
                return false;
            }
        }
    }
    true
}
