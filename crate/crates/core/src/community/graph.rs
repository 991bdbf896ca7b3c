use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Edge, NodeIdx};

/// Undirected weighted graph over dense local indices. Self-loop weights are
/// kept apart from the adjacency lists; they appear after Louvain aggregation.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    adj: Vec<Vec<(u32, f64)>>,
    self_loops: Vec<f64>,
    degrees: Vec<f64>,
    total_weight: f64,
}

impl WeightedGraph {
    /// `edges` must not contain self-loops; parallel entries are summed.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (u32, u32, f64)>) -> Self {
        Self::with_self_loops(vec![0.0; n], edges)
    }

    pub(crate) fn with_self_loops(
        self_loops: Vec<f64>,
        edges: impl IntoIterator<Item = (u32, u32, f64)>,
    ) -> Self {
        let n = self_loops.len();
        let mut adj: Vec<Vec<(u32, f64)>> = vec![Vec::new(); n];
        for (a, b, w) in edges {
            debug_assert_ne!(a, b);
            adj[a as usize].push((b, w));
            adj[b as usize].push((a, w));
        }
        for list in &mut adj {
            list.sort_unstable_by_key(|&(j, _)| j);
            list.dedup_by(|next, kept| {
                if next.0 == kept.0 {
                    kept.1 += next.1;
                    true
                } else {
                    false
                }
            });
        }
        let degrees: Vec<f64> = adj
            .iter()
            .zip(&self_loops)
            .map(|(list, l)| list.iter().map(|&(_, w)| w).sum::<f64>() + 2.0 * l)
            .collect();
        let total_weight = degrees.iter().sum::<f64>() / 2.0;
        WeightedGraph {
            adj,
            self_loops,
            degrees,
            total_weight,
        }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, i: usize) -> &[(u32, f64)] {
        &self.adj[i]
    }

    pub fn self_loop(&self, i: usize) -> f64 {
        self.self_loops[i]
    }

    pub fn degree(&self, i: usize) -> f64 {
        self.degrees[i]
    }

    /// Sum of edge weights, self-loops counted once (`m`).
    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }
}

/// Node-to-community assignment with dense labels `0..count`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    labels: Vec<usize>,
    count: usize,
}

impl Partition {
    /// Relabels densely in order of first appearance.
    pub fn from_labels(raw: &[usize]) -> Self {
        let mut map = std::collections::HashMap::new();
        let labels: Vec<usize> = raw
            .iter()
            .map(|&l| {
                let next = map.len();
                *map.entry(l).or_insert(next)
            })
            .collect();
        Partition {
            count: map.len(),
            labels,
        }
    }

    pub fn singletons(n: usize) -> Self {
        Partition {
            labels: (0..n).collect(),
            count: n,
        }
    }

    pub fn label(&self, i: usize) -> usize {
        self.labels[i]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn community_count(&self) -> usize {
        self.count
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Member lists (local indices) per community label.
    pub fn groups(&self) -> Vec<Vec<usize>> {
        let mut groups = vec![Vec::new(); self.count];
        for (i, &l) in self.labels.iter().enumerate() {
            groups[l].push(i);
        }
        groups
    }
}

/// Newman-Girvan modularity, `sum_c in_c / m - (deg_c / 2m)^2`, at resolution 1.
pub fn weighted_modularity(g: &WeightedGraph, p: &Partition) -> Result<f64> {
    let m = g.total_weight();
    if m <= 0.0 {
        return Err(Error::EmptyGraph);
    }
    let mut inner = vec![0.0; p.community_count()];
    let mut tot = vec![0.0; p.community_count()];
    for i in 0..g.node_count() {
        let c = p.label(i);
        tot[c] += g.degree(i);
        inner[c] += g.self_loop(i);
        for &(j, w) in g.neighbors(i) {
            if (j as usize) > i && p.label(j as usize) == c {
                inner[c] += w;
            }
        }
    }
    Ok(inner
        .iter()
        .zip(&tot)
        .map(|(&i, &d)| i / m - (d / (2.0 * m)).powi(2))
        .sum())
}

/// The simple graph of one timeslice: every node pair that interacts at least
/// once in the slice becomes one unit-weight edge.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceGraph {
    /// Global node indices, sorted; position = local index.
    pub nodes: Vec<NodeIdx>,
    /// Distinct local pairs `(a, b)` with `a < b`, sorted.
    pub pairs: Vec<(u32, u32)>,
    pub graph: WeightedGraph,
}

impl SliceGraph {
    pub fn from_edges(edges: &[Edge]) -> Self {
        let mut nodes: Vec<NodeIdx> = edges.iter().flat_map(|e| [e.u, e.v]).collect();
        nodes.sort_unstable();
        nodes.dedup();
        Self::build(nodes, edges.iter().map(|e| (e.u, e.v)))
    }

    /// Graph over `nodes` (which may include isolated ones) and global pairs.
    pub fn build(nodes: Vec<NodeIdx>, global_pairs: impl IntoIterator<Item = (NodeIdx, NodeIdx)>) -> Self {
        let local = |x: NodeIdx| nodes.binary_search(&x).expect("pair endpoint not in node list") as u32;
        let mut pairs: Vec<(u32, u32)> = global_pairs
            .into_iter()
            .map(|(a, b)| {
                let (a, b) = (local(a), local(b));
                (a.min(b), a.max(b))
            })
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        let graph = WeightedGraph::from_edges(nodes.len(), pairs.iter().map(|&(a, b)| (a, b, 1.0)));
        SliceGraph { nodes, pairs, graph }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn local_index(&self, node: NodeIdx) -> Option<usize> {
        self.nodes.binary_search(&node).ok()
    }

    /// Unweighted adjacency lists over local indices.
    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &(a, b) in &self.pairs {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        adj
    }
}

pub fn modularity(partition: &Partition, g: &SliceGraph) -> Result<f64> {
    weighted_modularity(&g.graph, partition)
}
