//! Per-slice community detection and cross-slice linking.

mod graph;
mod linking;
mod louvain;

pub use graph::{modularity, weighted_modularity, Partition, SliceGraph, WeightedGraph};
pub use linking::{link_communities, EvolutionLink, LinkKind, Linking, SizeChange, DEFAULT_TAU};
pub use louvain::{louvain, LouvainResult};

use crate::model::{Community, CommunityKey, Edge, NodeIdx, TemporalNetwork, Timeslice};

pub const DEFAULT_MIN_SIZE: usize = 3;

#[derive(Debug, Clone)]
pub struct SliceDetection {
    pub communities: Vec<Community>,
    /// Louvain modularity of the unfiltered partition; `None` for an empty slice.
    pub modularity: Option<f64>,
}

pub fn detect_communities(
    net: &TemporalNetwork,
    slice: &Timeslice,
    min_size: usize,
    seed: u64,
) -> SliceDetection {
    let edges = slice.edges(net);
    if edges.is_empty() {
        return SliceDetection {
            communities: Vec::new(),
            modularity: None,
        };
    }
    let g = SliceGraph::from_edges(edges);
    let result = louvain(&g.graph, seed);

    let mut groups: Vec<Vec<NodeIdx>> = result
        .partition
        .groups()
        .into_iter()
        .map(|members| members.into_iter().map(|i| g.nodes[i]).collect::<Vec<_>>())
        .filter(|m| m.len() >= min_size.max(1))
        .collect();
    // members are already sorted, so m[0] is the smallest id
    groups.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));

    let label_of = |node: NodeIdx| g.local_index(node).map(|i| result.partition.label(i));
    let mut intra: Vec<Vec<Edge>> = vec![Vec::new(); groups.len()];
    let mut slot = std::collections::HashMap::new();
    for (i, members) in groups.iter().enumerate() {
        slot.insert(label_of(members[0]).unwrap(), i);
    }
    for e in edges {
        let (lu, lv) = (label_of(e.u), label_of(e.v));
        if lu == lv {
            if let Some(&i) = slot.get(&lu.unwrap()) {
                intra[i].push(*e);
            }
        }
    }

    let communities = groups
        .into_iter()
        .zip(intra)
        .enumerate()
        .map(|(local, (members, intra_edges))| {
            Community::new(CommunityKey::new(slice.index, local), members, intra_edges)
        })
        .collect();
    SliceDetection {
        communities,
        modularity: Some(result.modularity),
    }
}

/// Louvain over a community's aggregated intra-edge graph. Each returned group
/// is a sorted member list; groups are ordered by descending size, ties by
/// smallest member.
pub fn detect_subcommunities(c: &Community, seed: u64) -> Vec<Vec<NodeIdx>> {
    let g = SliceGraph::build(c.members.clone(), c.aggregated_pairs());
    let result = louvain(&g.graph, seed);
    let mut groups: Vec<Vec<NodeIdx>> = result
        .partition
        .groups()
        .into_iter()
        .map(|m| m.into_iter().map(|i| g.nodes[i]).collect())
        .collect();
    groups.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    groups
}
