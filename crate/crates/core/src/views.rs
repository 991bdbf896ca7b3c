//! JSON payloads shared by the HTTP API and the CLI export. Real values are
//! rounded to 4 decimals.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::community::LinkKind;
use crate::error::{Error, Result};
use crate::layout::{global_grid_positions, spring_layout, summarize_supernodes, tam_rows, Superedge, DEFAULT_ITERATIONS};
use crate::metrics::{centralities, community_details, community_graph, details, pivot_count, CommunityDetails, NodeDetails};
use crate::model::{CommunityKey, NetworkSummary, NodeIdx, Timestamp};
use crate::pipeline::{AnalysisConfig, AnalysisResult};
use crate::slicing::SliceSuggestion;
use crate::taxonomy::{taxonomy_matrix, EvolutionEvent, StructuralCategory, Taxonomy, TaxonomyMatrix, TemporalCategory};

pub fn round4(x: f64) -> f64 {
    let r = (x * 1e4).round() / 1e4;
    // avoid "-0.0" in output
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SliceView {
    pub index: usize,
    pub t_start: Timestamp,
    pub t_end: Timestamp,
    pub edge_count: usize,
    pub community_count: usize,
    pub modularity: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Overview {
    pub summary: NetworkSummary,
    /// Summary after sampling.
    pub analyzed: NetworkSummary,
    pub suggestion: SliceSuggestion,
    pub slice_count: usize,
    pub slice_count_clamped_from: Option<usize>,
    pub slices: Vec<SliceView>,
    pub community_count: usize,
    pub link_count: usize,
    pub truncated_links: usize,
    pub mean_modularity: f64,
    pub config: AnalysisConfig,
}

pub fn overview(r: &AnalysisResult) -> Overview {
    let mut per_slice = vec![0usize; r.slices.len()];
    for c in &r.communities {
        per_slice[c.key.slice - 1] += 1;
    }
    Overview {
        summary: r.summary.clone(),
        analyzed: r.network.summary(),
        suggestion: r.suggestion,
        slice_count: r.slices.len(),
        slice_count_clamped_from: r.slice_count_clamped_from,
        slices: r
            .slices
            .iter()
            .zip(&r.slice_modularity)
            .zip(per_slice)
            .map(|((s, q), n)| SliceView {
                index: s.index,
                t_start: s.t_start,
                t_end: s.t_end,
                edge_count: s.edge_count,
                community_count: n,
                modularity: q.map(round4),
            })
            .collect(),
        community_count: r.communities.len(),
        link_count: r.links.len(),
        truncated_links: r.truncated_links,
        mean_modularity: round4(r.mean_modularity),
        config: r.config.clone(),
    }
}

pub fn matrix_view(r: &AnalysisResult, x: Taxonomy, y: Taxonomy) -> TaxonomyMatrix {
    taxonomy_matrix(&r.communities, x, y)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub slice: usize,
    pub local: usize,
    /// 1-based, equal to the slice index.
    pub column: usize,
    /// 0-based.
    pub row: usize,
    pub size: usize,
    pub structural: StructuralCategory,
    pub temporal: TemporalCategory,
    pub evolution: Vec<EvolutionEvent>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkView {
    pub from: CommunityKey,
    pub to: CommunityKey,
    pub from_row: usize,
    pub to_row: usize,
    pub from_size: usize,
    pub to_size: usize,
    /// Shared node count.
    pub thickness: usize,
    pub similarity: f64,
    pub length: f64,
    pub kind: LinkKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GlobalView {
    pub columns: usize,
    pub rows: usize,
    pub circles: Vec<Circle>,
    pub links: Vec<LinkView>,
    pub total_link_length: f64,
}

pub fn global_view(r: &AnalysisResult) -> GlobalView {
    let grid = global_grid_positions(r.slices.len(), &r.keys(), &r.links);
    let rows: BTreeMap<CommunityKey, usize> = grid
        .columns
        .iter()
        .flat_map(|c| c.cells.iter().map(|cell| (cell.key, cell.row)))
        .collect();
    let circles = r
        .communities
        .iter()
        .map(|c| Circle {
            slice: c.key.slice,
            local: c.key.local,
            column: c.key.slice,
            row: rows[&c.key],
            size: c.size(),
            structural: c.structural,
            temporal: c.temporal,
            evolution: c.evolution.iter().copied().collect(),
        })
        .collect();
    let links = r
        .links
        .iter()
        .zip(&grid.links)
        .map(|(l, g)| LinkView {
            from: l.from,
            to: l.to,
            from_row: g.from_row,
            to_row: g.to_row,
            from_size: l.from_size,
            to_size: l.to_size,
            thickness: l.overlap,
            similarity: round4(l.similarity),
            length: round4(g.length),
            kind: l.kind(),
        })
        .collect();
    GlobalView {
        columns: r.slices.len(),
        rows: grid.capacity,
        circles,
        links,
        total_link_length: round4(grid.total_length),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeView {
    pub id: String,
    pub label: Option<String>,
    pub x: f64,
    pub y: f64,
    pub degree: f64,
    pub closeness: f64,
    pub betweenness: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeView {
    pub source: String,
    pub target: String,
    /// Timestamps at which the pair interacts within the slice.
    pub weight: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupernodeView {
    pub id: usize,
    pub members: Vec<String>,
    pub size: usize,
    pub label: Option<String>,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuperGraphView {
    pub supernodes: Vec<SupernodeView>,
    pub superedges: Vec<Superedge>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TamRowView {
    pub node: String,
    pub label: Option<String>,
    pub active: Vec<Timestamp>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TamView {
    pub t_start: Timestamp,
    pub t_end: Timestamp,
    pub rows: Vec<TamRowView>,
    pub series: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommunityView {
    pub slice: usize,
    pub local: usize,
    pub structural: StructuralCategory,
    pub temporal: TemporalCategory,
    pub evolution: Vec<EvolutionEvent>,
    pub details: CommunityDetails,
    /// True when the community is above the supernode threshold; `supergraph`
    /// is then present alongside the full node positions.
    pub summarized: bool,
    pub nodes: Vec<NodeView>,
    pub edges: Vec<EdgeView>,
    pub supergraph: Option<SuperGraphView>,
    pub tam: TamView,
}

fn unknown(key: CommunityKey) -> Error {
    Error::UnknownCommunity {
        slice: key.slice,
        local: key.local,
    }
}

pub fn community_view(r: &AnalysisResult, key: CommunityKey) -> Result<CommunityView> {
    let c = r.community(key).ok_or_else(|| unknown(key))?;
    let slice = r.slice(key.slice).ok_or_else(|| unknown(key))?;
    let net = &r.network;
    let seed = r.community_seed(key);

    let g = community_graph(c);
    let mut pair_weight: BTreeMap<(NodeIdx, NodeIdx), usize> = BTreeMap::new();
    for e in &c.intra_edges {
        *pair_weight.entry((e.u, e.v)).or_default() += 1;
    }
    let layout_edges: Vec<(u32, u32, f64)> = g.pairs.iter().map(|&(a, b)| (a, b, 1.0)).collect();
    let positions = spring_layout(g.node_count(), &layout_edges, seed, DEFAULT_ITERATIONS);
    let metrics = centralities(&g.adjacency(), pivot_count(g.node_count()), seed);
    let nodes = c
        .members
        .iter()
        .zip(positions)
        .zip(metrics)
        .map(|((&m, [x, y]), cent)| NodeView {
            id: net.name(m).to_owned(),
            label: net.label(m).map(str::to_owned),
            x: round4(x),
            y: round4(y),
            degree: round4(cent.degree),
            closeness: round4(cent.closeness),
            betweenness: round4(cent.betweenness),
        })
        .collect();
    let edges = pair_weight
        .into_iter()
        .map(|((u, v), weight)| EdgeView {
            source: net.name(u).to_owned(),
            target: net.name(v).to_owned(),
            weight,
        })
        .collect();

    let summarized = c.size() > r.config.supernode_threshold;
    let supergraph = if summarized {
        let sg = summarize_supernodes(net, c, r.config.supernode_threshold, seed)?;
        Some(SuperGraphView {
            supernodes: sg
                .supernodes
                .into_iter()
                .map(|s| SupernodeView {
                    id: s.id,
                    members: s.members.iter().map(|&m| net.name(m).to_owned()).collect(),
                    size: s.size,
                    label: s.label,
                    x: round4(s.x),
                    y: round4(s.y),
                })
                .collect(),
            superedges: sg.superedges,
        })
    } else {
        None
    };

    let tam = tam_rows(net, c, slice);
    let mut details = community_details(c, slice);
    details.activity_percent = round4(details.activity_percent);
    Ok(CommunityView {
        slice: key.slice,
        local: key.local,
        structural: c.structural,
        temporal: c.temporal,
        evolution: c.evolution.iter().copied().collect(),
        details,
        summarized,
        nodes,
        edges,
        supergraph,
        tam: TamView {
            t_start: tam.t_start,
            t_end: tam.t_end,
            rows: tam
                .rows
                .into_iter()
                .map(|row| TamRowView {
                    node: net.name(row.node).to_owned(),
                    label: row.label,
                    active: row.active,
                })
                .collect(),
            series: tam.series,
        },
    })
}

pub fn node_view(r: &AnalysisResult, key: CommunityKey, node: &str) -> Result<NodeDetails> {
    let c = r.community(key).ok_or_else(|| unknown(key))?;
    let idx = r
        .network
        .node_index(node)
        .filter(|&i| c.contains(i))
        .ok_or_else(|| Error::NodeNotInCommunity(node.to_owned()))?;
    let g = community_graph(c);
    let all = centralities(&g.adjacency(), pivot_count(g.node_count()), r.community_seed(key));
    let i = c.members.binary_search(&idx).unwrap();
    let mut d = details(&r.network, idx, all[i]);
    d.degree = round4(d.degree);
    d.closeness = round4(d.closeness);
    d.betweenness = round4(d.betweenness);
    Ok(d)
}

/// Everything the views need, for offline replay.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Export {
    pub overview: Overview,
    pub matrices: Vec<TaxonomyMatrix>,
    pub globalview: GlobalView,
    pub communities: Vec<CommunityView>,
}

pub fn export(r: &AnalysisResult) -> Result<Export> {
    use rayon::prelude::*;
    let axes = [Taxonomy::Structural, Taxonomy::Temporal, Taxonomy::Evolution];
    let matrices = axes
        .iter()
        .flat_map(|&y| axes.iter().map(move |&x| matrix_view(r, x, y)))
        .collect();
    let communities = r
        .communities
        .par_iter()
        .map(|c| community_view(r, c.key))
        .collect::<Result<Vec<_>>>()?;
    Ok(Export {
        overview: overview(r),
        matrices,
        globalview: global_view(r),
        communities,
    })
}
