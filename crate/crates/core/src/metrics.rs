//! Node centralities and community activity figures, computed on a community's
//! aggregated intra-edge graph.
//!
//! Betweenness is estimated from a seeded pivot sample `P` shared by all nodes
//! (`|P| = max(2, ceil(n / 4))`, capped at `n`). A node's estimate sums the
//! single-source dependencies of the pivots other than itself and rescales by
//! `(n - 1) / |P \ {v}|`, so with every node as a pivot the value is exact.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::community::SliceGraph;
use crate::error::{Error, Result};
use crate::model::{Community, NodeIdx, TemporalNetwork, Timeslice};
use crate::rng;

pub const PIVOT_FRACTION: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Centrality {
    pub degree: f64,
    pub closeness: f64,
    pub betweenness: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeDetails {
    pub node: String,
    pub label: Option<String>,
    pub degree: f64,
    pub closeness: f64,
    pub betweenness: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommunityDetails {
    pub nodes: usize,
    /// Temporal intra-community edges.
    pub edges: usize,
    pub active_timestamps: usize,
    pub activity_percent: f64,
}

pub fn pivot_count(n: usize) -> usize {
    ((PIVOT_FRACTION * n as f64).ceil() as usize).max(2).min(n)
}

pub fn community_graph(c: &Community) -> SliceGraph {
    SliceGraph::build(c.members.clone(), c.aggregated_pairs())
}

/// Centralities of every node of `adj` (local indices), using `pivots` pivots.
pub fn centralities(adj: &[Vec<u32>], pivots: usize, seed: u64) -> Vec<Centrality> {
    let n = adj.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng::seeded(seed));
    let pivots = &order[..pivots.min(n)];
    let betweenness = approximate_betweenness(adj, pivots);
    (0..n)
        .map(|v| Centrality {
            degree: if n > 1 { adj[v].len() as f64 / (n - 1) as f64 } else { 0.0 },
            closeness: closeness(adj, v),
            betweenness: betweenness[v],
        })
        .collect()
}

/// Wasserman-Faust closeness: `(r - 1) / sum d * (r - 1) / (n - 1)` where `r`
/// counts the nodes reachable from `v` (itself included). Isolated nodes get 0.
pub fn closeness(adj: &[Vec<u32>], v: usize) -> f64 {
    let n = adj.len();
    let dist = bfs_distances(adj, v);
    let (mut reach, mut total) = (0usize, 0usize);
    for d in dist.into_iter().flatten() {
        reach += 1;
        total += d;
    }
    if reach <= 1 || total == 0 {
        return 0.0;
    }
    let r = (reach - 1) as f64;
    (r / total as f64) * (r / (n - 1) as f64)
}

fn bfs_distances(adj: &[Vec<u32>], s: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[s] = Some(0);
    let mut queue = VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        let d = dist[x].unwrap();
        for &y in &adj[x] {
            if dist[y as usize].is_none() {
                dist[y as usize] = Some(d + 1);
                queue.push_back(y as usize);
            }
        }
    }
    dist
}

/// Normalized betweenness estimates for all nodes from the given pivots.
pub fn approximate_betweenness(adj: &[Vec<u32>], pivots: &[usize]) -> Vec<f64> {
    let n = adj.len();
    if n < 3 {
        return vec![0.0; n];
    }
    let mut sum = vec![0.0; n];
    let mut is_pivot = vec![false; n];
    let mut state = Brandes::new(n);
    for &s in pivots {
        is_pivot[s] = true;
        state.accumulate(adj, s, &mut sum);
    }
    let norm = ((n - 1) * (n - 2)) as f64 / 2.0;
    (0..n)
        .map(|v| {
            let others = pivots.len() - usize::from(is_pivot[v]);
            if others == 0 {
                return 0.0;
            }
            // each unordered pair is reached from both ends
            let estimate = sum[v] * (n - 1) as f64 / others as f64 / 2.0;
            (estimate / norm).clamp(0.0, 1.0)
        })
        .collect()
}

struct Brandes {
    sigma: Vec<f64>,
    dist: Vec<i64>,
    delta: Vec<f64>,
    stack: Vec<usize>,
    queue: VecDeque<usize>,
}

impl Brandes {
    fn new(n: usize) -> Self {
        Brandes {
            sigma: vec![0.0; n],
            dist: vec![-1; n],
            delta: vec![0.0; n],
            stack: Vec::with_capacity(n),
            queue: VecDeque::with_capacity(n),
        }
    }

    /// Adds the dependencies of source `s` on every other node to `out`.
    fn accumulate(&mut self, adj: &[Vec<u32>], s: usize, out: &mut [f64]) {
        self.sigma.iter_mut().for_each(|x| *x = 0.0);
        self.dist.iter_mut().for_each(|x| *x = -1);
        self.delta.iter_mut().for_each(|x| *x = 0.0);
        self.stack.clear();
        self.sigma[s] = 1.0;
        self.dist[s] = 0;
        self.queue.push_back(s);
        while let Some(x) = self.queue.pop_front() {
            self.stack.push(x);
            for &y in &adj[x] {
                let y = y as usize;
                if self.dist[y] < 0 {
                    self.dist[y] = self.dist[x] + 1;
                    self.queue.push_back(y);
                }
                if self.dist[y] == self.dist[x] + 1 {
                    self.sigma[y] += self.sigma[x];
                }
            }
        }
        while let Some(w) = self.stack.pop() {
            for &v in &adj[w] {
                let v = v as usize;
                if self.dist[v] == self.dist[w] - 1 {
                    self.delta[v] += self.sigma[v] / self.sigma[w] * (1.0 + self.delta[w]);
                }
            }
            if w != s {
                out[w] += self.delta[w];
            }
        }
    }
}

/// Details of `node` inside community `c`. Pivots are drawn with `seed`, so all
/// nodes of a community share one sample.
pub fn node_details(net: &TemporalNetwork, c: &Community, node: NodeIdx, seed: u64) -> Result<NodeDetails> {
    let i = c
        .members
        .binary_search(&node)
        .map_err(|_| Error::NodeNotInCommunity(net.name(node).to_owned()))?;
    let g = community_graph(c);
    let all = centralities(&g.adjacency(), pivot_count(g.node_count()), seed);
    Ok(details(net, node, all[i]))
}

pub(crate) fn details(net: &TemporalNetwork, node: NodeIdx, c: Centrality) -> NodeDetails {
    NodeDetails {
        node: net.name(node).to_owned(),
        label: net.label(node).map(str::to_owned),
        degree: c.degree,
        closeness: c.closeness,
        betweenness: c.betweenness,
    }
}

pub fn community_details(c: &Community, slice: &Timeslice) -> CommunityDetails {
    let mut active = 0;
    let mut last = None;
    for e in &c.intra_edges {
        if last != Some(e.t) {
            active += 1;
            last = Some(e.t);
        }
    }
    CommunityDetails {
        nodes: c.size(),
        edges: c.intra_edges.len(),
        active_timestamps: active,
        activity_percent: 100.0 * active as f64 / slice.len() as f64,
    }
}
