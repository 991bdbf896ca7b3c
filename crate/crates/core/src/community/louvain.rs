//! Multi-level Louvain modularity optimization (resolution 1).

use rand::seq::SliceRandom;

use super::graph::{weighted_modularity, Partition, WeightedGraph};
use crate::rng;

const MIN_GAIN: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct LouvainResult {
    pub partition: Partition,
    /// Modularity of the final partition on the input graph.
    pub modularity: f64,
    /// Modularity on the input graph after each aggregation level.
    pub level_modularity: Vec<f64>,
}

pub fn louvain(g: &WeightedGraph, seed: u64) -> LouvainResult {
    let n = g.node_count();
    let mut assignment: Vec<usize> = (0..n).collect();
    let mut level_modularity = Vec::new();
    if g.total_weight() <= 0.0 {
        return LouvainResult {
            partition: Partition::singletons(n),
            modularity: 0.0,
            level_modularity,
        };
    }

    let mut rng = rng::seeded(seed);
    let mut current = g.clone();
    loop {
        let mut order: Vec<usize> = (0..current.node_count()).collect();
        order.shuffle(&mut rng);
        let (labels, moved) = local_moving(&current, &order);
        if !moved {
            break;
        }
        let level = Partition::from_labels(&labels);
        for a in &mut assignment {
            *a = level.label(*a);
        }
        let q = weighted_modularity(g, &Partition::from_labels(&assignment))
            .expect("graph has positive weight");
        level_modularity.push(q);
        current = aggregate(&current, &level);
        if current.node_count() == 1 {
            break;
        }
    }

    let partition = Partition::from_labels(&assignment);
    let modularity = weighted_modularity(g, &partition).expect("graph has positive weight");
    LouvainResult {
        partition,
        modularity,
        level_modularity,
    }
}

/// Repeated passes of greedy single-node moves until no node moves.
fn local_moving(g: &WeightedGraph, order: &[usize]) -> (Vec<usize>, bool) {
    let n = g.node_count();
    let two_m = 2.0 * g.total_weight();
    let mut comm: Vec<usize> = (0..n).collect();
    let mut tot: Vec<f64> = (0..n).map(|i| g.degree(i)).collect();
    let mut link_weight = vec![0.0; n];
    let mut touched: Vec<usize> = Vec::new();
    let mut moved_any = false;

    loop {
        let mut moved = false;
        for &i in order {
            let ci = comm[i];
            let ki = g.degree(i);
            for &(j, w) in g.neighbors(i) {
                let cj = comm[j as usize];
                if link_weight[cj] == 0.0 {
                    touched.push(cj);
                }
                link_weight[cj] += w;
            }

            tot[ci] -= ki;
            let mut best = ci;
            let mut best_gain = link_weight[ci] - tot[ci] * ki / two_m;
            for &c in &touched {
                let gain = link_weight[c] - tot[c] * ki / two_m;
                if gain > best_gain + MIN_GAIN {
                    best = c;
                    best_gain = gain;
                }
            }
            tot[best] += ki;
            if best != ci {
                comm[i] = best;
                moved = true;
            }

            for &c in &touched {
                link_weight[c] = 0.0;
            }
            link_weight[ci] = 0.0;
            touched.clear();
        }
        if !moved {
            break;
        }
        moved_any = true;
    }
    (comm, moved_any)
}

/// Collapses each community of `p` into one node; internal weight becomes a
/// self-loop.
fn aggregate(g: &WeightedGraph, p: &Partition) -> WeightedGraph {
    let mut self_loops = vec![0.0; p.community_count()];
    let mut between: Vec<(u32, u32, f64)> = Vec::new();
    for i in 0..g.node_count() {
        let ci = p.label(i);
        self_loops[ci] += g.self_loop(i);
        for &(j, w) in g.neighbors(i) {
            let cj = p.label(j as usize);
            if ci == cj {
                // each internal edge is seen from both ends
                self_loops[ci] += w / 2.0;
            } else if ci < cj {
                between.push((ci as u32, cj as u32, w));
            }
        }
    }
    WeightedGraph::with_self_loops(self_loops, between)
}
