use serde::{Deserialize, Serialize};

use super::StructuralCategory;
use crate::model::{Community, NodeIdx};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct StructuralParams {
    pub clique_density_min: f64,
    pub star_hub_min: f64,
    pub star_leaf_median_max: usize,
    pub circular_degree2_min: f64,
    pub tree_slack: usize,
}

impl Default for StructuralParams {
    fn default() -> Self {
        StructuralParams {
            clique_density_min: 0.9,
            star_hub_min: 0.8,
            star_leaf_median_max: 1,
            circular_degree2_min: 0.9,
            tree_slack: 0,
        }
    }
}

pub fn classify_structural(c: &Community, p: &StructuralParams) -> StructuralCategory {
    let pairs = c.aggregated_pairs();
    let local = |x: NodeIdx| c.members.binary_search(&x).unwrap() as u32;
    let pairs: Vec<(u32, u32)> = pairs.iter().map(|&(a, b)| (local(a), local(b))).collect();
    classify_graph(c.size(), &pairs, p)
}

/// Classifies a simple graph on nodes `0..n` given its distinct edges.
///
/// First match wins: Clique, Circular, Star, Tree, then Low-connectivity. The
/// median degree of an even-sized graph is the mean of the two middle values.
pub fn classify_graph(n: usize, pairs: &[(u32, u32)], p: &StructuralParams) -> StructuralCategory {
    let m = pairs.len();
    if n < 2 || m == 0 {
        return StructuralCategory::LowConnectivity;
    }
    let mut degree = vec![0usize; n];
    for &(a, b) in pairs {
        degree[a as usize] += 1;
        degree[b as usize] += 1;
    }

    let density = 2.0 * m as f64 / (n * (n - 1)) as f64;
    if density >= p.clique_density_min {
        return StructuralCategory::Clique;
    }

    let connected = is_connected(n, pairs);
    let degree2 = degree.iter().filter(|&&d| d == 2).count() as f64 / n as f64;
    if connected && degree2 >= p.circular_degree2_min && m <= n + p.tree_slack {
        return StructuralCategory::Circular;
    }

    let max_degree = *degree.iter().max().unwrap();
    let mut sorted = degree.clone();
    sorted.sort_unstable();
    let median = if n % 2 == 1 {
        sorted[n / 2] as f64
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) as f64 / 2.0
    };
    if max_degree as f64 / (n - 1) as f64 >= p.star_hub_min && median <= p.star_leaf_median_max as f64 {
        return StructuralCategory::Star;
    }

    if connected && m <= n - 1 + p.tree_slack {
        return StructuralCategory::Tree;
    }
    StructuralCategory::LowConnectivity
}

fn is_connected(n: usize, pairs: &[(u32, u32)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = n;
    for &(a, b) in pairs {
        let (ra, rb) = (find(&mut parent, a as usize), find(&mut parent, b as usize));
        if ra != rb {
            parent[ra] = rb;
            components -= 1;
        }
    }
    components == 1
}
