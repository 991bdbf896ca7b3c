//! Optional node/edge reduction applied before slicing.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{NodeIdx, TemporalNetwork};
use crate::rng;

pub const DEFAULT_SNOWBALL_SEEDS: usize = 10;
pub const DEFAULT_SNOWBALL_WAVES: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum SamplingMethod {
    None,
    RandomNode { fraction: f64 },
    RandomEdge { fraction: f64 },
    Snowball { seeds: usize, waves: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplingSpec {
    #[serde(flatten)]
    pub method: SamplingMethod,
    #[serde(default)]
    pub rng_seed: u64,
}

impl Default for SamplingSpec {
    fn default() -> Self {
        SamplingSpec {
            method: SamplingMethod::None,
            rng_seed: 0,
        }
    }
}

impl SamplingSpec {
    pub fn new(method: SamplingMethod, rng_seed: u64) -> Self {
        SamplingSpec { method, rng_seed }
    }

    pub fn validate(&self) -> Result<()> {
        match self.method {
            SamplingMethod::None => Ok(()),
            SamplingMethod::RandomNode { fraction } | SamplingMethod::RandomEdge { fraction } => {
                if fraction > 0.0 && fraction <= 1.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidSampling(format!(
                        "fraction must be in (0, 1], got {fraction}"
                    )))
                }
            }
            SamplingMethod::Snowball { seeds, waves } => {
                if seeds >= 1 && waves >= 1 {
                    Ok(())
                } else {
                    Err(Error::InvalidSampling(
                        "snowball seeds and waves must be >= 1".into(),
                    ))
                }
            }
        }
    }
}

impl fmt::Display for SamplingMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SamplingMethod::None => write!(f, "none"),
            SamplingMethod::RandomNode { fraction } => write!(f, "node:{fraction}"),
            SamplingMethod::RandomEdge { fraction } => write!(f, "edge:{fraction}"),
            SamplingMethod::Snowball { seeds, waves } => write!(f, "snowball:{seeds}:{waves}"),
        }
    }
}

/// Parses `none`, `node:F`, `edge:F`, `snowball`, `snowball:SEEDS` or
/// `snowball:SEEDS:WAVES`.
impl FromStr for SamplingMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSampling(format!("cannot parse {s:?}"));
        let parts: Vec<&str> = s.trim().split(':').collect();
        let method = match parts.as_slice() {
            ["none"] => SamplingMethod::None,
            ["node", f] => SamplingMethod::RandomNode {
                fraction: f.parse().map_err(|_| bad())?,
            },
            ["edge", f] => SamplingMethod::RandomEdge {
                fraction: f.parse().map_err(|_| bad())?,
            },
            ["snowball"] => SamplingMethod::Snowball {
                seeds: DEFAULT_SNOWBALL_SEEDS,
                waves: DEFAULT_SNOWBALL_WAVES,
            },
            ["snowball", seeds] => SamplingMethod::Snowball {
                seeds: seeds.parse().map_err(|_| bad())?,
                waves: DEFAULT_SNOWBALL_WAVES,
            },
            ["snowball", seeds, waves] => SamplingMethod::Snowball {
                seeds: seeds.parse().map_err(|_| bad())?,
                waves: waves.parse().map_err(|_| bad())?,
            },
            _ => return Err(bad()),
        };
        SamplingSpec::new(method, 0).validate()?;
        Ok(method)
    }
}

pub fn apply_sampling(net: &TemporalNetwork, spec: &SamplingSpec) -> Result<TemporalNetwork> {
    spec.validate()?;
    let mut rng = rng::seeded(spec.rng_seed);
    let keep = |edges: Vec<_>| -> Result<TemporalNetwork> {
        if edges.is_empty() {
            return Err(Error::EmptySample);
        }
        net.restrict_to_edges(edges)
    };
    match spec.method {
        SamplingMethod::None => Ok(net.clone()),
        SamplingMethod::RandomNode { fraction } => {
            // a single permutation prefix, so smaller fractions nest in larger ones
            let mut order: Vec<NodeIdx> = (0..net.node_count() as NodeIdx).collect();
            order.shuffle(&mut rng);
            let take = ceil_fraction(fraction, order.len());
            let mut chosen = vec![false; net.node_count()];
            for &n in &order[..take] {
                chosen[n as usize] = true;
            }
            keep(
                net.edges()
                    .iter()
                    .filter(|e| chosen[e.u as usize] && chosen[e.v as usize])
                    .copied()
                    .collect(),
            )
        }
        SamplingMethod::RandomEdge { fraction } => {
            let mut order: Vec<usize> = (0..net.edge_count()).collect();
            order.shuffle(&mut rng);
            let take = ceil_fraction(fraction, order.len());
            keep(order[..take].iter().map(|&i| net.edges()[i]).collect())
        }
        SamplingMethod::Snowball { seeds, waves } => {
            let mut order: Vec<NodeIdx> = (0..net.node_count() as NodeIdx).collect();
            order.shuffle(&mut rng);
            order.truncate(seeds);
            let chosen = snowball_nodes(net, &order, waves);
            keep(
                net.edges()
                    .iter()
                    .filter(|e| chosen[e.u as usize] && chosen[e.v as usize])
                    .copied()
                    .collect(),
            )
        }
    }
}

fn ceil_fraction(fraction: f64, n: usize) -> usize {
    ((fraction * n as f64).ceil() as usize).clamp(1, n)
}

/// Breadth-first expansion over the time-aggregated graph, `waves` hops from
/// each start node. Returns a membership mask.
pub fn snowball_nodes(net: &TemporalNetwork, starts: &[NodeIdx], waves: usize) -> Vec<bool> {
    let n = net.node_count();
    let mut adj: Vec<Vec<NodeIdx>> = vec![Vec::new(); n];
    for e in net.edges() {
        adj[e.u as usize].push(e.v);
        adj[e.v as usize].push(e.u);
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    let mut depth = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for &s in starts {
        if depth[s as usize] == usize::MAX {
            depth[s as usize] = 0;
            queue.push_back(s);
        }
    }
    while let Some(x) = queue.pop_front() {
        let d = depth[x as usize];
        if d == waves {
            continue;
        }
        for &y in &adj[x as usize] {
            if depth[y as usize] == usize::MAX {
                depth[y as usize] = d + 1;
                queue.push_back(y);
            }
        }
    }
    depth.into_iter().map(|d| d != usize::MAX).collect()
}
