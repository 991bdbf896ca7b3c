use std::cmp::Ordering;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::model::{Community, CommunityKey};

pub const DEFAULT_TAU: f64 = 0.5;
const MAX_BRANCHES: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SizeChange {
    Grow,
    Contract,
    Preserve,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LinkKind {
    Grow,
    Contract,
    Preserve,
    SplitBranch,
    MergeBranch,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvolutionLink {
    pub from: CommunityKey,
    pub to: CommunityKey,
    pub overlap: usize,
    pub similarity: f64,
    pub from_size: usize,
    pub to_size: usize,
    pub change: SizeChange,
    pub split_branch: bool,
    pub merge_branch: bool,
}

impl EvolutionLink {
    /// Branch roles win over the size change.
    pub fn kind(&self) -> LinkKind {
        if self.merge_branch {
            LinkKind::MergeBranch
        } else if self.split_branch {
            LinkKind::SplitBranch
        } else {
            match self.change {
                SizeChange::Grow => LinkKind::Grow,
                SizeChange::Contract => LinkKind::Contract,
                SizeChange::Preserve => LinkKind::Preserve,
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Linking {
    /// Sorted by `from`, then by strength.
    pub links: Vec<EvolutionLink>,
    /// Candidates above the threshold dropped by the two-branch cap.
    pub truncated: usize,
}

struct Candidate {
    from: usize,
    to: usize,
    overlap: usize,
    similarity: f64,
}

/// Overlap links between the communities of two consecutive slices. A pair is
/// a candidate when `overlap / min(|A|, |B|) >= tau`; a candidate survives if
/// it is among the two strongest of its `from` and of its `to`.
pub fn link_communities(prev: &[Community], next: &[Community], tau: f64) -> Linking {
    let mut owner = HashMap::new();
    for (j, b) in next.iter().enumerate() {
        for &m in &b.members {
            owner.insert(m, j);
        }
    }

    let mut candidates = Vec::new();
    for (i, a) in prev.iter().enumerate() {
        let mut counts: HashMap<usize, usize> = HashMap::new();
        for m in &a.members {
            if let Some(&j) = owner.get(m) {
                *counts.entry(j).or_default() += 1;
            }
        }
        for (j, overlap) in counts {
            let similarity = overlap as f64 / a.size().min(next[j].size()) as f64;
            if similarity >= tau {
                candidates.push(Candidate {
                    from: i,
                    to: j,
                    overlap,
                    similarity,
                });
            }
        }
    }

    let strength = |x: &Candidate, y: &Candidate| -> Ordering {
        y.similarity
            .total_cmp(&x.similarity)
            .then(y.overlap.cmp(&x.overlap))
    };
    let mut by_from: Vec<Vec<usize>> = vec![Vec::new(); prev.len()];
    let mut by_to: Vec<Vec<usize>> = vec![Vec::new(); next.len()];
    for (c, cand) in candidates.iter().enumerate() {
        by_from[cand.from].push(c);
        by_to[cand.to].push(c);
    }
    let mut keep_from = vec![false; candidates.len()];
    for list in &mut by_from {
        list.sort_by(|&x, &y| {
            strength(&candidates[x], &candidates[y])
                .then(next[candidates[x].to].key.local.cmp(&next[candidates[y].to].key.local))
        });
        for &c in list.iter().take(MAX_BRANCHES) {
            keep_from[c] = true;
        }
    }
    let mut keep = vec![false; candidates.len()];
    for list in &mut by_to {
        list.sort_by(|&x, &y| {
            strength(&candidates[x], &candidates[y])
                .then(prev[candidates[x].from].key.local.cmp(&prev[candidates[y].from].key.local))
        });
        for &c in list.iter().take(MAX_BRANCHES) {
            keep[c] = keep_from[c];
        }
    }

    let kept: Vec<&Candidate> = candidates
        .iter()
        .zip(&keep)
        .filter_map(|(c, &k)| k.then_some(c))
        .collect();
    let mut out_degree = vec![0usize; prev.len()];
    let mut in_degree = vec![0usize; next.len()];
    for c in &kept {
        out_degree[c.from] += 1;
        in_degree[c.to] += 1;
    }

    let mut links: Vec<EvolutionLink> = kept
        .iter()
        .map(|c| {
            let (a, b) = (&prev[c.from], &next[c.to]);
            EvolutionLink {
                from: a.key,
                to: b.key,
                overlap: c.overlap,
                similarity: c.similarity,
                from_size: a.size(),
                to_size: b.size(),
                change: match b.size().cmp(&a.size()) {
                    Ordering::Greater => SizeChange::Grow,
                    Ordering::Less => SizeChange::Contract,
                    Ordering::Equal => SizeChange::Preserve,
                },
                split_branch: out_degree[c.from] == MAX_BRANCHES,
                merge_branch: in_degree[c.to] == MAX_BRANCHES,
            }
        })
        .collect();
    links.sort_by(|x, y| {
        x.from
            .cmp(&y.from)
            .then(y.similarity.total_cmp(&x.similarity))
            .then(y.overlap.cmp(&x.overlap))
            .then(x.to.cmp(&y.to))
    });
    Linking {
        truncated: candidates.len() - links.len(),
        links,
    }
}
