use serde::{Deserialize, Serialize};

use crate::model::{Community, NodeIdx, TemporalNetwork, Timeslice, Timestamp};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TamRow {
    pub node: NodeIdx,
    pub label: Option<String>,
    /// Timestamps with at least one intra-community edge at this node, ascending.
    pub active: Vec<Timestamp>,
}

/// Temporal activity map of one community over its slice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tam {
    pub t_start: Timestamp,
    pub t_end: Timestamp,
    pub rows: Vec<TamRow>,
    /// Intra-community edges per timestamp, `t_start..=t_end`.
    pub series: Vec<usize>,
}

/// Rows are ordered by metadata label (unlabelled last), then first activity,
/// then node id.
pub fn tam_rows(net: &TemporalNetwork, c: &Community, slice: &Timeslice) -> Tam {
    let mut active: Vec<Vec<Timestamp>> = vec![Vec::new(); c.size()];
    let mut series = vec![0usize; slice.len().max(0) as usize];
    for e in &c.intra_edges {
        series[(e.t - slice.t_start) as usize] += 1;
        for x in [e.u, e.v] {
            let i = c.members.binary_search(&x).expect("intra edge endpoint is a member");
            if active[i].last() != Some(&e.t) {
                active[i].push(e.t);
            }
        }
    }
    let mut rows: Vec<TamRow> = c
        .members
        .iter()
        .zip(active)
        .map(|(&node, active)| TamRow {
            node,
            label: net.label(node).map(str::to_owned),
            active,
        })
        .collect();
    rows.sort_by(|a, b| {
        let first = |r: &TamRow| r.active.first().copied().unwrap_or(Timestamp::MAX);
        (a.label.is_none(), &a.label, first(a), a.node).cmp(&(b.label.is_none(), &b.label, first(b), b.node))
    });
    Tam {
        t_start: slice.t_start,
        t_end: slice.t_end,
        rows,
        series,
    }
}
