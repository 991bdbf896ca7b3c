use serde::{Deserialize, Serialize};

use super::{EvolutionEvent, StructuralCategory, Taxonomy, TemporalCategory};
use crate::model::Community;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaxonomyMatrix {
    pub x: Taxonomy,
    pub y: Taxonomy,
    pub x_labels: Vec<String>,
    pub y_labels: Vec<String>,
    /// `counts[i][j]`: communities with y-category `i` and x-category `j`.
    pub counts: Vec<Vec<usize>>,
}

impl TaxonomyMatrix {
    pub fn total(&self) -> usize {
        self.counts.iter().flatten().sum()
    }
}

fn categories(c: &Community, axis: Taxonomy) -> Vec<usize> {
    let pos = |label: &str| axis.labels().iter().position(|l| *l == label).unwrap();
    match axis {
        Taxonomy::Structural => vec![StructuralCategory::ALL
            .iter()
            .position(|s| *s == c.structural)
            .unwrap()],
        Taxonomy::Temporal => vec![TemporalCategory::ALL
            .iter()
            .position(|t| *t == c.temporal)
            .unwrap()],
        Taxonomy::Evolution => c.evolution.iter().map(|e: &EvolutionEvent| pos(e.label())).collect(),
    }
}

/// Counts communities per category pair. Evolution is multi-valued, so a
/// community counts once per event; crossing a taxonomy with itself fills the
/// diagonal only.
pub fn taxonomy_matrix(communities: &[Community], x: Taxonomy, y: Taxonomy) -> TaxonomyMatrix {
    let x_labels = x.labels();
    let y_labels = y.labels();
    let mut counts = vec![vec![0usize; x_labels.len()]; y_labels.len()];
    for c in communities {
        let xs = categories(c, x);
        if x == y {
            for i in xs {
                counts[i][i] += 1;
            }
        } else {
            for i in categories(c, y) {
                for &j in &xs {
                    counts[i][j] += 1;
                }
            }
        }
    }
    TaxonomyMatrix {
        x,
        y,
        x_labels: x_labels.into_iter().map(str::to_owned).collect(),
        y_labels: y_labels.into_iter().map(str::to_owned).collect(),
        counts,
    }
}
