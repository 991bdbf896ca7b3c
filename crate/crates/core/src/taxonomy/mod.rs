//! Structural, temporal and evolution taxonomies and the matrix that crosses
//! two of them.

mod evolution;
mod matrix;
mod structural;
mod temporal;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use evolution::classify_evolution;
pub use matrix::{taxonomy_matrix, TaxonomyMatrix};
pub use structural::{classify_graph, classify_structural, StructuralParams};
pub use temporal::{classify_temporal, temporal_profile, TemporalParams, TemporalProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StructuralCategory {
    Tree,
    Star,
    Circular,
    Clique,
    #[serde(rename = "Low-connectivity")]
    LowConnectivity,
}

impl StructuralCategory {
    pub const ALL: [StructuralCategory; 5] = [
        StructuralCategory::Tree,
        StructuralCategory::Star,
        StructuralCategory::Circular,
        StructuralCategory::Clique,
        StructuralCategory::LowConnectivity,
    ];

    pub fn label(self) -> &'static str {
        match self {
            StructuralCategory::Tree => "Tree",
            StructuralCategory::Star => "Star",
            StructuralCategory::Circular => "Circular",
            StructuralCategory::Clique => "Clique",
            StructuralCategory::LowConnectivity => "Low-connectivity",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Frequency {
    Continuous,
    Sporadic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Dispersion {
    Grouped,
    Dispersed,
}

/// Serialized as `"Frequency/Dispersion"`, e.g. `"Sporadic/Grouped"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TemporalCategory {
    pub frequency: Frequency,
    pub dispersion: Dispersion,
}

impl Default for TemporalCategory {
    fn default() -> Self {
        TemporalCategory::new(Frequency::Sporadic, Dispersion::Dispersed)
    }
}

impl TemporalCategory {
    pub const ALL: [TemporalCategory; 4] = [
        TemporalCategory::new(Frequency::Continuous, Dispersion::Grouped),
        TemporalCategory::new(Frequency::Continuous, Dispersion::Dispersed),
        TemporalCategory::new(Frequency::Sporadic, Dispersion::Grouped),
        TemporalCategory::new(Frequency::Sporadic, Dispersion::Dispersed),
    ];

    pub const fn new(frequency: Frequency, dispersion: Dispersion) -> Self {
        TemporalCategory {
            frequency,
            dispersion,
        }
    }

    pub fn label(self) -> &'static str {
        match (self.frequency, self.dispersion) {
            (Frequency::Continuous, Dispersion::Grouped) => "Continuous/Grouped",
            (Frequency::Continuous, Dispersion::Dispersed) => "Continuous/Dispersed",
            (Frequency::Sporadic, Dispersion::Grouped) => "Sporadic/Grouped",
            (Frequency::Sporadic, Dispersion::Dispersed) => "Sporadic/Dispersed",
        }
    }
}

impl Serialize for TemporalCategory {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

impl<'de> Deserialize<'de> for TemporalCategory {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        TemporalCategory::ALL
            .into_iter()
            .find(|c| c.label() == s)
            .ok_or_else(|| serde::de::Error::custom(format!("unknown temporal category {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EvolutionEvent {
    Birth,
    Death,
    Grow,
    Contract,
    Split,
    Merge,
    Preserve,
}

impl EvolutionEvent {
    pub const ALL: [EvolutionEvent; 7] = [
        EvolutionEvent::Birth,
        EvolutionEvent::Death,
        EvolutionEvent::Grow,
        EvolutionEvent::Contract,
        EvolutionEvent::Split,
        EvolutionEvent::Merge,
        EvolutionEvent::Preserve,
    ];

    pub fn label(self) -> &'static str {
        match self {
            EvolutionEvent::Birth => "Birth",
            EvolutionEvent::Death => "Death",
            EvolutionEvent::Grow => "Grow",
            EvolutionEvent::Contract => "Contract",
            EvolutionEvent::Split => "Split",
            EvolutionEvent::Merge => "Merge",
            EvolutionEvent::Preserve => "Preserve",
        }
    }
}

/// A matrix axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Taxonomy {
    Structural,
    Temporal,
    Evolution,
}

impl Taxonomy {
    pub fn labels(self) -> Vec<&'static str> {
        match self {
            Taxonomy::Structural => StructuralCategory::ALL.iter().map(|c| c.label()).collect(),
            Taxonomy::Temporal => TemporalCategory::ALL.iter().map(|c| c.label()).collect(),
            Taxonomy::Evolution => EvolutionEvent::ALL.iter().map(|c| c.label()).collect(),
        }
    }
}

impl fmt::Display for Taxonomy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Taxonomy::Structural => "Structural",
            Taxonomy::Temporal => "Temporal",
            Taxonomy::Evolution => "Evolution",
        })
    }
}

impl FromStr for Taxonomy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "structural" => Ok(Taxonomy::Structural),
            "temporal" => Ok(Taxonomy::Temporal),
            "evolution" => Ok(Taxonomy::Evolution),
            _ => Err(Error::InvalidConfig(format!("unknown taxonomy {s:?}"))),
        }
    }
}
