//! Structural-mapping augmentation: each mapping turns a labeled graph into a
//! new graph with the same label by adding `⌈m·β⌉` unlinked pairs and
//! removing as many existing edges.
//!
//! | mapping | additions drawn from | deletions drawn from |
//! |---|---|---|
//! | [`Mapping::Random`] | all unlinked pairs, uniform | all edges, uniform |
//! | [`Mapping::VertexSimilarity`] | all unlinked pairs, ∝ RA score | all edges, ∝ 1 − normalized RA |
//! | [`Mapping::MotifRandom`] | pairs closing a length-`l` path, uniform | one edge of that path, uniform |
//! | [`Mapping::MotifSimilarity`] | pairs closing a length-`l` path, ∝ RA score | one edge of that path, ∝ 1 − normalized RA |

mod candidates;
mod dataset;
mod mapping;
mod sampling;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use candidates::{
    addition_weights, build_motif_candidates, build_random_candidates, deletion_weights,
    CandidateSets,
};
pub use dataset::{augment_dataset, AugmentedPool, SkipRecord};
pub use mapping::{
    augment_graph, modification_budget, motif_random_mapping, motif_similarity_mapping,
    plan_edit, random_mapping, vertex_similarity_mapping, Augmented, EditPlan,
};
pub use sampling::{weighted_sample_without_replacement, WeightKind, WeightTable};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mapping {
    Random,
    VertexSimilarity,
    MotifRandom,
    MotifSimilarity,
}

impl Mapping {
    pub const ALL: [Mapping; 4] = [
        Mapping::Random,
        Mapping::VertexSimilarity,
        Mapping::MotifRandom,
        Mapping::MotifSimilarity,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Mapping::Random => "random",
            Mapping::VertexSimilarity => "vertex-similarity",
            Mapping::MotifRandom => "motif-random",
            Mapping::MotifSimilarity => "motif-similarity",
        }
    }

    pub fn is_motif(&self) -> bool {
        matches!(self, Mapping::MotifRandom | Mapping::MotifSimilarity)
    }

    pub fn is_similarity(&self) -> bool {
        matches!(self, Mapping::VertexSimilarity | Mapping::MotifSimilarity)
    }
}

impl fmt::Display for Mapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Mapping {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Mapping::ALL
            .into_iter()
            .find(|m| m.name() == s || m.name().replace('-', "_") == s)
            .ok_or_else(|| Error::input(format!("unknown mapping {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AugmentConfig {
    pub mapping: Mapping,
    /// Fraction of edges rewired, in (0, 1].
    pub beta: f64,
    /// Edges per open motif; 2 is the open triad.
    pub motif_length: usize,
    /// Reject deletion sets that raise the component count.
    pub preserve_connectivity: bool,
    pub max_resample_attempts: usize,
    pub rng_seed: u64,
}

impl Default for AugmentConfig {
    fn default() -> Self {
        Self {
            mapping: Mapping::MotifSimilarity,
            beta: 0.15,
            motif_length: 2,
            preserve_connectivity: true,
            max_resample_attempts: 20,
            rng_seed: 0,
        }
    }
}

impl AugmentConfig {
    pub fn new(mapping: Mapping) -> Self {
        Self {
            mapping,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.beta > 0.0 && self.beta <= 1.0) {
            return Err(Error::input(format!("beta must lie in (0, 1], got {}", self.beta)));
        }
        if self.motif_length < 2 {
            return Err(Error::input(format!(
                "motif length must be at least 2, got {}",
                self.motif_length
            )));
        }
        if self.max_resample_attempts == 0 {
            return Err(Error::input("max_resample_attempts must be positive"));
        }
        Ok(())
    }
}

/// Why a graph could not be augmented.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Infeasible {
    #[error("{needed} additions needed but only {available} unlinked pairs")]
    AdditionCandidates { needed: usize, available: usize },
    #[error("{needed} deletions needed but only {available} edges")]
    DeletionCandidates { needed: usize, available: usize },
    #[error("no unlinked pair closes a simple path of length {motif_length}")]
    NoMotifCandidates { motif_length: usize },
}

/// A label-preserving graph transformation applied to training graphs.
///
/// Implemented by [`AugmentConfig`]; other implementations plug alternative
/// mappings into the evolution loop.
pub trait GraphMapping: Sync {
    fn map_graph(&self, g: &Graph, rng: &mut crate::seed::StdRng) -> Result<Augmented>;

    fn describe(&self) -> String;
}

impl GraphMapping for AugmentConfig {
    fn map_graph(&self, g: &Graph, rng: &mut crate::seed::StdRng) -> Result<Augmented> {
        augment_graph(g, self, rng)
    }

    fn describe(&self) -> String {
        format!("{} (beta {}, l {})", self.mapping, self.beta, self.motif_length)
    }
}
