//! Syndrome validation: grow odd clusters until every cluster has even syndrome parity.
//!
//! Three strategies are available. [`Strategy::UniformFast`] is the almost-linear
//! union-find version, [`Strategy::UniformNaive`] does the same growth with a flat
//! cluster-index table, and [`Strategy::WeightedFast`] only grows the odd clusters with
//! the smallest boundary. The two uniform strategies produce identical output.

mod ackermann;
mod forest;
mod naive;
mod oracle;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use ackermann::{ackermann, inverse_ackermann, inverse_ackermann_big};
pub use forest::{init_forest, ClusterForest, EdgeSupport, RoundStats};
pub use oracle::validate_equivalence_oracle;

use crate::error::Error;
use crate::lattice::SyndromeGraph;
use crate::sets::{EdgeSet, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Strategy {
    #[serde(rename = "naive")]
    UniformNaive,
    #[serde(rename = "uniform")]
    UniformFast,
    #[serde(rename = "weighted")]
    WeightedFast,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::UniformNaive => "naive",
            Strategy::UniformFast => "uniform",
            Strategy::WeightedFast => "weighted",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "naive" => Ok(Strategy::UniformNaive),
            "uniform" => Ok(Strategy::UniformFast),
            "weighted" => Ok(Strategy::WeightedFast),
            other => Err(Error::InvalidParameter(format!("unknown strategy {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationResult {
    /// The input erasure plus every fully grown edge.
    pub modified_erasure: EdgeSet,
    /// Rounds of growth. A weighted round only grows the smallest-boundary clusters.
    pub growth_rounds: usize,
    pub union_calls: u64,
    pub find_calls: u64,
}

/// Counters from [`validate_with`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ValidationStats {
    pub growth_rounds: usize,
    pub union_calls: u64,
    pub find_calls: u64,
}

/// Validates `(erasure, syndrome)` with a fresh forest.
pub fn validate(
    graph: &SyndromeGraph,
    erasure: &EdgeSet,
    syndrome: &VertexSet,
    strategy: Strategy,
) -> ValidationResult {
    if strategy == Strategy::UniformNaive {
        return naive::validate_naive(graph, erasure, syndrome);
    }
    let mut forest = ClusterForest::default();
    let mut modified_erasure = EdgeSet::empty(graph.edge_count());
    let stats = validate_with(&mut forest, graph, erasure, syndrome, strategy, &mut modified_erasure);
    ValidationResult {
        modified_erasure,
        growth_rounds: stats.growth_rounds,
        union_calls: stats.union_calls,
        find_calls: stats.find_calls,
    }
}

/// Validates reusing `forest`'s buffers and writes the modified erasure into `out`.
pub fn validate_with(
    forest: &mut ClusterForest,
    graph: &SyndromeGraph,
    erasure: &EdgeSet,
    syndrome: &VertexSet,
    strategy: Strategy,
    out: &mut EdgeSet,
) -> ValidationStats {
    if strategy == Strategy::UniformNaive {
        let result = naive::validate_naive(graph, erasure, syndrome);
        *out = result.modified_erasure;
        return ValidationStats {
            growth_rounds: result.growth_rounds,
            union_calls: result.union_calls,
            find_calls: result.find_calls,
        };
    }
    forest.init(graph, erasure, syndrome);
    let growth_rounds = match strategy {
        Strategy::WeightedFast => forest.grow_weighted(graph),
        _ => forest.grow_uniform(graph),
    };
    forest.grown_edges_into(out);
    ValidationStats {
        growth_rounds,
        union_calls: forest.union_calls(),
        find_calls: forest.find_calls(),
    }
}
