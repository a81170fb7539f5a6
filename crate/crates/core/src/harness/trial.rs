use std::time::Instant;

use rand::Rng;

use crate::cluster::{validate_with, ClusterForest, Strategy, ValidationStats};
use crate::error::Result;
use crate::homology::judge;
use crate::lattice::SyndromeGraph;
use crate::noise::{sample_into, ErrorState, NoiseParams};
use crate::peeling::Peeler;
use crate::sets::EdgeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrialRecord {
    pub failed: bool,
    pub class_bits: (bool, bool),
    /// Wall time of validation plus peeling, at least 1.
    pub decode_time_ns: u64,
    pub validation: ValidationStats,
}

/// Decoder with per-graph scratch buffers, reused across trials.
#[derive(Clone, Debug)]
pub struct Decoder {
    strategy: Strategy,
    forest: ClusterForest,
    peeler: Peeler,
    state: ErrorState,
    modified: EdgeSet,
    correction: EdgeSet,
}

impl Decoder {
    pub fn new(graph: &SyndromeGraph, strategy: Strategy) -> Self {
        Self {
            strategy,
            forest: ClusterForest::default(),
            peeler: Peeler::default(),
            state: ErrorState::empty(graph),
            modified: EdgeSet::empty(graph.edge_count()),
            correction: EdgeSet::empty(graph.edge_count()),
        }
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    /// Validates and peels `state`. Returns the validation counters; the correction and
    /// modified erasure are available afterwards.
    pub fn decode(&mut self, graph: &SyndromeGraph, state: &ErrorState) -> Result<ValidationStats> {
        self.state.clone_from(state);
        self.decode_current(graph)
    }

    fn decode_current(&mut self, graph: &SyndromeGraph) -> Result<ValidationStats> {
        let stats = validate_with(
            &mut self.forest,
            graph,
            &self.state.erasure,
            &self.state.syndrome,
            self.strategy,
            &mut self.modified,
        );
        self.peeler
            .peel_into(graph, &self.modified, &self.state.syndrome, &mut self.correction)?;
        Ok(stats)
    }

    pub fn modified_erasure(&self) -> &EdgeSet {
        &self.modified
    }

    pub fn correction(&self) -> &EdgeSet {
        &self.correction
    }

    /// The error state of the last decode.
    pub fn last_error(&self) -> &ErrorState {
        &self.state
    }

    /// Sample, decode (timed) and judge one trial.
    pub fn run_trial<R: Rng + ?Sized>(
        &mut self,
        graph: &SyndromeGraph,
        params: NoiseParams,
        rng: &mut R,
    ) -> Result<TrialRecord> {
        sample_into(graph, params, rng, &mut self.state);
        let start = Instant::now();
        let validation = self.decode_current(graph)?;
        let elapsed = start.elapsed().as_nanos() as u64;
        let verdict = judge(graph, &self.state.pauli_z.symmetric_difference(&self.correction))?;
        Ok(TrialRecord {
            failed: verdict.failed,
            class_bits: verdict.class_bits,
            decode_time_ns: elapsed.max(1),
            validation,
        })
    }
}

/// One sample-decode-judge trial with fresh buffers.
pub fn run_trial<R: Rng + ?Sized>(
    graph: &SyndromeGraph,
    params: NoiseParams,
    strategy: Strategy,
    rng: &mut R,
) -> Result<TrialRecord> {
    Decoder::new(graph, strategy).run_trial(graph, params, rng)
}
