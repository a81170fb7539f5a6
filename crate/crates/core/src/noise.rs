//! Mixed erasure + Pauli-Z noise and the syndrome map.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::SyndromeGraph;
use crate::sets::{EdgeSet, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseParams {
    /// Erasure probability per edge.
    pub p_e: f64,
    /// Z (or measurement-flip) probability per non-erased edge.
    pub p_z: f64,
}

impl NoiseParams {
    pub fn new(p_e: f64, p_z: f64) -> Result<Self> {
        for (name, p) in [("p_e", p_e), ("p_z", p_z)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidParameter(format!("{name} = {p} is not in [0, 1]")));
            }
        }
        Ok(Self { p_e, p_z })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErrorState {
    pub erasure: EdgeSet,
    pub pauli_z: EdgeSet,
    pub syndrome: VertexSet,
}

impl ErrorState {
    pub fn empty(graph: &SyndromeGraph) -> Self {
        Self {
            erasure: EdgeSet::empty(graph.edge_count()),
            pauli_z: EdgeSet::empty(graph.edge_count()),
            syndrome: VertexSet::empty(graph.vertex_count()),
        }
    }
}

/// The RNG stream for trial `trial` of an experiment seeded with `seed`.
///
/// ChaCha8 keyed by `seed` with the trial index as stream id, so any trial can be
/// replayed on its own regardless of how trials were scheduled.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Draws an error: each edge is erased with probability `p_e`; erased edges carry Z
/// with probability 1/2, the others with probability `p_z`.
///
/// On the 3d lattice space-like and time-like edges use the same rates.
pub fn sample<R: Rng + ?Sized>(graph: &SyndromeGraph, params: NoiseParams, rng: &mut R) -> ErrorState {
    let mut state = ErrorState::empty(graph);
    sample_into(graph, params, rng, &mut state);
    state
}

/// Same as [`sample`] but reuses the buffers of `state`.
pub fn sample_into<R: Rng + ?Sized>(
    graph: &SyndromeGraph,
    params: NoiseParams,
    rng: &mut R,
    state: &mut ErrorState,
) {
    debug_assert_eq!(state.erasure.universe(), graph.edge_count());
    let erasure = state.erasure.as_mut_slice();
    let pauli_z = state.pauli_z.as_mut_slice();
    for e in 0..graph.edge_count() {
        let erased = rng.random::<f64>() < params.p_e;
        let flip = rng.random::<f64>() < if erased { 0.5 } else { params.p_z };
        erasure[e] = erased;
        pauli_z[e] = flip;
    }
    syndrome_into(graph, &state.pauli_z, &mut state.syndrome);
}

/// Vertices with an odd number of incident edges in `pauli_z`.
pub fn syndrome_of(graph: &SyndromeGraph, pauli_z: &EdgeSet) -> VertexSet {
    let mut syndrome = VertexSet::empty(graph.vertex_count());
    syndrome_into(graph, pauli_z, &mut syndrome);
    syndrome
}

fn syndrome_into(graph: &SyndromeGraph, pauli_z: &EdgeSet, syndrome: &mut VertexSet) {
    syndrome.clear();
    for e in pauli_z.iter() {
        let [a, b] = graph.endpoints(e);
        syndrome.toggle(a);
        syndrome.toggle(b);
    }
}

/// Builds an error state from explicit sets, deriving the syndrome.
pub fn inject(graph: &SyndromeGraph, erasure: EdgeSet, pauli_z: EdgeSet) -> ErrorState {
    assert_eq!(erasure.universe(), graph.edge_count(), "erasure universe");
    assert_eq!(pauli_z.universe(), graph.edge_count(), "pauli_z universe");
    let syndrome = syndrome_of(graph, &pauli_z);
    ErrorState { erasure, pauli_z, syndrome }
}
