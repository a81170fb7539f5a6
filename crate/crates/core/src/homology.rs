//! Success or logical failure of a decoding round.

use crate::error::{Error, Result};
use crate::lattice::{crossing_parity, Cut, SyndromeGraph};
use crate::noise::syndrome_of;
use crate::sets::EdgeSet;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Verdict {
    pub failed: bool,
    /// Crossing parities with the x-cut and the y-cut.
    pub class_bits: (bool, bool),
}

impl Verdict {
    fn from_bits(x: bool, y: bool) -> Self {
        Self { failed: x || y, class_bits: (x, y) }
    }
}

/// Homology class of the residual cycle `E_Z + C`. Any winding around a spatial
/// direction is a failure; time-like winding on the 3d lattice is ignored.
pub fn judge(graph: &SyndromeGraph, residual: &EdgeSet) -> Result<Verdict> {
    let defects = syndrome_of(graph, residual).len();
    if defects != 0 {
        return Err(Error::ResidualNotCycle(defects));
    }
    Ok(judge_cycle(graph, residual))
}

/// [`judge`] without the cycle check, for callers that already guarantee it.
pub fn judge_cycle(graph: &SyndromeGraph, residual: &EdgeSet) -> Verdict {
    Verdict::from_bits(
        crossing_parity(graph, residual, Cut::X),
        crossing_parity(graph, residual, Cut::Y),
    )
}
