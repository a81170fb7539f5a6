use std::io::Write;

use serde::Serialize;

use crate::cluster::Strategy;
use crate::error::{Error, Result};
use crate::lattice::{Dimensionality, SyndromeGraph};
use crate::noise::{trial_rng, NoiseParams};

use super::trial::Decoder;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TimingRow {
    pub lattice: Dimensionality,
    #[serde(rename = "L")]
    pub size: usize,
    /// Number of qubits (edges of the syndrome graph).
    pub n: usize,
    pub trials: u64,
    pub mean_decode_ns: f64,
}

/// Mean decode time per lattice size, single-threaded. A few warm-up trials per size are
/// run first and not counted.
pub fn timing_sweep(
    lattice: Dimensionality,
    sizes: &[usize],
    params: NoiseParams,
    trials: u64,
    strategy: Strategy,
    seed: u64,
) -> Result<Vec<TimingRow>> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let warmup = (trials / 10).clamp(1, 1000);
    sizes
        .iter()
        .map(|&size| {
            let graph = SyndromeGraph::build(lattice, size)?;
            let mut decoder = Decoder::new(&graph, strategy);
            for t in 0..warmup {
                decoder.run_trial(&graph, params, &mut trial_rng(seed ^ u64::MAX, t))?;
            }
            let mut total: u128 = 0;
            for t in 0..trials {
                total += decoder.run_trial(&graph, params, &mut trial_rng(seed, t))?.decode_time_ns as u128;
            }
            Ok(TimingRow {
                lattice,
                size,
                n: graph.edge_count(),
                trials,
                mean_decode_ns: total as f64 / trials as f64,
            })
        })
        .collect()
}

/// Least-squares slope of `ln(mean_decode_ns)` against `ln(n)`.
pub fn loglog_slope(rows: &[TimingRow]) -> f64 {
    assert!(rows.len() >= 2, "slope needs two points");
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| ((r.n as f64).ln(), r.mean_decode_ns.ln()))
        .collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

pub fn write_timing_csv<W: Write>(rows: &[TimingRow], writer: W) -> Result<()> {
    let mut csv = csv::Writer::from_writer(writer);
    for row in rows {
        csv.serialize(row)?;
    }
    csv.flush().map_err(|source| Error::Io { path: "<csv>".into(), source })?;
    Ok(())
}
