use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cluster::Strategy;
use crate::error::{Error, Result};
use crate::lattice::{Dimensionality, SyndromeGraph};
use crate::noise::{trial_rng, NoiseParams};

use super::stats::wilson_interval;
use super::trial::{Decoder, TrialRecord};

/// When to stop sampling a data point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopRule {
    /// Exactly this many trials.
    Trials(u64),
    /// Until `min_failures` failures have been seen, or `max_trials` trials have run.
    Failures { min_failures: u64, max_trials: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub lattice: Dimensionality,
    pub sizes: Vec<usize>,
    pub p_e: Vec<f64>,
    pub p_z: Vec<f64>,
    pub stop: StopRule,
    pub strategy: Strategy,
    pub seed: u64,
    /// Worker threads; `None` uses rayon's default pool.
    pub threads: Option<usize>,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.sizes.is_empty() || self.p_e.is_empty() || self.p_z.is_empty() {
            return Err(Error::InvalidParameter("empty size or probability grid".into()));
        }
        if let Some(&l) = self.sizes.iter().find(|&&l| l < 2) {
            return Err(Error::InvalidParameter(format!("lattice size {l} < 2")));
        }
        for &p_e in &self.p_e {
            for &p_z in &self.p_z {
                NoiseParams::new(p_e, p_z)?;
            }
        }
        match self.stop {
            StopRule::Trials(0) => Err(Error::InvalidParameter("trials must be at least 1".into())),
            StopRule::Failures { min_failures, max_trials } if min_failures == 0 || max_trials == 0 => {
                Err(Error::InvalidParameter("failure target and trial cap must be at least 1".into()))
            }
            _ => Ok(()),
        }
    }
}

/// One CSV row: the outcome for a single `(L, p_e, p_z)` point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub lattice: Dimensionality,
    #[serde(rename = "L")]
    pub size: usize,
    pub p_e: f64,
    pub p_z: f64,
    pub strategy: Strategy,
    pub trials: u64,
    pub failures: u64,
    pub rate: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub mean_decode_ns: f64,
}

impl SummaryRow {
    /// Same data point and counts; ignores the measured time.
    pub fn same_outcome(&self, other: &SummaryRow) -> bool {
        let mut a = self.clone();
        a.mean_decode_ns = other.mean_decode_ns;
        a == *other
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ExperimentSummary {
    pub rows: Vec<SummaryRow>,
}

impl ExperimentSummary {
    pub fn row(&self, size: usize, p_e: f64, p_z: f64) -> Option<&SummaryRow> {
        self.rows
            .iter()
            .find(|r| r.size == size && r.p_e == p_e && r.p_z == p_z)
    }

    /// `(p_z, rate)` pairs for one size at fixed `p_e`, sorted by `p_z`.
    pub fn curve_in_pz(&self, size: usize, p_e: f64) -> Vec<(f64, f64)> {
        let mut curve: Vec<(f64, f64)> = self
            .rows
            .iter()
            .filter(|r| r.size == size && r.p_e == p_e)
            .map(|r| (r.p_z, r.rate))
            .collect();
        curve.sort_by(|a, b| a.0.total_cmp(&b.0));
        curve
    }

    /// `(p_e, rate)` pairs for one size at fixed `p_z`, sorted by `p_e`.
    pub fn curve_in_pe(&self, size: usize, p_z: f64) -> Vec<(f64, f64)> {
        let mut curve: Vec<(f64, f64)> = self
            .rows
            .iter()
            .filter(|r| r.size == size && r.p_z == p_z)
            .map(|r| (r.p_e, r.rate))
            .collect();
        curve.sort_by(|a, b| a.0.total_cmp(&b.0));
        curve
    }

    pub fn same_outcome(&self, other: &ExperimentSummary) -> bool {
        self.rows.len() == other.rows.len()
            && self.rows.iter().zip(&other.rows).all(|(a, b)| a.same_outcome(b))
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct Tally {
    trials: u64,
    failures: u64,
    time_ns: u128,
}

impl Tally {
    fn add(mut self, record: &TrialRecord) -> Self {
        self.trials += 1;
        self.failures += record.failed as u64;
        self.time_ns += record.decode_time_ns as u128;
        self
    }

    fn merge(self, other: Tally) -> Tally {
        Tally {
            trials: self.trials + other.trials,
            failures: self.failures + other.failures,
            time_ns: self.time_ns + other.time_ns,
        }
    }
}

/// Trials in `range`, in parallel, in trial order.
fn run_batch(
    graph: &SyndromeGraph,
    params: NoiseParams,
    strategy: Strategy,
    seed: u64,
    range: std::ops::Range<u64>,
) -> Result<Vec<TrialRecord>> {
    range
        .into_par_iter()
        .map_init(
            || Decoder::new(graph, strategy),
            |decoder, t| decoder.run_trial(graph, params, &mut trial_rng(seed, t)),
        )
        .collect()
}

fn run_point(
    graph: &SyndromeGraph,
    params: NoiseParams,
    strategy: Strategy,
    seed: u64,
    stop: StopRule,
) -> Result<Tally> {
    match stop {
        StopRule::Trials(n) => (0..n)
            .into_par_iter()
            .map_init(
                || Decoder::new(graph, strategy),
                |decoder, t| decoder.run_trial(graph, params, &mut trial_rng(seed, t)),
            )
            .try_fold(Tally::default, |tally, record| Ok(tally.add(&record?)))
            .try_reduce(Tally::default, |a, b| Ok(a.merge(b))),
        StopRule::Failures { min_failures, max_trials } => {
            // Batches run in parallel but are scanned in trial order, so the cut-off
            // trial does not depend on scheduling.
            let mut tally = Tally::default();
            let mut batch = 1024u64;
            while tally.trials < max_trials {
                let end = (tally.trials + batch).min(max_trials);
                for record in run_batch(graph, params, strategy, seed, tally.trials..end)? {
                    tally = tally.add(&record);
                    if tally.failures >= min_failures {
                        return Ok(tally);
                    }
                }
                batch = (batch * 2).min(1 << 20);
            }
            Ok(tally)
        }
    }
}

/// Runs every `(L, p_e, p_z)` point of the grid. Trial `t` of every point draws from
/// stream `(seed, t)`.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentSummary> {
    config.validate()?;
    match config.threads {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?
            .install(|| run_grid(config)),
        None => run_grid(config),
    }
}

fn run_grid(config: &ExperimentConfig) -> Result<ExperimentSummary> {
    let mut summary = ExperimentSummary::default();
    for &size in &config.sizes {
        let graph = SyndromeGraph::build(config.lattice, size)?;
        for &p_e in &config.p_e {
            for &p_z in &config.p_z {
                let params = NoiseParams::new(p_e, p_z)?;
                let tally = run_point(&graph, params, config.strategy, config.seed, config.stop)?;
                let (ci_lo, ci_hi) = wilson_interval(tally.failures, tally.trials);
                summary.rows.push(SummaryRow {
                    lattice: config.lattice,
                    size,
                    p_e,
                    p_z,
                    strategy: config.strategy,
                    trials: tally.trials,
                    failures: tally.failures,
                    rate: tally.failures as f64 / tally.trials as f64,
                    ci_lo,
                    ci_hi,
                    mean_decode_ns: tally.time_ns as f64 / tally.trials as f64,
                });
            }
        }
    }
    Ok(summary)
}

/// Inclusive grid: comma-separated values, each a number or `start:stop:step`.
pub fn parse_grid(grid: &str) -> Result<Vec<f64>> {
    let bad = || Error::InvalidParameter(format!("bad grid {grid:?}"));
    let mut out = Vec::new();
    for item in grid.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let parts: Vec<f64> = item
            .split(':')
            .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match parts[..] {
            [v] => out.push(v),
            [start, stop, step] if step > 0.0 && stop >= start => {
                let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
                // snap to 12 decimals so 0.09 + 3*0.002 prints as 0.096
                out.extend((0..count).map(|i| ((start + i as f64 * step) * 1e12).round() / 1e12));
            }
            _ => return Err(bad()),
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

pub fn write_summary_csv<W: Write>(summary: &ExperimentSummary, writer: W) -> Result<()> {
    let mut csv = csv::Writer::from_writer(writer);
    for row in &summary.rows {
        csv.serialize(row)?;
    }
    csv.flush().map_err(|source| Error::Io { path: "<csv>".into(), source })?;
    Ok(())
}

pub fn read_summary_csv(path: &Path) -> Result<ExperimentSummary> {
    let file = File::open(path).map_err(|source| Error::Io { path: path.into(), source })?;
    read_summary(file)
}

pub(crate) fn read_summary<R: io::Read>(reader: R) -> Result<ExperimentSummary> {
    let mut csv = csv::Reader::from_reader(reader);
    let rows = csv.deserialize().collect::<std::result::Result<Vec<SummaryRow>, _>>()?;
    Ok(ExperimentSummary { rows })
}
