//! Monte Carlo experiments over the decoding pipeline.

mod crossing;
mod experiment;
mod stats;
mod timing;
mod trial;

pub use crossing::{estimate_crossing, Crossing};
pub use experiment::{
    parse_grid, read_summary_csv, run_experiment, write_summary_csv, ExperimentConfig,
    ExperimentSummary, StopRule, SummaryRow,
};
pub use stats::wilson_interval;
pub use timing::{loglog_slope, timing_sweep, write_timing_csv, TimingRow};
pub use trial::{run_trial, Decoder, TrialRecord};
