use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;

use uf_decoder::cluster::{inverse_ackermann_big, Strategy};
use uf_decoder::harness::{
    estimate_crossing, loglog_slope, parse_grid, read_summary_csv, run_experiment, timing_sweep,
    write_summary_csv, write_timing_csv, Decoder, ExperimentConfig, StopRule,
};
use uf_decoder::homology::judge;
use uf_decoder::lattice::{Dimensionality, SyndromeGraph};
use uf_decoder::noise::{trial_rng, NoiseParams};
use uf_decoder::{EdgeSet, Error, Result, VertexSet};

/// Union-Find decoder simulator for the toric code
#[derive(Parser, Debug)]
#[command(name = "ufsim", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Monte Carlo sweep over sizes and error rates, written as CSV
    Run(RunArgs),
    /// Run one seeded trial and print every stage
    Trial(TrialArgs),
    /// Mean decoding time per lattice size, written as CSV
    Timing(TimingArgs),
    /// Threshold estimate from the crossing of two failure-rate curves
    Crossing(CrossingArgs),
    /// Inverse Ackermann function alpha(n)
    Ackermann {
        /// Decimal integer n >= 1 (arbitrary size)
        n: String,
    },
}

#[derive(Args, Debug)]
struct LatticeArgs {
    #[arg(long, default_value = "2d")]
    lattice: Dimensionality,
    /// uniform, weighted or naive
    #[arg(long, default_value = "weighted")]
    strategy: Strategy,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[command(flatten)]
    common: LatticeArgs,
    /// Comma-separated lattice sizes (default 8,16,24,32 in 2d, 6,8,10 in 3d)
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    /// Erasure rates: list and/or start:stop:step ranges
    #[arg(long, default_value = "0")]
    pe: String,
    /// Pauli rates (default 0.09:0.11:0.002 in 2d, 0.02:0.032:0.002 in 3d)
    #[arg(long)]
    pz: Option<String>,
    /// Trials per point
    #[arg(long, conflicts_with = "min_failures")]
    trials: Option<u64>,
    /// Sample each point until this many failures
    #[arg(long)]
    min_failures: Option<u64>,
    /// Trial cap for --min-failures
    #[arg(long, default_value_t = 10_000_000)]
    max_trials: u64,
    /// Output CSV (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args, Debug)]
struct TrialArgs {
    #[command(flatten)]
    common: LatticeArgs,
    #[arg(long, default_value_t = 5)]
    size: usize,
    #[arg(long, default_value_t = 0.0)]
    pe: f64,
    #[arg(long, default_value_t = 0.05)]
    pz: f64,
    /// Trial index within the seeded stream
    #[arg(long, default_value_t = 0)]
    index: u64,
}

#[derive(Args, Debug)]
struct TimingArgs {
    #[command(flatten)]
    common: LatticeArgs,
    #[arg(long, value_delimiter = ',', default_value = "8,16,32,64")]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 0.1)]
    pe: f64,
    #[arg(long, default_value_t = 0.01)]
    pz: f64,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CrossingArgs {
    /// CSV with the curve of the first size
    first: PathBuf,
    /// CSV with the curve of the second size
    second: PathBuf,
    /// Scan along p_z (at fixed p_e) or along p_e (at fixed p_z)
    #[arg(long, default_value = "pz", value_parser = ["pz", "pe"])]
    scan: String,
    /// Value of the fixed rate; required if the files hold several
    #[arg(long)]
    fixed: Option<f64>,
    /// Size to take from the first file; required if it holds several
    #[arg(long)]
    size_first: Option<usize>,
    /// Size to take from the second file; required if it holds several
    #[arg(long)]
    size_second: Option<usize>,
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|source| Error::Io { path: p.clone(), source })?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn run(args: RunArgs) -> Result<()> {
    let lattice = args.common.lattice;
    let sizes = args.sizes.unwrap_or_else(|| match lattice {
        Dimensionality::Torus2D => vec![8, 16, 24, 32],
        Dimensionality::Torus3D => vec![6, 8, 10],
    });
    let pz = args.pz.unwrap_or_else(|| {
        match lattice {
            Dimensionality::Torus2D => "0.09:0.11:0.002",
            Dimensionality::Torus3D => "0.02:0.032:0.002",
        }
        .to_string()
    });
    let stop = match (args.trials, args.min_failures) {
        (_, Some(min_failures)) => StopRule::Failures { min_failures, max_trials: args.max_trials },
        (Some(n), None) => StopRule::Trials(n),
        (None, None) => StopRule::Trials(10_000),
    };
    let config = ExperimentConfig {
        lattice,
        sizes,
        p_e: parse_grid(&args.pe)?,
        p_z: parse_grid(&pz)?,
        stop,
        strategy: args.common.strategy,
        seed: args.common.seed,
        threads: args.threads,
    };
    // Open the output first so a bad path fails before the sweep.
    let out = output(&args.out)?;
    let summary = run_experiment(&config)?;
    write_summary_csv(&summary, out)
}

fn show(label: &str, edges: &EdgeSet) {
    let ids: Vec<String> = edges.iter().map(|e| e.0.to_string()).collect();
    println!("{label:<18} [{}] ({} edges)", ids.join(" "), ids.len());
}

fn show_vertices(label: &str, vertices: &VertexSet) {
    let ids: Vec<String> = vertices.iter().map(|v| v.0.to_string()).collect();
    println!("{label:<18} [{}] ({} vertices)", ids.join(" "), ids.len());
}

fn trial(args: TrialArgs) -> Result<()> {
    let graph = SyndromeGraph::build(args.common.lattice, args.size)?;
    let params = NoiseParams::new(args.pe, args.pz)?;
    let mut decoder = Decoder::new(&graph, args.common.strategy);
    let record = decoder.run_trial(&graph, params, &mut trial_rng(args.common.seed, args.index))?;
    let state = decoder.last_error();
    println!(
        "lattice {} L={} ({} vertices, {} edges), p_e={} p_z={}, strategy {}, seed {} trial {}",
        args.common.lattice.name(),
        args.size,
        graph.vertex_count(),
        graph.edge_count(),
        args.pe,
        args.pz,
        args.common.strategy,
        args.common.seed,
        args.index
    );
    show("erasure", &state.erasure);
    show("pauli_z", &state.pauli_z);
    show_vertices("syndrome", &state.syndrome);
    println!(
        "validation         {} growth steps, {} unions, {} finds",
        record.validation.growth_rounds, record.validation.union_calls, record.validation.find_calls
    );
    show("modified erasure", decoder.modified_erasure());
    show("correction", decoder.correction());
    let residual = state.pauli_z.symmetric_difference(decoder.correction());
    show("residual", &residual);
    let verdict = judge(&graph, &residual)?;
    println!(
        "verdict            {} (x-cut parity {}, y-cut parity {}), decode {} ns",
        if verdict.failed { "LOGICAL FAILURE" } else { "success" },
        verdict.class_bits.0 as u8,
        verdict.class_bits.1 as u8,
        record.decode_time_ns
    );
    Ok(())
}

fn timing(args: TimingArgs) -> Result<()> {
    let params = NoiseParams::new(args.pe, args.pz)?;
    let out = output(&args.out)?;
    let rows = timing_sweep(
        args.common.lattice,
        &args.sizes,
        params,
        args.trials,
        args.common.strategy,
        args.common.seed,
    )?;
    write_timing_csv(&rows, out)?;
    if rows.len() >= 2 {
        eprintln!("log-log slope: {:.3}", loglog_slope(&rows));
    }
    Ok(())
}

fn crossing(args: CrossingArgs) -> Result<()> {
    let curve = |path: &PathBuf, size: Option<usize>| -> Result<Vec<(f64, f64)>> {
        let summary = read_summary_csv(path)?;
        let pick = |values: Vec<f64>, what: &str, given: Option<f64>| -> Result<f64> {
            let mut values = values;
            values.sort_by(f64::total_cmp);
            values.dedup();
            match (given, values.as_slice()) {
                (Some(v), _) => Ok(v),
                (None, [only]) => Ok(*only),
                _ => Err(Error::InvalidParameter(format!(
                    "{} holds several {what} values; pick one",
                    path.display()
                ))),
            }
        };
        let size = pick(summary.rows.iter().map(|r| r.size as f64).collect(), "size", size.map(|s| s as f64))?
            as usize;
        Ok(if args.scan == "pz" {
            let fixed = pick(summary.rows.iter().map(|r| r.p_e).collect(), "p_e", args.fixed)?;
            summary.curve_in_pz(size, fixed)
        } else {
            let fixed = pick(summary.rows.iter().map(|r| r.p_z).collect(), "p_z", args.fixed)?;
            summary.curve_in_pe(size, fixed)
        })
    };
    let a = curve(&args.first, args.size_first)?;
    let b = curve(&args.second, args.size_second)?;
    let c = estimate_crossing(&a, &b)?;
    println!("p* = {:.5} (between {} and {})", c.p_star, c.bracket.0, c.bracket.1);
    Ok(())
}

fn ackermann(n: &str) -> Result<()> {
    let n: BigUint = n
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("{n:?} is not a non-negative integer")))?;
    if n < BigUint::from(1u8) {
        return Err(Error::InvalidParameter("alpha(n) needs n >= 1".into()));
    }
    println!("{}", inverse_ackermann_big(&n));
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run(args),
        Command::Trial(args) => trial(args),
        Command::Timing(args) => timing(args),
        Command::Crossing(args) => crossing(args),
        Command::Ackermann { n } => ackermann(&n),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
