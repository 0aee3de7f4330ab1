use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use trilat_core::{RadioParams, Simulator, Topology};

use crate::error::{HarnessError, Result};
use crate::experiment::{baseline_table, run_baseline, run_trials, Aggregate, SolutionRow, TrialRecord};
use crate::output;
use crate::plot::{emit_plots, PlotPoint};
use crate::settings::{parse_config, Optimizer, OptimizerConfig, Override};
use crate::sweep::{run_sweep, SweepParam};

#[derive(Debug, Parser)]
#[command(name = "trilat", version, about = "Transmit-power optimization for trilateration-based localization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Uniform Min, Mid and Max runs.
    Baseline(RunArgs),
    /// Single-objective PSO.
    Sopso(RunArgs),
    /// Binary multi-objective PSO over the three power levels.
    MopsoBin(RunArgs),
    /// Continuous multi-objective PSO over transmission ranges.
    MopsoCont(RunArgs),
    /// Vary one parameter over its grid, all else fixed.
    Sweep {
        /// particles-iterations, max-range, mutation-fraction, mutation-value or inertia.
        parameter: String,
        #[arg(long, default_value = "mopso-cont")]
        optimizer: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Write a random topology file.
    GenTopology {
        /// N,ANCHORS,SIDE
        #[arg(long, default_value = "240,40,1000")]
        gen: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Redraw plots from a solutions CSV.
    Plot {
        csv: PathBuf,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Topology file.
    #[arg(long, conflicts_with = "gen")]
    topology: Option<PathBuf>,
    /// Generate a topology: N,ANCHORS,SIDE (seeded by --seed).
    #[arg(long)]
    gen: Option<String>,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// key=value override, repeatable. Wins over --config.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    /// File of key=value lines.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Continuous update rule: standard or paper-literal.
    #[arg(long)]
    mode: Option<String>,
    /// Skip SVG output.
    #[arg(long)]
    no_plots: bool,
}

const DEFAULT_GEN: (usize, usize, f64) = (240, 40, 1000.0);

fn parse_gen(s: &str) -> Result<(usize, usize, f64)> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || HarnessError::Usage(format!("--gen expects N,ANCHORS,SIDE, got {s:?}"));
    let [n, a, side] = parts.as_slice() else { return Err(bad()) };
    Ok((n.parse().map_err(|_| bad())?, a.parse().map_err(|_| bad())?, side.parse().map_err(|_| bad())?))
}

fn generate(spec: (usize, usize, f64), seed: u64) -> Result<Topology> {
    let (n, anchors, side) = spec;
    Ok(Topology::generate_random(n, anchors, side, seed)?)
}

impl RunArgs {
    fn topology(&self) -> Result<Topology> {
        match (&self.topology, &self.gen) {
            (Some(path), _) => Topology::load(path).map_err(|e| match e {
                trilat_core::Error::Io(source) => HarnessError::io(path, source),
                other => other.into(),
            }),
            (None, Some(g)) => generate(parse_gen(g)?, self.seed),
            (None, None) => generate(DEFAULT_GEN, self.seed),
        }
    }

    fn simulator(&self) -> Result<Simulator> {
        Ok(Simulator::new(self.topology()?, RadioParams::default())?)
    }

    fn config(&self, optimizer: Optimizer) -> Result<OptimizerConfig> {
        if self.trials == 0 {
            return Err(HarnessError::Usage("--trials must be at least 1".into()));
        }
        let mut overrides = Vec::new();
        if let Some(path) = &self.config {
            let text = fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
            overrides.extend(parse_config(&text)?);
        }
        if let Some(mode) = &self.mode {
            overrides.push(Override { key: "mode".into(), value: mode.clone() });
        }
        for o in &self.overrides {
            overrides.push(o.parse()?);
        }
        let mut config = OptimizerConfig::default_for(optimizer);
        config.apply(&overrides)?;
        Ok(config)
    }
}

fn plot_records(out: &Path, stem: &str, rows: impl Iterator<Item = [f64; 6]>) -> Result<()> {
    let points: Vec<PlotPoint> = rows.map(|m| PlotPoint::from_metrics(&m)).collect();
    for path in emit_plots(&points, out, stem)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn write_run(args: &RunArgs, stem: &str, records: &[TrialRecord]) -> Result<()> {
    let solutions = args.out.join(format!("{stem}_solutions.csv"));
    let assignments = args.out.join(format!("{stem}_assignments.csv"));
    let aggregate_path = args.out.join(format!("{stem}_aggregate.csv"));
    let aggregate = Aggregate::from_records(records);
    output::write_solutions(&solutions, records)?;
    output::write_assignments(&assignments, records)?;
    output::write_aggregate(&aggregate_path, &aggregate)?;
    for p in [&solutions, &assignments, &aggregate_path] {
        println!("wrote {}", p.display());
    }
    println!("{:<10} {:>10} {:>12} {:>12} {:>14}", "", "solutions", "node_steps", "power_mw", "participants");
    for (label, v) in aggregate.table() {
        println!("{label:<10} {:>10} {:>12.2} {:>12.2} {:>14.2}", aggregate.count, v[1], v[2], v[4]);
    }
    if !args.no_plots {
        plot_records(&args.out, stem, records.iter().flat_map(|r| &r.solutions).map(SolutionRow::metrics))?;
    }
    Ok(())
}

fn baseline(args: &RunArgs) -> Result<()> {
    let sim = args.simulator()?;
    let runs = run_baseline(&sim)?;
    print!("{}", baseline_table(&sim, &runs));
    let n = sim.topology().len();
    let records = vec![TrialRecord {
        trial: 0,
        seed: args.seed,
        solutions: runs
            .iter()
            .map(|(level, out)| SolutionRow::from_outcome(out, trilat_core::RangeAssignment::uniform_level(n, *level)))
            .collect(),
        wall_time: Default::default(),
    }];
    write_run(args, "baseline", &records)
}

fn optimize(args: &RunArgs, optimizer: Optimizer) -> Result<()> {
    let sim = args.simulator()?;
    let config = args.config(optimizer)?;
    let records = run_trials(&sim, &config, args.trials, args.seed)?;
    for r in &records {
        eprintln!("trial {} seed {}: {} solutions in {:.2?}", r.trial, r.seed, r.solutions.len(), r.wall_time);
    }
    write_run(args, optimizer.name(), &records)
}

fn sweep(parameter: &str, optimizer: &str, args: &RunArgs) -> Result<()> {
    let param: SweepParam = parameter.parse()?;
    let optimizer: Optimizer = optimizer.parse()?;
    let sim = args.simulator()?;
    let config = args.config(optimizer)?;
    let points = run_sweep(&sim, &config, param, args.trials, args.seed)?;
    let path = args.out.join(format!("sweep_{}_{}.csv", optimizer.name(), param.name()));
    output::write_sweep(&path, param.name(), &points)?;
    println!("{:<10} {:>10} {:>14} {:>12} {:>14}", param.name(), "solutions", "node_steps", "power_mw", "participants");
    for p in &points {
        let m = &p.aggregate.mean;
        println!("{:<10} {:>10} {:>14.2} {:>12.2} {:>14.2}", p.value, p.aggregate.count, m[1], m[2], m[4]);
    }
    println!("wrote {}", path.display());
    Ok(())
}

fn gen_topology(spec: &str, seed: u64, out: Option<&Path>) -> Result<()> {
    let t = generate(parse_gen(spec)?, seed)?;
    match out {
        Some(path) => {
            t.save(path).map_err(|e| match e {
                trilat_core::Error::Io(source) => HarnessError::io(path, source),
                other => other.into(),
            })?;
            println!("wrote {}", path.display());
        }
        None => print!("{}", t.to_text()),
    }
    Ok(())
}

fn replot(csv: &Path, out: &Path) -> Result<()> {
    let rows = output::read_solutions(csv)?;
    let stem = csv
        .file_stem()
        .and_then(|s| s.to_str())
        .map(|s| s.strip_suffix("_solutions").unwrap_or(s).to_string())
        .unwrap_or_else(|| "plot".into());
    plot_records(out, &stem, rows.into_iter().map(|r| r.metrics))
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Baseline(args) => baseline(&args),
        Command::Sopso(args) => optimize(&args, Optimizer::Sopso),
        Command::MopsoBin(args) => optimize(&args, Optimizer::MopsoBinary),
        Command::MopsoCont(args) => optimize(&args, Optimizer::MopsoContinuous),
        Command::Sweep { parameter, optimizer, run } => sweep(&parameter, &optimizer, &run),
        Command::GenTopology { gen, seed, out } => gen_topology(&gen, seed, out.as_deref()),
        Command::Plot { csv, out } => replot(&csv, &out),
    }
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code: 0 on success, 1 for usage errors, 2 for I/O errors.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
