use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};

use clap::{Parser, Subcommand};
use pals_bench::config::{CliOverrides, ExperimentConfig, Profile};
use pals_bench::curves::{curves_csv, Metric};
use pals_bench::output::{read_results, write_experiment};
use pals_bench::{listing, run_experiment, table, validate, BenchError};

/// Benchmark harness for PALS, PAL and baseline optimizers on g1..g9.
#[derive(Parser)]
#[command(name = "pals-bench", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every (problem, method, replication) of an experiment.
    Run {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output directory (default: `results`, or `out` from the config).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_parser = ["desk", "paper"])]
        profile: Option<String>,
        /// Master seed.
        #[arg(long)]
        seed: Option<u64>,
        /// No per-run progress lines.
        #[arg(long)]
        quiet: bool,
    },
    /// Final-iteration averages per problem and method, in percent.
    Table {
        /// Experiment directory holding `results.csv`.
        dir: PathBuf,
    },
    /// Per-iteration average of one metric for each method.
    Curves {
        dir: PathBuf,
        #[arg(long)]
        problem: String,
        /// v_d, m, pareto, dominated or unclassified.
        #[arg(long, default_value = "v_d")]
        metric: String,
        /// Comma-separated method labels; all when omitted.
        #[arg(long, value_delimiter = ',')]
        methods: Vec<String>,
        /// Write the CSV here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fast self-checks of the library.
    Validate,
    /// Benchmark problem definitions.
    Problems {
        #[command(subcommand)]
        what: ProblemsCommand,
    },
}

#[derive(Subcommand)]
enum ProblemsCommand {
    /// One line per problem.
    List,
    /// Grid, scaled values and Pareto membership of a problem.
    Truth { problem: String },
}

fn cmd_run(
    config: Option<PathBuf>,
    out: Option<PathBuf>,
    jobs: Option<usize>,
    profile: Option<String>,
    seed: Option<u64>,
    quiet: bool,
) -> Result<(), BenchError> {
    let cli = CliOverrides { profile: profile.map(|p| p.parse::<Profile>()).transpose()?, seed, out, jobs };
    let cfg = match &config {
        Some(path) => ExperimentConfig::from_file(path, &cli)?,
        None => ExperimentConfig::from_str_with("", &cli)?,
    };
    let total = cfg.problems.len() * cfg.methods.len() * cfg.replications;
    eprintln!(
        "{} problems x {} methods x {} replications = {total} runs on {} thread(s)",
        cfg.problems.len(),
        cfg.methods.len(),
        cfg.replications,
        cfg.jobs
    );
    let done = AtomicUsize::new(0);
    let progress = |o: &pals_bench::RunOutcome, cfg: &ExperimentConfig| {
        let n = done.fetch_add(1, Ordering::Relaxed) + 1;
        if quiet {
            return;
        }
        let head = format!("[{n}/{total}] {} {} rep {}", cfg.problems[o.problem].id, cfg.methods[o.method].label, o.replication);
        match &o.record {
            Ok(r) => eprintln!(
                "{head}: V_d {:.4}% M {:.4}% ({}, {:.1}s)",
                100.0 * r.last().v_d,
                100.0 * r.last().misclassification,
                r.termination,
                o.timings.iter().sum::<f64>()
            ),
            Err(e) => eprintln!("{head}: FAILED {e}"),
        }
    };
    let result = run_experiment(&cfg, &progress)?;
    write_experiment(&cfg, &result)?;
    eprintln!("wrote {} in {:.1}s", cfg.out.display(), result.wall_seconds);
    match result.failures() {
        0 => Ok(()),
        n => Err(BenchError::RunsFailed(n)),
    }
}

fn dispatch(cli: Cli) -> Result<(), BenchError> {
    match cli.command {
        Command::Run { config, out, jobs, profile, seed, quiet } => cmd_run(config, out, jobs, profile, seed, quiet),
        Command::Table { dir } => {
            print!("{}", table::cmd_table(&dir)?);
            Ok(())
        }
        Command::Curves { dir, problem, metric, methods, out } => {
            let metric: Metric = metric.parse()?;
            let csv = curves_csv(&read_results(&dir)?, &problem, metric, &methods)?;
            match out {
                Some(path) => std::fs::write(path, csv)?,
                None => print!("{csv}"),
            }
            Ok(())
        }
        Command::Validate => {
            let checks = validate::run_all();
            for c in &checks {
                println!("{}", c.line());
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            println!("{} passed, {failed} failed", checks.len() - failed);
            if failed > 0 {
                return Err(BenchError::Input(format!("{failed} check(s) failed")));
            }
            Ok(())
        }
        Command::Problems { what } => {
            let csv = match what {
                ProblemsCommand::List => listing::problems_csv()?,
                ProblemsCommand::Truth { problem } => listing::truth_csv(&problem)?,
            };
            print!("{csv}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
