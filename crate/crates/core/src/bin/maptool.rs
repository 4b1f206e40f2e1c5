//! Command-line front end: solve, inspect the LP, run the oracle, generate
//! instances, and run experiment suites.
//!
//! Exit codes: 0 success, 1 usage error, 2 invariant violation,
//! 3 infeasible or invalid instance.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use map_core::pipeline::{self, SolveOptions};
use map_core::toolkit::experiment::{self, ExperimentSpec};
use map_core::toolkit::{generators, io};
use map_core::{cut_lp, graph, oracle, rational, Error, MapInstance};

#[derive(Parser)]
#[command(name = "maptool", version, about = "LP-guided approximation for the Matching Augmentation Problem")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the LP-guided algorithm on an instance file.
    Solve {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        root: usize,
        /// Tightness parameter as "p/q".
        #[arg(long, default_value = "1/1000")]
        gamma: String,
        #[arg(long)]
        diagnostics: bool,
        /// Also compute the exact optimum.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Solve the cut LP and print the extreme point.
    Lp {
        file: PathBuf,
        /// Cross-check the objective against the fully enumerated LP.
        #[arg(long)]
        exact_check: bool,
    },
    /// Exact optimum by branch and bound.
    Oracle {
        file: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Generate an instance file.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Run an experiment suite described by a JSON spec.
    Experiment {
        spec: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Family {
    Gap {
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    Baddfs {
        #[arg(long)]
        depth: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        extra_heavy: usize,
        #[arg(long, default_value_t = 0.5)]
        matching_fraction: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
}

enum Failure {
    Usage(String),
    Invariant(String),
    Infeasible(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInstance(_) | Error::Infeasible(_) => Failure::Infeasible(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn load(path: &Path) -> Result<MapInstance, Failure> {
    let inst = io::read_instance(path)?;
    let report = graph::validate_instance(&inst);
    if !report.is_valid() {
        return Err(Failure::Infeasible(format!("invalid instance: {report}")));
    }
    Ok(inst)
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("json value"));
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Solve { file, root, gamma, diagnostics, oracle, json } => {
            let inst = load(&file)?;
            let options = SolveOptions {
                root,
                gamma: rational::parse_pq(&gamma)?,
                diagnostics,
                oracle,
                ..Default::default()
            };
            let sol = pipeline::solve(&inst, &options)?;
            let failures = pipeline::check_invariants(&inst, &sol);
            let out = json!({
                "edges": sol.edges,
                "tree_edges": sol.tree.tree_edges,
                "augmentation": sol.augmentation.chosen,
                "report": sol.report,
                "invariant_failures": failures,
            });
            if let Some(path) = json {
                let mut text = serde_json::to_string_pretty(&out).expect("json value");
                text.push('\n');
                std::fs::write(path, text).map_err(Error::from)?;
            }
            print_json(&out);
            if !failures.is_empty() {
                return Err(Failure::Invariant(failures.join("; ")));
            }
        }
        Command::Lp { file, exact_check } => {
            let inst = load(&file)?;
            let lp = cut_lp::solve_cut_lp(&inst)?;
            let x: Vec<String> = lp.x.values().iter().map(rational::to_pq).collect();
            let mut out = json!({
                "objective": rational::to_pq(&lp.objective),
                "x": x,
                "support": lp.support,
                "fractional_edges": cut_lp::fractional_edges(&lp.x),
                "basis_certificate": lp.basis_certificate,
                "rounds": lp.rounds,
                "cuts_used": lp.cuts_used,
            });
            if exact_check {
                let enumerated = oracle::exact_cut_lp_enumeration(&inst)?;
                out["enumerated_objective"] = json!(rational::to_pq(&enumerated));
                print_json(&out);
                if enumerated != lp.objective {
                    return Err(Failure::Invariant("cutting-plane and enumerated objectives differ".into()));
                }
            } else {
                print_json(&out);
            }
        }
        Command::Oracle { file, budget } => {
            let inst = load(&file)?;
            let result = oracle::exact_opt(&inst, budget)?;
            print_json(&json!(result));
        }
        Command::Gen { family } => {
            let (inst, output) = match family {
                Family::Gap { k, output } => (generators::gen_gap_instance(k)?, output),
                Family::Baddfs { depth, output } => (generators::gen_bad_dfs_instance(depth)?, output),
                Family::Random { n, extra_heavy, matching_fraction, seed, output } => {
                    (generators::gen_random_instance(n, extra_heavy, matching_fraction, seed)?, output)
                }
            };
            io::write_instance(&output, &inst)?;
        }
        Command::Experiment { spec, csv, json } => {
            let spec = ExperimentSpec::read(&spec)?;
            let report = experiment::run_experiment(&spec)?;
            if let Some(path) = csv {
                report.write_csv(&path)?;
            }
            if let Some(path) = json {
                report.write_json(&path)?;
            }
            print_json(&json!(report.summary));
            if !report.all_ok() {
                return Err(Failure::Invariant(format!("{} rows failed", report.summary.failed_rows)));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(1);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("invariant violation: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Infeasible(msg)) => {
            eprintln!("infeasible: {msg}");
            ExitCode::from(3)
        }
    }
}
