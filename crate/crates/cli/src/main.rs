//! Command-line surface: information measures, change-of-measure bounds,
//! order sweeps, exact verification of learning instances, and the
//! bound-comparison table.
//!
//! Exit codes: 0 on success with every checked inequality holding, 1 when
//! any bound is violated, 2 on input or usage errors. CSV goes to --out or
//! stdout; diagnostics go to stderr.

mod commands;
mod gen;
mod io;
mod render;

use clap::{Parser, Subcommand};
use commands::{CommandOutput, VerifyOptions};
use render::Units;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "infobounds", version, about = "Information-measure generalization bounds, verified by exact enumeration")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Divergences and mutual informations of a joint distribution
    Measure {
        /// Joint grid CSV (header "nx,ny", dimensions row, then rows)
        #[arg(long)]
        joint: PathBuf,
        /// Comma-separated orders, e.g. "0.5,2,inf"
        #[arg(long)]
        alpha: String,
        #[arg(long, value_enum, default_value = "nats")]
        units: Units,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate one bound on an explicit event
    Bound {
        #[arg(long)]
        joint: PathBuf,
        /// Event grid CSV (0/1 cells, same format as the joint)
        #[arg(long)]
        event: PathBuf,
        /// theorem1 | alpha_div | sibson | leakage
        #[arg(long)]
        kind: String,
        #[arg(long)]
        alpha: Option<String>,
        /// Second exponent for kind=theorem1 (defaults to --alpha)
        #[arg(long)]
        alpha_prime: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep the bound over an order grid and report the best order
    Sweep {
        #[arg(long)]
        joint: PathBuf,
        #[arg(long)]
        event: PathBuf,
        /// Comma-separated order grid, e.g. "1,1.5,2,4,inf"
        #[arg(long)]
        grid: String,
        /// sibson | alpha_div
        #[arg(long, default_value = "sibson")]
        kind: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact verification of a learning instance against every bound
    Verify {
        /// Problem specification (strict TOML)
        #[arg(long)]
        problem: PathBuf,
        /// Comma-separated eta grid
        #[arg(long, default_value = "0.1,0.2,0.3,0.45")]
        eta: String,
        /// Comma-separated order grid
        #[arg(long, default_value = "1,1.5,2,4,inf")]
        alpha: String,
        /// Confidence for the sample-complexity rows (omit to skip them)
        #[arg(long)]
        delta: Option<f64>,
        /// Overrides the seed recorded in the problem file
        #[arg(long)]
        seed: Option<u64>,
        /// Overrides the enumeration cap
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, value_enum, default_value = "nats")]
        units: Units,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Testing hook: append a failing row to force a nonzero exit
        #[arg(long, hide = true)]
        inject_violation: bool,
    },
    /// Bound-comparison table from a parameter file
    Table {
        /// Table parameters (strict TOML)
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a seeded random problem specification
    GenProblem {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        z_size: usize,
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        h_size: usize,
        /// erm | gibbs
        #[arg(long, default_value = "erm")]
        learner: String,
        #[arg(long, default_value_t = 1.0)]
        temperature: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> anyhow::Result<(CommandOutput, Option<PathBuf>)> {
    match cli.command {
        Command::Measure {
            joint,
            alpha,
            units,
            out,
        } => Ok((commands::run_measure(&joint, &alpha, units)?, out)),
        Command::Bound {
            joint,
            event,
            kind,
            alpha,
            alpha_prime,
            out,
        } => Ok((
            commands::run_bound(&joint, &event, &kind, alpha.as_deref(), alpha_prime.as_deref())?,
            out,
        )),
        Command::Sweep {
            joint,
            event,
            grid,
            kind,
            out,
        } => Ok((commands::run_sweep(&joint, &event, &grid, &kind)?, out)),
        Command::Verify {
            problem,
            eta,
            alpha,
            delta,
            seed,
            cap,
            units,
            out,
            inject_violation,
        } => {
            let opts = VerifyOptions {
                etas: io::parse_eta_list(&eta)?,
                alphas: io::parse_order_list(&alpha)?,
                delta,
                seed,
                cap,
                units,
                inject_violation,
            };
            Ok((commands::run_verify(&problem, &opts)?, out))
        }
        Command::Table { params, out } => Ok((commands::run_table(&params)?, out)),
        Command::GenProblem {
            seed,
            z_size,
            n,
            h_size,
            learner,
            temperature,
            out,
        } => {
            let text = gen::generate_problem(&gen::GenOptions {
                seed,
                z_size,
                n,
                h_size,
                learner,
                temperature,
            })?;
            Ok((CommandOutput { text, all_hold: true }, out))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((output, out_path)) => {
            let write_result = match &out_path {
                Some(path) => std::fs::write(path, &output.text),
                None => {
                    print!("{}", output.text);
                    Ok(())
                }
            };
            if let Err(e) = write_result {
                eprintln!("error: writing output: {e}");
                return ExitCode::from(2);
            }
            if output.all_hold {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: at least one bound violated");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
