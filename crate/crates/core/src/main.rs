use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use uav_mission::cli::{self, CliError, SolveArgs, DEFAULT_ALPHAS};
use uav_mission::planner::OrderMode;
use uav_mission::subtrajectory::DEFAULT_POS_TOL_M;

#[derive(Parser)]
#[command(name = "uav-mission", version, about = "Plan, verify and export UAV data-collection missions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Plan a mission and optionally write the plan document.
    Solve {
        scenario: PathBuf,
        /// auto | nn | exhaustive | distance | explicit list such as 1,2,3,4
        #[arg(long, default_value = "auto")]
        order: OrderMode,
        /// Override the scenario's volume scale.
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long = "pos-tol-m", default_value_t = DEFAULT_POS_TOL_M)]
        pos_tol_m: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a plan document against the scenario's constraints.
    Verify {
        scenario: PathBuf,
        plan: PathBuf,
        #[arg(long)]
        alpha: Option<f64>,
    },
    /// Completion time of the proposed and distance-based orders over a volume sweep.
    Compare {
        scenario: PathBuf,
        #[arg(long, value_delimiter = ',')]
        alphas: Option<Vec<f64>>,
        #[arg(long = "pos-tol-m", default_value_t = DEFAULT_POS_TOL_M)]
        pos_tol_m: f64,
        /// CSV destination; printed after the table when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample a plan on a uniform time grid as CSV.
    Sample {
        scenario: PathBuf,
        plan: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        dt: f64,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Solve { scenario, order, alpha, pos_tol_m, out: plan_out } => {
            let args = SolveArgs { scenario, order, alpha, pos_tol_m, out: plan_out };
            cli::cmd_solve(&args, out)
        }
        Command::Verify { scenario, plan, alpha } => cli::cmd_verify(&scenario, &plan, alpha, out),
        Command::Compare { scenario, alphas, pos_tol_m, out: csv } => {
            let alphas = alphas.unwrap_or_else(|| DEFAULT_ALPHAS.to_vec());
            cli::cmd_compare(&scenario, &alphas, pos_tol_m, csv.as_deref(), out)
        }
        Command::Sample { scenario, plan, dt, alpha, out: csv } => {
            cli::cmd_sample(&scenario, &plan, dt, alpha, csv.as_deref(), out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { cli::EXIT_INPUT as u8 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = match run(cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    let _ = out.flush();
    ExitCode::from(code as u8)
}
