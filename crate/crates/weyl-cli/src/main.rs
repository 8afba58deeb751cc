//! `weyl` — verification suites and lattice experiments for the finite Weyl
//! algebra, emitting deterministic machine-readable reports.
//!
//! Exit codes: 0 = all checks pass (or report-only command), 1 = a check
//! failed or the computation errored, 2 = usage error.

mod commands;
mod report;
mod verify;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use commands::OutputTarget;
use report::OutputFormat;

#[derive(Parser)]
#[command(
    name = "weyl",
    version,
    about = "Finite Weyl algebra toolkit: identity suites, uncertainty and \
             continuum-limit experiments, locality probes, lattice waves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    /// Report format.
    #[arg(long, value_enum, default_value = "json")]
    output_format: OutputFormat,
    /// Write the report to this file instead of stdout. Relative paths are
    /// re-rooted under $WEYL_OUT_DIR when that variable is set.
    #[arg(long)]
    output: Option<PathBuf>,
}

impl OutputArgs {
    fn target(&self) -> OutputTarget {
        OutputTarget {
            format: self.output_format,
            path: self.output.clone(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run every algebraic identity suite at one order; one named row each.
    Verify {
        /// Algebra order (2 ≤ n ≤ 64).
        #[arg(long)]
        n: usize,
        /// Seed for the sampled suites.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Dump the position-momentum commutator with norms and structure checks.
    Commutator {
        /// Algebra order (n ≥ 2).
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Search random states for an uncertainty-relation witness.
    Uncertainty {
        /// Algebra order (n ≥ 2).
        #[arg(long)]
        n: usize,
        /// Number of random states to draw.
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Seed for the state draws.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Track the scaled commutator expectation toward i across orders.
    Limit {
        /// Comma-separated, strictly ascending orders, each at least 8.
        #[arg(long = "n-list", value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Conjugate the shift by a random unitary and compare locality reports.
    Explode {
        /// Algebra order (n ≥ 2).
        #[arg(long)]
        n: usize,
        /// Seed for the random unitary.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Integrate the lattice wave equation; report energy and dispersion.
    Wave {
        /// Lattice size (n ≥ 2).
        #[arg(long)]
        n: usize,
        /// Stiffness constant (> 0).
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// Time step (> 0, with √alpha·dt ≤ 0.5).
        #[arg(long, default_value_t = 0.05)]
        dt: f64,
        /// Number of leapfrog steps.
        #[arg(long, default_value_t = 10_000)]
        steps: usize,
        /// Seed for the random smooth initial field.
        #[arg(long, default_value_t = 4)]
        seed: u64,
        /// Record the field every this many steps (default: steps/10).
        #[arg(long)]
        sample_every: Option<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Audit the quadratic-phase duality element against the DFT (report-only).
    DualityAudit {
        /// Algebra order (n ≥ 2).
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn main() {
    // Pin the BLAS backend to one thread before any linear algebra runs:
    // reports promise byte-identical reruns, which multi-threaded reduction
    // orders would break.
    std::env::set_var("OPENBLAS_NUM_THREADS", "1");

    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify { n, seed, out } => commands::cmd_verify(*n, *seed, &out.target()),
        Command::Commutator { n, out } => commands::cmd_commutator(*n, &out.target()),
        Command::Uncertainty {
            n,
            trials,
            seed,
            out,
        } => commands::cmd_uncertainty(*n, *trials, *seed, &out.target()),
        Command::Limit { n_list, out } => commands::cmd_limit(n_list, &out.target()),
        Command::Explode { n, seed, out } => commands::cmd_explode(*n, *seed, &out.target()),
        Command::Wave {
            n,
            alpha,
            dt,
            steps,
            seed,
            sample_every,
            out,
        } => commands::cmd_wave(*n, *alpha, *dt, *steps, *seed, *sample_every, &out.target()),
        Command::DualityAudit { n, out } => commands::cmd_duality_audit(*n, &out.target()),
    };
    std::process::exit(commands::finish(result));
}
