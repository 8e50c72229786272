//! Batch front end: expansion, verification, kernel discovery, Gauss-Bonnet
//! constants, and variational experiments, with reproducible seeds and
//! machine-readable output.
//!
//! Exit status: 0 on verified/success, 1 on identity violation, numerical
//! non-convergence, or inconclusive rank, 2 on usage errors.

use clap::{Args, Parser, Subcommand};

mod report;
mod run;

use run::{CliError, RunConfig};

#[derive(Parser)]
#[command(
    name = "curvature",
    about = "Universal curvature invariants: expansions, identities, kernels, and model-geometry experiments",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum ValenceArg {
    Scalar,
    Sym2,
}

#[derive(Args)]
struct OutputArgs {
    /// Emit a report-v1 JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a wedge-contracted invariant into canonical monomials.
    Expand {
        /// Weight of the scalar invariant family.
        #[arg(long, value_name = "N", conflicts_with = "t2")]
        pfaffian: Option<u32>,
        /// Weight of the symmetric 2-form family.
        #[arg(long, value_name = "N")]
        t2: Option<u32>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Enumerate the full pair-contraction spanning set of a weight.
    SpanningSet {
        #[arg(long)]
        weight: u32,
        #[arg(long, value_enum, default_value = "scalar")]
        valence: ValenceArg,
        /// Maximum covariant-derivative order per factor.
        #[arg(long, default_value_t = 0)]
        max_deriv: usize,
        /// Prune to evaluation-independent elements in this dimension.
        #[arg(long)]
        prune_dim: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample count for pruning (default: 3x set size).
        #[arg(long)]
        trials: Option<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Verify a cataloged identity (e.g. --lemma 1.2.2).
    Verify {
        /// Catalog identifier of the identity.
        #[arg(long, value_name = "ID")]
        lemma: String,
        /// Dimension override; the identity is expected to fail away from
        /// its critical dimension.
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Numerator bound for random jet coefficients.
        #[arg(long, default_value_t = 9)]
        coefficient_bound: i64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Exact kernel of the evaluation matrix over an enumerated spanning set.
    Kernel {
        #[arg(long)]
        weight: u32,
        #[arg(long, value_enum, default_value = "scalar")]
        valence: ValenceArg,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        max_deriv: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample count (default: 3x set size plus a safety margin).
        #[arg(long)]
        trials: Option<usize>,
        /// Numerator bound for random jet coefficients.
        #[arg(long, default_value_t = 9)]
        coefficient_bound: i64,
        /// Skip pruning to independent columns in the reference dimension.
        #[arg(long)]
        no_prune: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Exact Gauss-Bonnet constant and Euler-characteristic checks.
    GaussBonnet {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Finite-difference variational experiment on a perturbed flat torus.
    Variation {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        weight: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Coarse central-difference step.
        #[arg(long, default_value_t = 1e-3)]
        epsilon: f64,
        /// Number of independent perturbations.
        #[arg(long, default_value_t = 3)]
        perturbations: usize,
        /// Quadrature panels per axis (coarse resolution).
        #[arg(long, default_value_t = 24)]
        panels: usize,
        /// Quadrature consistency tolerance.
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn main() {
    let cli = Cli::parse();
    let (config, json) = RunConfig::from_command(&cli.command);
    match run::run(&config) {
        Ok(outcome) => {
            if json {
                println!("{}", report::envelope(&config, &outcome.result));
            } else {
                print!("{}", outcome.text);
            }
            std::process::exit(if outcome.verified { 0 } else { 1 });
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
    }
}
