//! `rans`: sampling, census, series, profile and verification reports.
//!
//! Exit status is 0 when every check passes, 1 when a verification or
//! asymptotic check fails, and 2 on usage errors (bad flags, caps, paths).

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{Format, UsageError};

#[derive(Parser)]
#[command(name = "rans", version, about = "Distances in random Apollonian network structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
pub struct Common {
    /// Seed; together with the flags it fixes every sampled value.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Tolerance override, repeatable.
    #[arg(long = "tolerance", value_name = "KEY=VAL")]
    pub tolerance: Vec<String>,
    /// Largest order enumerated exhaustively.
    #[arg(long, default_value_t = 6)]
    pub cap: usize,
}

#[derive(Args, Clone, Debug)]
pub struct Orders {
    /// A single order.
    #[arg(long, conflicts_with = "orders")]
    pub order: Option<usize>,
    /// Comma-separated orders.
    #[arg(long, value_delimiter = ',')]
    pub orders: Vec<usize>,
}

impl Orders {
    pub fn resolve(&self, default: &[usize]) -> Vec<usize> {
        match (self.order, self.orders.is_empty()) {
            (Some(n), _) => vec![n],
            (None, false) => self.orders.clone(),
            (None, true) => default.to_vec(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Sample uniform trees (and optionally their graphs).
    Sample {
        #[command(flatten)]
        orders: Orders,
        #[arg(long, default_value_t = 1)]
        samples: usize,
        /// `cycle` or `recursive`.
        #[arg(long, default_value = "cycle")]
        strategy: String,
        /// Include the graph of each sample (JSON only).
        #[arg(long)]
        graphs: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Distance profiles from O1 of sampled RANS.
    Profile {
        #[command(flatten)]
        orders: Orders,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value = "cycle")]
        strategy: String,
        #[command(flatten)]
        common: Common,
    },
    /// Exhaustive census against every generating function.
    Verify {
        /// Largest order checked.
        #[arg(long, default_value_t = 6)]
        order: usize,
        /// Series truncation; defaults to the order.
        #[arg(long)]
        trunc: Option<usize>,
        #[arg(long, hide = true, value_name = "NAME@ORDER")]
        inject_fault: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Convergence tables, degree tail and mean pairwise distance.
    Asympt {
        /// Truncation of the exact series.
        #[arg(long, default_value_t = 200)]
        trunc: usize,
        /// Monte Carlo orders.
        #[command(flatten)]
        orders: Orders,
        /// Graphs per Monte Carlo order; 0 skips the Monte Carlo stage.
        #[arg(long, default_value_t = 30)]
        samples: usize,
        #[arg(long, default_value = "cycle")]
        strategy: String,
        /// Order of the exact center-degree distribution.
        #[arg(long, default_value_t = 60)]
        tail_order: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Exact coefficients of the distance series.
    Series {
        #[arg(long, default_value_t = 200)]
        trunc: usize,
        /// Comma-separated subset of series names.
        #[arg(long, value_delimiter = ',')]
        series: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Exhaustive totals for every order up to `--order`.
    Census {
        #[arg(long, default_value_t = 6)]
        order: usize,
        #[command(flatten)]
        common: Common,
    },
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Sample {
            orders,
            samples,
            strategy,
            graphs,
            common,
        } => commands::sample(&orders, samples, &strategy, graphs, &common),
        Command::Profile {
            orders,
            samples,
            strategy,
            common,
        } => commands::profile(&orders, samples, &strategy, &common),
        Command::Verify {
            order,
            trunc,
            inject_fault,
            common,
        } => commands::verify(order, trunc, inject_fault.as_deref(), &common),
        Command::Asympt {
            trunc,
            orders,
            samples,
            strategy,
            tail_order,
            common,
        } => commands::asympt(trunc, &orders, samples, &strategy, tail_order, &common),
        Command::Series { trunc, series, common } => commands::series(trunc, &series, &common),
        Command::Census { order, common } => commands::census(order, &common),
    }
}

fn is_usage(e: &anyhow::Error) -> bool {
    if e.downcast_ref::<UsageError>().is_some() || e.downcast_ref::<std::io::Error>().is_some() {
        return true;
    }
    matches!(
        e.downcast_ref::<rans::Error>(),
        Some(
            rans::Error::EnumerationCap { .. }
                | rans::Error::TruncationCap { .. }
                | rans::Error::UnknownIdentity(_)
                | rans::Error::Io(_)
        )
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if is_usage(&e) { 2 } else { 1 })
        }
    }
}
