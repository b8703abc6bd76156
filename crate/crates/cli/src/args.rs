use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tpschedule::Family;

#[derive(Debug, Parser)]
#[command(
    name = "tpschedule",
    version,
    about = "Cost-plus transfer-price schedules with a negotiation zone"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one schedule (x, f, t, n) for a target contribution.
    Solve(CommonArgs),
    /// Sweep target contributions into a (c, x, n) table.
    Table(TableArgs),
    /// Export NAR, NMR and price-hyperbola samples for plotting.
    Curve(CurveArgs),
    /// Check a scenario: feasibility bound, curve validity, self-tests.
    Validate(CommonArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// JSON scenario file; flags override its fields.
    #[arg(long)]
    pub scenario: Option<PathBuf>,
    /// linear, quadratic, exponential or points.
    #[arg(long)]
    pub family: Option<Family>,
    /// Net average revenue at the optimum.
    #[arg(long, allow_negative_numbers = true)]
    pub p: Option<f64>,
    /// Optimal output.
    #[arg(long, allow_negative_numbers = true)]
    pub q: Option<f64>,
    /// Target contribution as a share of maximum group contribution.
    #[arg(long, allow_negative_numbers = true)]
    pub c_real: Option<f64>,
    /// Source division's variable cost per unit.
    #[arg(long, allow_negative_numbers = true)]
    pub vc_a: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to a file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// `start:stop:step` or `v1,v2,...`.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// Reproduce a published table (1, 3 or 4).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    pub paper_table: Option<u8>,
    /// Decimal places for c, x and n.
    #[arg(long)]
    pub round: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Number of equally spaced samples on (0, q].
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
}
