//! Argument types for the nstrong command-line interface.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Parser)]
#[command(name = "nstrong", version, about = "tuple families, membership verification and quality bounds for strong n-conjecture variants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Generate verified family instances as JSON-lines records.
    Gen(GenArgs),
    /// Verify tuple records against a universe.
    Verify(VerifyArgs),
    /// Tabulate exact qualities / certified lower bounds as CSV.
    Quality(QualityArgs),
    /// Check the symbolic polynomial identities.
    Identities(IdentitiesArgs),
    /// Exhaustive small-range search for high-quality members.
    Search(SearchArgs),
    /// Run the built-in sanity battery.
    Selftest,
}

/// An inclusive range argument: either "4" or "1..8".
#[derive(Debug, Clone, Copy)]
pub struct RangeArg {
    pub start: u64,
    pub end: u64,
}

impl RangeArg {
    pub fn iter(&self) -> impl Iterator<Item = u64> {
        self.start..=self.end
    }
}

impl FromStr for RangeArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.parse::<u64>().map_err(|_| format!("bad number {t:?}"));
        if let Some((a, b)) = s.split_once("..") {
            let (start, end) = (parse(a)?, parse(b)?);
            if start > end {
                return Err(format!("empty range {s:?}"));
            }
            Ok(RangeArg { start, end })
        } else {
            let v = parse(s)?;
            Ok(RangeArg { start: v, end: v })
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum FamilyArg {
    Konyagin,
    Odd,
    General,
    Ninefifths,
    AnQuadruple,
    Geometric,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum UniverseArg {
    A,
    B,
    R,
    U,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum YPolicyArg {
    Minimal,
    Factorial,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum ModeArg {
    Certified,
    Faithful,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum FormatArg {
    Csv,
    Jsonl,
}

#[derive(Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Exponent range for the konyagin family.
    #[arg(long)]
    pub k: Option<RangeArg>,
    /// Tuple length (odd, general, geometric families).
    #[arg(long)]
    pub n: Option<usize>,
    /// Pell solution index range (odd family).
    #[arg(long)]
    pub pell_index: Option<RangeArg>,
    /// Forbidden factors F (odd, general families).
    #[arg(long, num_args = 1.., value_delimiter = ' ')]
    pub forbid: Vec<u64>,
    /// y selection policy (odd family).
    #[arg(long, value_enum, default_value = "minimal")]
    pub y_policy: YPolicyArg,
    /// Generator mode (general family); faithful is a dry run.
    #[arg(long, value_enum, default_value = "certified")]
    pub mode: ModeArg,
    /// Exponent multiple range (general family).
    #[arg(long, default_value = "1")]
    pub exponent_multiple: RangeArg,
    /// Use s = ell! instead of the minimal even multiple (general family).
    #[arg(long)]
    pub s_factorial: Option<u64>,
    /// Base prime (ninefifths family).
    #[arg(long)]
    pub ell: Option<u64>,
    /// Exponent range (ninefifths, an-quadruple families).
    #[arg(long)]
    pub h: Option<RangeArg>,
    /// Geometric base range (geometric family).
    #[arg(long)]
    pub y: Option<RangeArg>,
    /// Output path (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub universe: UniverseArg,
    /// Forbidden factors (only with --universe u).
    #[arg(long, num_args = 1.., value_delimiter = ' ')]
    pub forbid: Vec<u64>,
    /// Input records (default: stdin).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Output path for the per-record reports (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct QualityArgs {
    /// Input records (default: stdin).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Output path (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Fail (exit 1) when a row has no exact radical and no parts.
    #[arg(long)]
    pub strict: bool,
    /// Trial division limit override (env NSTRONG_TRIAL_LIMIT).
    #[arg(long)]
    pub trial_limit: Option<u64>,
    /// Pollard rho iteration limit override (env NSTRONG_RHO_LIMIT).
    #[arg(long)]
    pub rho_limit: Option<u64>,
    /// Factorization wall-clock limit in milliseconds (env NSTRONG_WALL_MS).
    #[arg(long)]
    pub wall_ms: Option<u64>,
}

#[derive(Args)]
pub struct IdentitiesArgs {
    /// Report the degree and remainder constants for one admissible s.
    #[arg(long)]
    pub s: Option<u64>,
}

#[derive(Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub bound: u64,
    #[arg(long, value_enum, default_value = "r")]
    pub universe: UniverseArg,
    #[arg(long, num_args = 1.., value_delimiter = ' ')]
    pub forbid: Vec<u64>,
    /// How many best-quality tuples to keep.
    #[arg(long, default_value = "10")]
    pub top: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: FormatArg,
    /// Enumeration node budget guard.
    #[arg(long)]
    pub node_budget: Option<u64>,
    /// Output path (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}
