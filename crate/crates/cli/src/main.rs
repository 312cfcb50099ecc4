mod commands;
mod output;

use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Regularity of spline homology modules from (a, b, r) or planar triangulations.
#[derive(Parser, Debug)]
#[command(name = "spline-reg", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Lift the caps r <= 24 and a, b <= 16.
    #[arg(long, global = true)]
    pub unsafe_no_cap: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact regularity and sandwich bounds for a one-edge configuration.
    Regularity {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        r: u32,
        /// Also run the chain-complex oracle, on --complex or on a constructed triangulation.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        complex: Option<PathBuf>,
    },
    /// Interior statistics and regularity (or path bounds) of a complex file.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        r: u32,
        /// Add spline dimensions for degrees 0..=D.
        #[arg(long)]
        d: Option<u32>,
        /// Also run the brute-force spline dimension and H0 oracles.
        #[arg(long)]
        oracle: bool,
    },
    /// Regularity over a grid of (a, b, r); ranges are inclusive, as in 3..8.
    Sweep {
        #[arg(long, value_parser = parse_range)]
        a: RangeInclusive<u32>,
        #[arg(long, value_parser = parse_range)]
        b: RangeInclusive<u32>,
        #[arg(long, value_parser = parse_range)]
        r: RangeInclusive<u32>,
        /// Only cells with a <= b.
        #[arg(long)]
        ordered: bool,
    },
    /// Staircases, colon data, In Q and optionally its Buchberger graph.
    Staircase {
        #[arg(long)]
        r: u32,
        #[arg(long, conflicts_with_all = ["a", "b"])]
        s: Option<u32>,
        #[arg(long, requires = "b")]
        a: Option<u32>,
        #[arg(long, requires = "a")]
        b: Option<u32>,
        #[arg(long)]
        emit_graph: bool,
    },
    /// Multigraded Betti numbers of In Q against the syzygy closed forms.
    Betti {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        r: u32,
    },
}

/// `lo..hi` (inclusive) or a single value.
pub fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo, hi.strip_prefix('=').unwrap_or(hi)),
        None => (s, s),
    };
    let num = |t: &str| {
        t.trim()
            .parse::<u32>()
            .map_err(|_| format!("invalid range bound {t:?} in {s:?}"))
    };
    let (lo, hi) = (num(lo)?, num(hi)?);
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok(lo..=hi)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(commands::Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(commands::Failure::Engine(e)) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(1)
        }
        Err(commands::Failure::Violations(out, n)) => {
            print!("{out}");
            eprintln!("error[Violations]: {n} cells failed");
            ExitCode::from(1)
        }
    }
}
