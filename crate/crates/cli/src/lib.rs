//! The `nullsum` command line: coefficient extraction, Table-style reports,
//! certificates, ordering searches, sweeps and the coefficient cache.

pub mod cache;
pub mod commands;
pub mod parse;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use nullsum_core::grouplab::{GroupSpec, Variant};
use nullsum_core::nullstellensatz::{Conjecture, Family, Method};

pub use commands::{run, CliError};
pub use report::{Document, Format};

#[derive(Debug, Parser)]
#[command(name = "nullsum", version, about = "Nullstellensatz coefficients and partial-sum orderings")]
pub struct Cli {
    /// Coefficient cache (JSON lines).
    #[arg(long, global = true, env = "NULLSUM_CACHE")]
    pub cache: Option<PathBuf>,

    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, env = "NULLSUM_WORKERS")]
    pub workers: Option<usize>,

    /// Memory guard: maximum live polynomial terms per computation.
    #[arg(long, global = true, env = "NULLSUM_MAX_TERMS")]
    pub max_terms: Option<usize>,

    /// Output format (default: text for `table`, json otherwise).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Extract one coefficient.
    Coeff {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        family: Family,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        j: usize,
        /// Force a method instead of the default (bypasses the cache).
        #[arg(long)]
        method: Option<Method>,
    },
    /// The a^(k) matrix with its e column.
    Table {
        #[arg(long)]
        k: usize,
    },
    /// gcd certificate for a conjecture.
    Certify {
        #[arg(long)]
        conjecture: Conjecture,
        #[arg(long)]
        k: usize,
        /// Coefficient family (default: c for alspach, e for gadms).
        #[arg(long)]
        family: Option<Family>,
        /// Indices, e.g. `1,2` or `1-4` (default: 1..k).
        #[arg(long)]
        j: Option<String>,
    },
    /// Find an ordering of a set.
    Order {
        /// `Zn`, `Z` or `Z^m`.
        #[arg(long)]
        group: GroupSpec,
        /// `1,2,3` or `(1,0);(0,1);(2,3)`.
        #[arg(long, allow_hyphen_values = true)]
        set: String,
        #[arg(long, default_value = "alspach")]
        variant: Variant,
        /// Search node budget.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Exhaustively check all k-subsets of a cyclic group.
    Sweep {
        #[arg(long)]
        group: GroupSpec,
        #[arg(long)]
        k: usize,
        /// Default: all three variants.
        #[arg(long)]
        variant: Option<Variant>,
        #[arg(long, default_value_t = 5_000_000)]
        max_subsets: u64,
        /// Search node budget per subset.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Compare a certificate with an exhaustive sweep of Z_p.
    Consistency {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: u64,
        /// Default: every variant with a certificate for size k.
        #[arg(long)]
        variant: Option<Variant>,
        #[arg(long, default_value_t = 5_000_000)]
        max_subsets: u64,
    },
    /// Inspect and maintain the coefficient cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum CacheAction {
    List,
    Clear,
    Import { file: PathBuf },
    Export { file: PathBuf },
    /// Recompute a sample of cached records and compare.
    Verify {
        #[arg(long, default_value_t = 8)]
        sample: usize,
    },
}
