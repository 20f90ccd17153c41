use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "quadhull", version, about = "Multiplication reductions, quadratic hulls and minimal-algorithm search over small finite fields")]
pub struct Cli {
    /// Print the JSON report instead of the human summary.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a linear map A -> B is a multiplication reduction.
    Verify(VerifyArgs),
    /// Quadratic kernel and rational points of the hull of a code.
    Hull(HullArgs),
    /// All subspaces W of a given dimension for an algebra.
    Search(SearchArgs),
    /// Re-run the minimal-algorithm tables and diff against expected counts.
    Tables(TablesArgs),
    /// Rebuild the length-13 algorithm for F_32 from a cubic surface.
    Delpezzo(DelPezzoArgs),
    /// Look for a supercode witness turning a code into a reduction.
    Supercode(SupercodeArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Source algebra spec, e.g. gfext:2:5.
    #[arg(long)]
    pub algebra: String,
    /// Target algebra spec, e.g. split:2:13.
    #[arg(long)]
    pub target: String,
    /// Matrix file of phi, one row per basis vector of the source.
    #[arg(long)]
    pub phi: PathBuf,
}

#[derive(Debug, Args)]
pub struct HullArgs {
    /// Generator matrix file.
    #[arg(long)]
    pub code: PathBuf,
    /// Expected field order; must agree with the file header.
    #[arg(long)]
    pub q: Option<u32>,
    /// Count points over F_{q^m} for m = 1..=EXT.
    #[arg(long, default_value_t = 1)]
    pub ext: u32,
    /// Ambient algebra of the code (default: split of the matrix width).
    #[arg(long)]
    pub target: Option<String>,
    /// Algebra whose canonical point is tested for membership.
    #[arg(long)]
    pub algebra: Option<String>,
    /// Also check hyperplane sections at rational secant points.
    #[arg(long)]
    pub secants: bool,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Algebra spec over F_2 or F_3, e.g. trunc:2:4.
    #[arg(long)]
    pub algebra: String,
    /// Dimension n of the subspaces W.
    #[arg(long)]
    pub length: usize,
    /// Lift the default node budget (QH_NODE_BUDGET still applies).
    #[arg(long)]
    pub long: bool,
    /// Worker threads, 0 for one per core.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    /// Count hull points over F_{q^m} for m = 1..=EXT.
    #[arg(long, default_value_t = 1)]
    pub ext: u32,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    /// Table number; all four when omitted.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    pub table: Vec<u8>,
    /// Also run the rows marked long.
    #[arg(long)]
    pub long: bool,
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
}

#[derive(Debug, Args)]
pub struct DelPezzoArgs {
    /// Write phi in matrix format to this file.
    #[arg(long)]
    pub write_phi: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SupercodeArgs {
    /// Generator matrix file.
    #[arg(long)]
    pub code: PathBuf,
    /// Algebra the witness point lives over.
    #[arg(long)]
    pub algebra: String,
    /// Ambient algebra of the code (default: split of the matrix width).
    #[arg(long)]
    pub target: Option<String>,
}
