//! The command-line surface.

use clap::{ArgGroup, Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "hyperfin",
    version,
    about = "Build and check finite-scale certificates for growing bounded-degree graph sequences"
)]
pub struct Cli {
    /// Write a JSON report of the run here.
    #[arg(long, global = true, value_name = "PATH")]
    pub report: Option<String>,

    /// Write the per-stage CSV series here (`hierarchy` and `verify` only).
    #[arg(long, global = true, value_name = "PATH")]
    pub csv: Option<String>,

    /// Seed for random instance generation.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

/// Global output/seed options shared by every subcommand.
pub struct Globals {
    pub report: Option<String>,
    pub csv: Option<String>,
    pub seed: u64,
}

#[derive(Subcommand)]
pub enum Command {
    /// Color a power graph greedily; every class is a k-separated set
    Color(ColorArgs),
    /// Build a cover schedule: full coloring cycles or cyclic region sweeps
    Covers(CoversArgs),
    /// Build the nested hierarchy and certify component diameters
    Hierarchy(HierarchyArgs),
    /// Emit the per-vertex label codes induced by the hierarchy
    Reduce(ReduceArgs),
    /// Re-check every certificate with the brute-force verifiers
    Verify(VerifyArgs),
    /// Run an involution shrink pipeline at finite depth
    Ellentuck(EllentuckArgs),
    /// Generate a seeded random graph sequence
    Gen(GenArgs),
}

/// Growth schedule selection, shared by schedule-driven subcommands.
#[derive(Args)]
pub struct GrowthArgs {
    /// Growth schedule file (growth v1).
    #[arg(long, value_name = "PATH", conflicts_with = "f0")]
    pub growth: Option<String>,

    /// Start value for the canonical growth schedule 0, 2, 6, 14, ...
    #[arg(long, default_value_t = 0)]
    pub f0: usize,
}

#[derive(Args)]
pub struct ColorArgs {
    /// Graph sequence file (graphseq v1).
    pub graph: String,

    /// Separation radius: classes end up pairwise further apart than this.
    #[arg(long)]
    pub radius: usize,

    /// Stage to color at (default: the graph horizon).
    #[arg(long)]
    pub stage: Option<usize>,

    /// Vertex order file (order v1); ascending ids when omitted.
    #[arg(long, value_name = "PATH")]
    pub order: Option<String>,
}

#[derive(Args)]
#[command(group = ArgGroup::new("mode").required(true).args(["sweeps", "regions"]))]
pub struct CoversArgs {
    /// Graph sequence file (graphseq v1).
    pub graph: String,

    /// Emit this many full coloring cycles.
    #[arg(long)]
    pub sweeps: Option<usize>,

    /// Padding covers before the first cycle (default: max birth, at least 1).
    #[arg(long, requires = "sweeps")]
    pub start_offset: Option<usize>,

    /// Region list file (regions v1): cyclic region sweep mode.
    #[arg(long, value_name = "PATH")]
    pub regions: Option<String>,

    /// Number of sweep covers to emit (default: graph horizon + 1).
    #[arg(long, requires = "regions")]
    pub stages: Option<usize>,

    #[command(flatten)]
    pub growth: GrowthArgs,

    /// Coverage threshold for the limsup set in the report.
    #[arg(long, default_value_t = 1)]
    pub m: usize,

    /// Write the cover lines here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<String>,
}

/// Inputs shared by `hierarchy`, `reduce`, and `verify`: a graph, a cover
/// schedule (from a file or built inline), a growth schedule, and the
/// coverage threshold.
#[derive(Args)]
#[command(group = ArgGroup::new("cover_source").required(true).args(["covers", "sweeps"]))]
pub struct BuildArgs {
    /// Graph sequence file (graphseq v1).
    pub graph: String,

    /// Cover schedule file (`cover <n>: ...` lines).
    #[arg(long, value_name = "PATH")]
    pub covers: Option<String>,

    /// Build covers inline: this many full coloring cycles.
    #[arg(long)]
    pub sweeps: Option<usize>,

    /// Padding covers before the first cycle (default: max birth, at least 1).
    #[arg(long, requires = "sweeps")]
    pub start_offset: Option<usize>,

    #[command(flatten)]
    pub growth: GrowthArgs,

    /// Coverage threshold: base vertices must be covered at least this often.
    #[arg(long, default_value_t = 1)]
    pub m: usize,
}

#[derive(Args)]
pub struct HierarchyArgs {
    #[command(flatten)]
    pub build: BuildArgs,
}

#[derive(Args)]
pub struct ReduceArgs {
    #[command(flatten)]
    pub build: BuildArgs,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub build: BuildArgs,

    /// Fail when a base-set edge stays uncaptured at the horizon.
    #[arg(long)]
    pub require_capture: bool,
}

#[derive(Args)]
pub struct EllentuckArgs {
    /// Involution family file (invfam v1).
    pub family: String,

    /// Surviving-set size every shrink stage must reach.
    #[arg(long)]
    pub target: usize,
}

#[derive(Args)]
pub struct GenArgs {
    /// Universe size.
    #[arg(long)]
    pub vertices: usize,

    /// Per-vertex degree cap, at least 1.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub degree_bound: u64,

    /// Number of stages; the declared horizon is stages - 1.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub stages: u64,

    /// Edge count (default: vertices * degree_bound / 4).
    #[arg(long)]
    pub edges: Option<usize>,

    /// Write the graph text here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<String>,
}
