//! `dtk`: analyze, verify, construct and render digital images.

mod commands;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "dtk", version, about = "Freezing, cold and unifying sets of digital images")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Connectivity, boundaries, and disk geometry for planar images.
    Analyze {
        #[command(flatten)]
        image: ImageArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        output: OutputFormat,
    },
    /// Decide a property of a point set. Exit code 0 when it holds, 1 when
    /// it fails, 2 on errors or an exhausted budget.
    Verify {
        #[arg(value_enum)]
        property: PropertyArg,
        #[command(flatten)]
        image: ImageArgs,
        /// Points file (or grid) with the set to check.
        #[arg(long, value_name = "FILE")]
        set: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Build a freezing set (or a shy retraction) from the image.
    Construct {
        #[arg(long, value_enum)]
        method: Method,
        #[command(flatten)]
        image: ImageArgs,
        /// For `disks-c1`/`disks-c2`, one file per disk; for
        /// `shy-retraction`, the subtree to retract onto.
        #[arg(long, value_name = "FILE")]
        set: Vec<PathBuf>,
        /// Verify the constructed set (freezing) or retraction (unique shy).
        #[arg(long)]
        and_verify: bool,
        /// Skip exhaustive certification of the minimal bounding curve.
        #[arg(long)]
        assume_minimal: bool,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Print a planar image as a grid, optionally marking a set.
    Render {
        #[command(flatten)]
        image: ImageArgs,
        #[arg(long, value_name = "FILE")]
        set: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct ImageArgs {
    /// Image file: a grid over '#' and '.', or one point per line.
    pub image: PathBuf,
    /// Lattice adjacency c1, c2, ..., cn. The default is c1.
    #[arg(long, value_name = "cU", group = "adj")]
    pub adjacency: Option<String>,
    /// Normal product adjacency "u;c1,c1" (a factor of dimension d is "cK:d").
    #[arg(long, value_name = "SPEC", group = "adj")]
    pub np: Option<String>,
    /// Edges file: pairs of 0-based indices into the image's point order.
    #[arg(long, value_name = "FILE", group = "adj")]
    pub explicit: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RunArgs {
    /// Search node budget per verification.
    #[arg(long, value_name = "N", env = "DTK_BUDGET")]
    pub budget: Option<u64>,
    #[arg(long, value_name = "N", default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Machine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PropertyArg {
    Freezing,
    Cold,
    Unifying,
    MinimalFreezing,
    MinimalUnifying,
    AfpPropagation,
    ForcedIsomorphism,
    UniqueShyRetraction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Points with a c1-neighbor outside the image.
    Bd1,
    /// The corners of a box.
    Corners,
    /// Thick convex disk under c1: ends of axis-parallel sides plus slanted sides.
    DiskC1,
    /// Thick convex disk under c2: ends of slanted sides plus axis-parallel sides.
    DiskC2,
    /// Image partly covered by disks (--set per disk), c1 sets per disk.
    DisksC1,
    /// Image partly covered by disks (--set per disk), c2 sets per disk.
    DisksC2,
    /// First valid triple of a cycle.
    CycleTriple,
    /// Leaves of a tree.
    TreeLeaves,
    /// Two points per cycle of a wedge of two cycles.
    Wedge,
    /// The shy retraction of a tree onto a subtree (--set).
    ShyRetraction,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(commands::run(&cli))
}
