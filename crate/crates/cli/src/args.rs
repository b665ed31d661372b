//! Command-line and experiment-file arguments.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "areatype", version, about = "Area types of planar point configurations")]
pub struct Cli {
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Seed for every random draw; required by stochastic commands.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Output format (each command has its own default).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Canonical form of a configuration read as JSON.
    Canonicalize(CanonicalizeArgs),
    /// Compare two configurations, `{"x": ..., "y": ...}`.
    Compare(CompareArgs),
    /// Generate a test set: lattice neighborhoods or a Cantor grid measure.
    Generate(GenerateArgs),
    /// Count area types of one polar lattice.
    Count(CountArgs),
    /// Count over a range of lattice sizes and fit the growth rate.
    SweepCount(SweepCountArgs),
    /// Box-counting measure of area types of thickened lattices.
    BoxMeasure(BoxMeasureArgs),
    /// L² norm of the empirical area-type density of a measure.
    NuL2(NuL2Args),
    /// Norms and slopes of Littlewood–Paley pieces of a grid measure.
    LpSlopes(LpSlopesArgs),
    /// Run an experiment file (TOML or JSON).
    Run(RunArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Canonicalize(_) => "canonicalize",
            Command::Compare(_) => "compare",
            Command::Generate(_) => "generate",
            Command::Count(_) => "count",
            Command::SweepCount(_) => "sweep-count",
            Command::BoxMeasure(_) => "box-measure",
            Command::NuL2(_) => "nu-l2",
            Command::LpSlopes(_) => "lp-slopes",
            Command::Run(_) => "run",
        }
    }

    pub fn is_stochastic(&self) -> bool {
        match self {
            Command::Generate(g) => g.kind == GenerateKind::Cantor || g.points_per_cell.is_some(),
            Command::BoxMeasure(_) | Command::NuL2(_) => true,
            Command::LpSlopes(a) => a.grid.is_none(),
            _ => false,
        }
    }
}

/// Inclusive integer range written `a..b`, or a single value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntRange {
    pub start: u32,
    pub end: u32,
}

impl IntRange {
    pub fn values(&self, step: u32) -> Vec<u32> {
        (self.start..=self.end).step_by(step.max(1) as usize).collect()
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("`{t}`: {e}"));
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if start > end {
            return Err(format!("empty range {s}"));
        }
        Ok(Self { start, end })
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Args)]
pub struct CanonicalizeArgs {
    /// JSON file (default: stdin). Either `{"k": .., "points": [[x, y], ..]}`
    /// or a bare list of points.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Exact rational arithmetic; coordinates may be decimals or `"p/q"`.
    #[arg(long)]
    pub exact: bool,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Sup-norm tolerance on canonical forms.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Also run the stability check with this non-degeneracy constant.
    #[arg(long, requires = "eps")]
    pub c: Option<f64>,
    #[arg(long, requires = "c")]
    pub eps: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenerateKind {
    /// Polar lattice points, or samples of their neighborhoods.
    Lattice,
    /// Cantor-dust grid measure (binary file plus JSON sidecar).
    Cantor,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(value_enum)]
    pub kind: GenerateKind,
    #[arg(long)]
    pub q: Option<u32>,
    /// Dimension parameter (neighborhood radius `q^{-2/s}` for `lattice`).
    #[arg(long)]
    pub s: Option<f64>,
    /// Grid side for `cantor` (power of two).
    #[arg(long, default_value_t = 1024)]
    pub n: usize,
    /// Sample this many points per lattice neighborhood instead of emitting
    /// the lattice points themselves.
    #[arg(long)]
    pub points_per_cell: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long)]
    pub q: u32,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = areatype::counting::DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    /// Fill the `seconds` column (makes output run-dependent).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct SweepCountArgs {
    #[arg(long)]
    pub q: IntRange,
    #[arg(long, default_value_t = 1)]
    pub step: u32,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = areatype::counting::DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct BoxMeasureArgs {
    #[arg(long)]
    pub q: IntRange,
    #[arg(long, default_value_t = 1)]
    pub step: u32,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long)]
    pub s: f64,
    /// Random tuples per normalized cell tuple.
    #[arg(long, default_value_t = areatype::scaling::DEFAULT_DRAWS_PER_TUPLE)]
    pub draws: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MeasureKind {
    /// Uniform on `1/2 ≤ |z| ≤ 1`.
    Annulus,
    /// Thickened diameter of the unit disk.
    Segment,
    /// A grid measure file written by `generate cantor`.
    Grid,
}

#[derive(Debug, Args)]
pub struct NuL2Args {
    #[arg(long, value_enum)]
    pub measure: MeasureKind,
    /// Grid measure file for `--measure grid`.
    #[arg(long)]
    pub grid: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Comma-separated grid sides.
    #[arg(long, value_delimiter = ',', required = true)]
    pub eps: Vec<f64>,
    #[arg(long)]
    pub samples: u64,
    /// Sector width for the angle restriction; must divide 2π.
    #[arg(long, default_value_t = areatype::scaling::DEFAULT_DELTA)]
    pub delta: f64,
    /// Draw the points independently, without angle restriction.
    #[arg(long)]
    pub unrestricted: bool,
    /// Segment thickness.
    #[arg(long, default_value_t = 1e-3)]
    pub thickness: f64,
    /// Segment direction in radians.
    #[arg(long, default_value_t = 0.3)]
    pub angle: f64,
    /// Directory for per-eps histogram CSV and JSON summaries.
    #[arg(long)]
    pub histograms: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LpSlopesArgs {
    /// Build a Cantor grid measure of this dimension.
    #[arg(long, conflicts_with = "grid")]
    pub s: Option<f64>,
    /// Read a grid measure file instead.
    #[arg(long)]
    pub grid: Option<PathBuf>,
    #[arg(long, default_value_t = 1024)]
    pub n: usize,
    #[arg(long, default_value = "3..7")]
    pub j: IntRange,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    pub file: PathBuf,
}
