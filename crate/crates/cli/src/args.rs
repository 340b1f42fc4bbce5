use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use filament_rng::stats::PairMode;
use filament_rng::Family;

#[derive(Debug, Parser)]
#[command(name = "filament-rng", version, about = "Pseudorandom points from polygonal vortex filaments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a point stream or a reference congruential sequence.
    Gen(GenArgs),
    /// Cross-check the closed forms against the geometric and Gauss-sum oracles.
    Verify(VerifyArgs),
    /// Evaluate one Gauss sum and the vertex angle built from it.
    Gauss(GaussArgs),
    /// Run statistical tests on a CSV produced by `gen`.
    Stats(StatsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    PlanarHyperbolic,
    HyperbolicHelical,
    CircularHelical,
    EuclideanHelical,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::PlanarHyperbolic => Family::PlanarHyperbolic,
            FamilyArg::HyperbolicHelical => Family::HyperbolicHelical,
            FamilyArg::CircularHelical => Family::CircularHelical,
            FamilyArg::EuclideanHelical => Family::EuclideanHelical,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeneratorArg {
    Filament,
    Lcg,
    Icg,
    Eicg,
    Compound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PairModeArg {
    Overlapping,
    Disjoint,
}

impl From<PairModeArg> for PairMode {
    fn from(m: PairModeArg) -> Self {
        match m {
            PairModeArg::Overlapping => PairMode::Overlapping,
            PairModeArg::Disjoint => PairMode::Disjoint,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TestName {
    Discrepancy,
    Chi2,
    Serial,
    Circle,
}

/// Vertex index: a number, or `auto` for 0 (q odd or q ≡ 0 mod 4) / 1 (q ≡ 2 mod 4).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexIndex {
    Auto,
    Fixed(u64),
}

impl std::str::FromStr for VertexIndex {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "auto" {
            Ok(VertexIndex::Auto)
        } else {
            s.parse().map(VertexIndex::Fixed).map_err(|e| format!("{e}"))
        }
    }
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum, default_value = "filament")]
    pub generator: GeneratorArg,
    #[arg(long, value_enum, default_value = "planar-hyperbolic")]
    pub family: FamilyArg,
    /// Modulus (denominator of the rational time).
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long, default_value = "auto")]
    pub m: VertexIndex,
    /// Torsion angle in radians (helical families only).
    #[arg(long, default_value_t = 0.0)]
    pub theta0: f64,
    /// Corner angle; fixes the circle.
    #[arg(long, default_value_t = 0.5)]
    pub rho: f64,
    /// Emit only points with p >= this.
    #[arg(long)]
    pub p_min: Option<u64>,
    /// Emit only points with p <= this.
    #[arg(long)]
    pub p_max: Option<u64>,
    /// Omit the normalized u column; allows any q and m.
    #[arg(long)]
    pub no_u: bool,
    /// Multiplier for lcg/icg/eicg.
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub a: i64,
    /// Increment for lcg/icg/eicg.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub b: i64,
    /// Seed x0 (lcg/icg) or first index n0 (eicg).
    #[arg(long, default_value_t = 0)]
    pub start: u64,
    /// Sequence length for lcg/icg/eicg; defaults to q.
    #[arg(long)]
    pub count: Option<usize>,
    /// Comma-separated primes for the compound generator.
    #[arg(long, value_delimiter = ',')]
    pub moduli: Vec<u64>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output file; standard output when omitted.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 3)]
    pub q_min: u64,
    #[arg(long, default_value_t = 50)]
    pub q_max: u64,
    /// Tolerance on |x_oracle − x_closed| and |y_oracle − y_closed|.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Tolerance on the angle between the Gauss phase increment and the closed form.
    #[arg(long, default_value_t = 1e-8)]
    pub angle_tol: f64,
    /// Torsion angle used for the helical families.
    #[arg(long, default_value_t = 0.7)]
    pub theta0: f64,
    #[arg(long, default_value_t = 0.5)]
    pub rho: f64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GaussArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub p: u64,
    /// Gauss-sum index and vertex index; defaults to the class default.
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<i64>,
}

/// Pass rules for `stats`. The defaults follow the desk-scale bands used for
/// q ≈ 10^4 sequences: EICG-type discrepancy decays like q^{-1/2} log² q,
/// which is far below both caps.
#[derive(Debug, Args)]
pub struct StatsArgs {
    #[arg(long, short)]
    pub input: PathBuf,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "discrepancy,chi2")]
    pub tests: Vec<TestName>,
    #[arg(long, default_value_t = 50)]
    pub bins: usize,
    /// Use only the first N values for the serial test.
    #[arg(long)]
    pub serial_points: Option<usize>,
    #[arg(long, value_enum, default_value = "overlapping")]
    pub pair_mode: PairModeArg,
    #[arg(long, default_value_t = 0.05)]
    pub max_discrepancy: f64,
    #[arg(long, default_value_t = 0.1)]
    pub max_serial: f64,
    /// Lower bound on the chi-square p-value.
    #[arg(long, default_value_t = 0.001)]
    pub chi2_min_p: f64,
    /// Upper bound on the chi-square p-value. Full-period sequences are
    /// permutations and fill every bin almost exactly, so their p-value is
    /// ~1; the default therefore only rejects the lower tail. Pass 0.999 for
    /// a two-sided band.
    #[arg(long, default_value_t = 1.0)]
    pub chi2_max_p: f64,
    /// Family of the points, required by the circle test.
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    /// Corner angle of the points, required by the circle test.
    #[arg(long)]
    pub rho: Option<f64>,
    /// Relative tolerance of the circle test.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}
