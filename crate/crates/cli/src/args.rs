use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "calabi",
    version,
    about = "Quantum homology algebras and Calabi quasimorphisms on the 2-sphere"
)]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, env = "CALABI_SEED", default_value_t = 42)]
    pub seed: u64,

    /// Write the JSON report here instead of stdout.
    #[arg(short, long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Computations in a quantum homology algebra.
    Algebra(AlgebraArgs),
    /// The quasimorphism on an autonomous Hamiltonian H = w∘F.
    Mu(MuArgs),
    /// The μ_ε families on the annulus and on the disk.
    Family(FamilyArgs),
    /// The measured Reeb tree of a field.
    Tree(TreeArgs),
    /// Writes a built-in mesh with vertex values as JSON.
    Fixture(FixtureArgs),
}

#[derive(Debug, Args)]
pub struct AlgebraArgs {
    /// Built-in name (S2, CP<n>, S2xS2, CP2blowup, S2classical) or a JSON
    /// definition file.
    pub source: String,

    /// Override the rationality constant Ω, as "p/q".
    #[arg(long, value_name = "RATIONAL")]
    pub omega: Option<String>,

    #[command(subcommand)]
    pub action: AlgebraAction,
}

#[derive(Debug, Subcommand)]
pub enum AlgebraAction {
    /// Products of basis elements.
    Table,
    /// The Euler class.
    Euler,
    /// The inverse of an element, e.g. "P" or "euler".
    Invert { element: String },
    /// Semisimplicity verdict with its witness.
    Semisimple,
    /// Runs the full suite of algebra and valuation checks.
    Props {
        /// Random element pairs for the characteristic-exponent laws.
        #[arg(long, default_value_t = 1000)]
        pairs: usize,
        /// Random elements for the spectral invariant rules and the
        /// valuation bound.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    /// Vertex values, whitespace separated, one per mesh vertex.
    #[arg(long, value_name = "FILE", conflicts_with = "height")]
    pub values: Option<PathBuf>,

    /// Use the height function z/2 as vertex values.
    #[arg(long)]
    pub height: bool,
}

#[derive(Debug, Args)]
pub struct MuArgs {
    /// Mesh files (.off or JSON) or `fixture:NAME[:LEVEL]`.
    #[arg(required = true, value_name = "MESH")]
    pub meshes: Vec<String>,

    #[command(flatten)]
    pub field: FieldArgs,

    /// Profile w as inline JSON, a JSON file, or "id".
    #[arg(long, default_value = "id")]
    pub profile: String,

    /// Subtract the mean so that F has zero integral.
    #[arg(long)]
    pub normalize: bool,

    /// Report the lower bound |μ| / ‖H‖ on ζ.
    #[arg(long)]
    pub zeta: bool,

    /// Check membership of F in the class 𝒲.
    #[arg(long = "check-w", alias = "check-W")]
    pub check_w: bool,

    /// Measure tolerance of the bisection condition.
    #[arg(long, default_value_t = calabi_core::calabi::EPS_BISECT, value_parser = positive)]
    pub eps_bisect: f64,

    /// Also estimate the integral term from this many random points.
    #[arg(long, value_name = "N")]
    pub oracle_samples: Option<usize>,

    /// Worker threads for several meshes.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// annulus or disk.
    #[arg(long)]
    pub variant: String,

    /// Comma-separated ε values.
    #[arg(long, value_delimiter = ',', required = true)]
    pub eps: Vec<f64>,

    /// JSON file holding an array of profiles.
    #[arg(
        long,
        value_name = "FILE",
        conflicts_with = "bumps",
        required_unless_present = "bumps"
    )]
    pub profiles: Option<PathBuf>,

    /// Use one tent of this half width around each probe point.
    #[arg(long, value_name = "HALF_WIDTH")]
    pub bumps: Option<f64>,

    /// Report singular values and numerical rank.
    #[arg(long)]
    pub rank: bool,

    /// Relative tolerance on singular values.
    #[arg(long, default_value_t = calabi_core::calabi::RANK_TOL, value_parser = positive)]
    pub rank_tol: f64,
}

#[derive(Debug, Args)]
pub struct TreeArgs {
    /// Mesh file (.off or JSON) or `fixture:NAME[:LEVEL]`.
    pub mesh: String,

    #[command(flatten)]
    pub field: FieldArgs,

    /// Write (edge, level, cumulative measure) rows here.
    #[arg(long, value_name = "FILE")]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FixtureArgs {
    /// height, two-bump, three-bump, perturbed-height, octahedron or torus.
    pub name: String,

    /// Subdivision level of the round sphere.
    #[arg(long, default_value_t = 4)]
    pub level: u32,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("expected a positive number, got `{s}`")),
    }
}
