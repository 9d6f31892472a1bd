use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "coarse-embed", version, about = "Uniform embeddings with certified distortion bounds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated graph in edge-list format.
    Gen(GenArgs),
    /// Embed a finite metric space and certify its distortion bounds.
    Embed(EmbedArgs),
    /// Build the group cocycle and certify it.
    Group(GroupArgs),
    /// Sample a random regular graph, measure its spectrum and run the embedding pipeline.
    Expander(ExpanderArgs),
    /// Run property suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphKind {
    Path,
    Cycle,
    Grid,
    Complete,
    Regular,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub kind: GraphKind,
    /// Vertex count (all kinds except grid).
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub rows: Option<usize>,
    #[arg(long)]
    pub cols: Option<usize>,
    /// Degree for `regular`.
    #[arg(long, default_value_t = 3)]
    pub d: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Where a metric space comes from: an edge list or a CSV distance matrix.
#[derive(Debug, Args, Clone, Default)]
pub struct SpaceArgs {
    #[arg(long, conflicts_with = "matrix")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub matrix: Option<PathBuf>,
}

impl SpaceArgs {
    pub fn is_given(&self) -> bool {
        self.input.is_some() || self.matrix.is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    /// Truncation depth; defaults to the diameter.
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub basepoint: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value_t = coarse_embed::embed::CERTIFICATE_TOLERANCE)]
    pub tolerance: f64,
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    /// `z:d`, `free:k`, `sym:k` or `dihedral:k`.
    #[arg(long)]
    pub group: String,
    #[arg(long, default_value_t = 2)]
    pub depth: usize,
    /// Random `(s, t)` pairs for the cocycle and equivariance checks.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest word length on the properness curve; defaults to `2·depth² + 1`.
    #[arg(long)]
    pub lmax: Option<u32>,
    #[arg(long, default_value_t = coarse_embed::group::DEFAULT_BALL_CAP)]
    pub cap: usize,
    #[arg(long, default_value_t = coarse_embed::group::COCYCLE_TOLERANCE)]
    pub tolerance: f64,
}

#[derive(Debug, Args)]
pub struct ExpanderArgs {
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    #[arg(long, default_value_t = 3)]
    pub d: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Comma-separated sizes for the family experiment, e.g. `50,100,200,400`.
    #[arg(long, value_delimiter = ',')]
    pub family_sizes: Vec<usize>,
    /// Writes the edge list and the JSON report here.
    #[arg(long)]
    pub output_dir: Option<PathBuf>,
    /// Eigen-residual tolerance for power iteration.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Exponent selection and the ℓ^p sandwich on random inputs.
    Lemma1,
    /// Tent conditions: sup norm, support, Lipschitz.
    Lemma2,
    /// Per-block schedule inequality on every pair.
    Schedule,
    /// Upper distortion bound.
    Upper,
    /// Lower distortion steps.
    Lower,
    /// Cocycle identity, equivariance and properness on the built-in groups.
    Group,
    /// Translated group tents: `‖s·f_n − f_n‖_∞ <= 1/n`.
    Lemma3,
    /// Graph metrics and norms against brute-force and exact references.
    Oracle,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Space to check; the built-in corpus is used when absent.
    #[command(flatten)]
    pub space: SpaceArgs,
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
}
