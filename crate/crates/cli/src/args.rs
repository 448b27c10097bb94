use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "minorforge", version, about = "Random star-contraction minors and clique-minor experiments")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Global {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of trials (command-specific default).
    #[arg(long, global = true)]
    pub trials: Option<u64>,
    /// Multiplier applied to the default formula for p.
    #[arg(long, global = true, default_value_t = 1.0)]
    pub scale: f64,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads for trial farms.
    #[arg(long, global = true, env = "MINORFORGE_THREADS")]
    #[serde(skip)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    /// Plain `u v` lines (only for `gen`).
    Edges,
}

/// Graph read from a file, or stdin when absent or `-`.
#[derive(Debug, Clone, Default, Args)]
pub struct Input {
    #[arg(value_name = "GRAPH")]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a graph.
    Gen(GenArgs),
    /// Contract branch sets and verify the resulting minor.
    Contract(ContractArgs),
    /// Cover half the vertices with Ramsey independent sets.
    Cover(CoverArgs),
    /// Spanning bipartite subgraph keeping half of every degree.
    MaxcutBipartite(InputOnly),
    /// Search for a K_{s,t} subgraph.
    FindKst(FindKstArgs),
    /// Build the anchored 3-path family from a root and check its claims.
    Paths(PathsArgs),
    /// Star-contraction minor of a K_{s,t}-free graph with witness pruning.
    PipelineKst(PipelineKstArgs),
    /// Star-contraction minor of a K_s-free graph followed by clique search.
    PipelineKs(PipelineKsArgs),
    /// Independent set or (heuristic) expansion certificate.
    Expand(ExpandArgs),
    /// Best-effort clique minor.
    DenseToClique(DenseArgs),
    /// Monte Carlo checks of activation and concentration bounds.
    Verify(VerifyArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Gen(_) => "gen",
            Command::Contract(_) => "contract",
            Command::Cover(_) => "cover",
            Command::MaxcutBipartite(_) => "maxcut-bipartite",
            Command::FindKst(_) => "find-kst",
            Command::Paths(_) => "paths",
            Command::PipelineKst(_) => "pipeline-kst",
            Command::PipelineKs(_) => "pipeline-ks",
            Command::Expand(_) => "expand",
            Command::DenseToClique(_) => "dense-to-clique",
            Command::Verify(_) => "verify",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GenKind {
    Gnp,
    Regular,
    Blowup,
    Incidence,
    Petersen,
    Heawood,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub kind: GenKind,
    #[arg(long)]
    pub n: Option<usize>,
    /// Edge probability for gnp.
    #[arg(long)]
    pub p: Option<f64>,
    /// Degree for regular.
    #[arg(long)]
    pub d: Option<usize>,
    /// Part size for blowup.
    #[arg(long)]
    pub k: Option<usize>,
    /// Field order for incidence.
    #[arg(long)]
    pub q: Option<usize>,
    /// Base graph for blowup: cycle:N, complete:N, path:N, petersen, heawood.
    #[arg(long)]
    pub base: Option<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct InputOnly {
    #[command(flatten)]
    #[serde(skip)]
    pub input: Input,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ContractArgs {
    #[command(flatten)]
    #[serde(skip)]
    pub input: Input,
    /// Branch sets: a JSON array of arrays, or one whitespace-separated set per line.
    #[arg(long)]
    pub parts: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CoverArgs {
    #[command(flatten)]
    #[serde(skip)]
    pub input: Input,
    /// The input is assumed K_s-free.
    #[arg(long)]
    pub s: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FindKstArgs {
    #[command(flatten)]
    #[serde(skip)]
    pub input: Input,
    #[arg(long)]
    pub s: usize,
    #[arg(long)]
    pub t: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PathsArgs {
    #[command(flatten)]
    #[serde(skip)]
    pub input: Input,
    #[arg(long)]
    pub root: usize,
    #[arg(long, default_value_t = 3)]
    pub s: usize,
    /// Degree bound for the claims (default: maximum degree).
    #[arg(long)]
    pub d: Option<f64>,
    /// Expansion constant; enables the size claims.
    #[arg(long)]
    pub d_prime: Option<f64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PipelineKstArgs {
    #[command(flatten)]
    #[serde(skip)]
    pub input: Input,
    #[arg(long, default_value_t = 2)]
    pub s: usize,
    #[arg(long, default_value_t = 2)]
    pub t: usize,
    /// Fixed red probability instead of the formula.
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, default_value_t = minorforge::pipelines::DEFAULT_CLIQUE_BUDGET)]
    pub budget: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PipelineKsArgs {
    #[command(flatten)]
    #[serde(skip)]
    pub input: Input,
    #[arg(long, default_value_t = 3)]
    pub s: usize,
    #[arg(long, default_value_t = 0.05)]
    pub eps: f64,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, default_value_t = minorforge::pipelines::DEFAULT_CLIQUE_BUDGET)]
    pub budget: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ExpandArgs {
    #[command(flatten)]
    #[serde(skip)]
    pub input: Input,
    #[arg(long)]
    pub d: f64,
    #[arg(long)]
    pub eps: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DenseArgs {
    #[command(flatten)]
    #[serde(skip)]
    pub input: Input,
    #[arg(long, default_value_t = minorforge::pipelines::DEFAULT_CLIQUE_BUDGET)]
    pub budget: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Activation,
    Coactivation,
    Chernoff,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    /// Host graph; defaults to a seeded 16-regular graph on 64 vertices
    /// (activation suites) or 100 isolated vertices (chernoff).
    #[command(flatten)]
    #[serde(skip)]
    pub input: Input,
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Red probability (default 0.25 for activation suites, 0.3 for chernoff).
    #[arg(long)]
    pub p: Option<f64>,
    /// Vertex count for chernoff without an input graph.
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    /// Internal vertices per coactivation family.
    #[arg(long, default_value_t = 4)]
    pub m: usize,
}
