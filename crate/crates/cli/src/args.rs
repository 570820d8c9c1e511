use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "foamcalc",
    version,
    about = "Tait colorings, web reduction and GF(2) foam evaluation"
)]
pub struct Cli {
    /// Print a JSON document with the inputs' sha256 instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for suites and sweeps.
    #[arg(long, global = true, env = "FOAMCALC_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Colorings, bridges and 2-factors of webs.
    #[command(subcommand)]
    Web(WebCmd),
    /// Faces and the reduction calculus of planar webs.
    #[command(subcommand)]
    Planar(PlanarCmd),
    /// Validation and bookkeeping of pre-foams.
    #[command(subcommand)]
    Foam(FoamCmd),
    /// Evaluation of closed foams and pairing ranks.
    #[command(subcommand)]
    Jflat(JflatCmd),
    /// The index formula.
    Index(IndexArgs),
    /// Cube complexes built from subset-indexed maps.
    #[command(subcommand)]
    Cube(CubeCmd),
    /// Dot algebras of the unknot and the theta web.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Property suites.
    Suite(SuiteArgs),
    /// The bundled corpus.
    #[command(subcommand)]
    Corpus(CorpusCmd),
}

#[derive(Debug, Args)]
pub struct FileArg {
    pub file: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum WebCmd {
    /// Number of Tait colorings.
    Tait(FileArg),
    /// Tait colorings up to permutation of the colors.
    Orbits(FileArg),
    Bridges(FileArg),
    TwoFactors(FileArg),
    /// Whether some 2-factor has only even cycles.
    O2(FileArg),
    /// Vertices meeting two edges of an eta flow.
    Eta {
        file: PathBuf,
        /// JSON object edge id -> 0 or 1.
        #[arg(long, conflicts_with = "edges")]
        flow: Option<PathBuf>,
        /// Comma-separated edges carrying 1.
        #[arg(long, value_delimiter = ',')]
        edges: Vec<String>,
    },
    /// Same as `planar reduce`.
    Reduce(ReduceArgs),
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub trace: bool,
    /// Choose applicable moves at random with this seed.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum PlanarCmd {
    Faces(FileArg),
    Reduce(ReduceArgs),
    /// Reduction value against the Tait count.
    Conjecture(ReduceArgs),
}

#[derive(Debug, Subcommand)]
pub enum FoamCmd {
    /// List invariant violations; closed foams and fragments are both accepted.
    Validate(FileArg),
    Euler(FileArg),
    Seams(FileArg),
    /// Glue two fragments along their boundary webs.
    Glue {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        matching: Option<PathBuf>,
        /// Write the closed foam here instead of printing it.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum JflatCmd {
    Eval {
        file: PathBuf,
        #[arg(long)]
        trace: bool,
        /// Also run every matching and cut order.
        #[arg(long)]
        all_choices: bool,
    },
    /// Rank of the pairing matrix between two directories of fragments.
    Rank {
        #[arg(long)]
        gens: PathBuf,
        #[arg(long)]
        cogens: PathBuf,
        #[arg(long)]
        matching: Option<PathBuf>,
    },
    Welldef(FileArg),
}

#[derive(Debug, Args)]
pub struct IndexArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub kappa: String,
    #[arg(long, default_value_t = 0)]
    pub b1: u32,
    #[arg(long, default_value_t = 0)]
    pub bplus: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub chi: i64,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub selfint: String,
    #[arg(long, default_value_t = 0)]
    pub tau: u32,
    #[arg(long)]
    pub dots: Option<u32>,
}

#[derive(Debug, Args)]
pub struct CubeArgs {
    /// Number of cube directions.
    #[arg(long)]
    pub n: u32,
    /// `SUBSET=FILE`, the subset written as `1,3` and the empty set as `0`.
    #[arg(long = "map", value_name = "SUBSET=FILE", required = true)]
    pub maps: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum CubeCmd {
    /// Check that the total differential squares to zero.
    Check(CubeArgs),
    Homology(CubeArgs),
    /// E1 dimensions by filtration level.
    E1 {
        #[arg(long)]
        n: u32,
        /// Homology dimensions of the base, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Kind {
    Unknot,
    Flag,
}

#[derive(Debug, Subcommand)]
pub enum AlgebraCmd {
    /// Pairing of two elements, or the Gram matrix of the basis.
    Pair {
        #[arg(long, value_enum)]
        kind: Kind,
        a: Option<String>,
        b: Option<String>,
    },
    /// Canonical form of a polynomial.
    Reduce {
        #[arg(long, value_enum)]
        kind: Kind,
        poly: String,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SuiteName {
    Relations,
    Welldef,
    Conjecture,
    Algebra,
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    #[arg(value_enum)]
    pub name: SuiteName,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random cases on top of the corpus.
    #[arg(long)]
    pub random: Option<usize>,
    /// Read the corpus from this directory instead of the built-in one.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum CorpusCmd {
    /// Write the bundled webs, foams and generators as JSON.
    Write { dir: PathBuf },
    /// Check that files in a directory parse and match the built-in corpus byte for byte.
    Check { dir: PathBuf },
}
