use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Trace De Bruijn sequences, strips and tori over finite fields.
#[derive(Debug, Parser)]
#[command(name = "dbtorus", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Primitive moduli and field summaries.
    #[command(subcommand)]
    Field(FieldCmd),
    /// One-dimensional trace sequences and strips.
    #[command(subcommand)]
    Seq(SeqCmd),
    /// Two-dimensional tori.
    #[command(subcommand)]
    Torus(TorusCmd),
    /// Sampling patterns.
    #[command(subcommand)]
    Pattern(PatternCmd),
    /// Update rules for shifted patterns.
    #[command(subcommand)]
    Update(UpdateCmd),
    /// Recover the torus position of an observed value pattern.
    Decode(DecodeArgs),
    /// N-dimensional tori.
    #[command(subcommand)]
    Ntorus(NtorusCmd),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Pbm,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    /// Characteristic.
    #[arg(short = 'p', default_value_t = 2)]
    pub p: u32,
    /// Extension degree.
    #[arg(short = 'n')]
    pub n: Option<usize>,
    /// Modulus coefficients, constant term first (default: smallest primitive).
    #[arg(long)]
    pub modulus: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct TorusArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Rows (defaults to (p^n - 1) / t).
    #[arg(short = 's')]
    pub s: Option<usize>,
    /// Columns (defaults to (p^n - 1) / s).
    #[arg(short = 't')]
    pub t: Option<usize>,
    /// Linear form x -> tr(lambda x): packed index, `pow:k` or `poly:[..]`.
    #[arg(long, default_value = "1")]
    pub lambda: String,
    /// Load the torus from a text or JSON torus file instead.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum FieldCmd {
    /// Print the default primitive modulus.
    Find {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Summarise a field.
    Describe {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Clone, Args)]
pub struct SeqArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Degree of the symbol field GF(p^m).
    #[arg(short = 'm', default_value_t = 1)]
    pub m: usize,
    #[arg(long, default_value = "1")]
    pub lambda: String,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Subcommand)]
pub enum SeqCmd {
    /// The punctured sequence tr(lambda alpha^i) over GF(p^m).
    Generate(SeqArgs),
    /// The sequence with one zero inserted so every window occurs.
    Lift(SeqArgs),
    /// Symbols expanded into m rows over GF(p).
    Strip {
        #[command(flatten)]
        seq: SeqArgs,
        /// Lift before expanding.
        #[arg(long)]
        full: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum TorusCmd {
    /// The s x t value grid.
    Generate {
        #[command(flatten)]
        torus: TorusArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Label every column as zero or a shift of the subfield sequence.
    Classify {
        #[command(flatten)]
        torus: TorusArgs,
        /// Subfield degree with s = p^m - 1 (inferred when omitted).
        #[arg(short = 'm')]
        m: Option<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// The grid extended so every pattern translate reads without wraparound.
    Extend {
        #[command(flatten)]
        torus: TorusArgs,
        #[arg(long)]
        pattern: String,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum PatternCmd {
    /// Rank, basis test and exhaustive sampling check.
    Check {
        #[command(flatten)]
        torus: TorusArgs,
        /// `kronecker:M`, `cells:i,j;i,j;...` or a pattern file.
        #[arg(long)]
        pattern: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// The m x (n/m) rectangle.
    Kronecker {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(short = 'm')]
        m: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Place a translate of one pattern next to another.
    Extend {
        #[command(flatten)]
        torus: TorusArgs,
        #[arg(long)]
        pattern: String,
        /// Pattern to translate (defaults to --pattern).
        #[arg(long = "with")]
        with: Option<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Grow an independent pattern into a basis by repeated translation.
    Build {
        #[command(flatten)]
        torus: TorusArgs,
        #[arg(long)]
        pattern: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Random subspace pairs V, W with a z such that V and zW meet only in 0.
    Lemma {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum UpdateCmd {
    /// Coefficients taking the pattern values at x to values at x*y.
    Matrix {
        #[command(flatten)]
        torus: TorusArgs,
        #[arg(long)]
        pattern: String,
        /// Row and column shift `di,dj`; (0,1) is one column right.
        #[arg(long, allow_hyphen_values = true)]
        shift: String,
        /// Only the cells not covered by the shifted pattern.
        #[arg(long, conflicts_with = "target")]
        new_cells: bool,
        /// Output cells, in the frame of --pattern.
        #[arg(long)]
        target: Option<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct DecodeArgs {
    #[command(flatten)]
    pub torus: TorusArgs,
    #[arg(long)]
    pub pattern: String,
    /// Observed digits in pattern order, comma separated.
    #[arg(long)]
    pub values: String,
    /// Look the values up in an exhaustive table instead.
    #[arg(long)]
    pub table: bool,
    /// Print the sampling certificate as JSON and exit.
    #[arg(long)]
    pub certificate: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct NtorusArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Pairwise coprime dimensions multiplying to p^n - 1.
    #[arg(long)]
    pub dims: String,
    #[arg(long, default_value = "1")]
    pub lambda: String,
}

#[derive(Debug, Subcommand)]
pub enum NtorusCmd {
    /// The tensor in flat row-major form.
    Generate {
        #[command(flatten)]
        nt: NtorusArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Basis test and exhaustive sampling check for an N-index pattern.
    Check {
        #[command(flatten)]
        nt: NtorusArgs,
        /// `greedy`, `cells:i,j,k;...` or a file of index tuples.
        #[arg(long, default_value = "greedy")]
        pattern: String,
        #[command(flatten)]
        out: OutputArgs,
    },
}
