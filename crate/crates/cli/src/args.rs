use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Build, enumerate, transform and verify boundary K-matrices exactly.
#[derive(Debug, Parser)]
#[command(name = "reflectk", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the matrix of one solution class as JSON.
    Gen(GenArgs),
    /// List every class label at a given size, with counts.
    Enumerate(EnumerateArgs),
    /// Check a matrix against one of the identities.
    Verify(VerifyArgs),
    /// Apply equivalence moves to a solution and re-verify the result.
    Orbit(OrbitArgs),
    /// Verify every canonical solution at a given size.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Sym,
    Tri,
    Twisted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Symbolic,
    Sampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FlavorArg {
    Re,
    Ctre,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EquationArg {
    Ybe,
    Re,
    Tre,
    Ctre,
    Unitary,
    Regular,
    ConstIdentities,
    ConstTwisted,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write to this file (atomically) instead of stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Check {
    #[arg(long, value_enum, default_value_t = ModeArg::Symbolic)]
    pub mode: ModeArg,
    /// Sample points for `--mode sampled`.
    #[arg(long, default_value_t = 2)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub n: usize,
    /// Symmetric family: number of leading diagonal entries.
    #[arg(long)]
    pub l: Option<usize>,
    /// Symmetric family: end of the cross block.
    #[arg(long)]
    pub r: Option<usize>,
    /// Triangular family: size of the leading block.
    #[arg(long)]
    pub m: Option<usize>,
    /// Triangular family: involution in cycle notation, e.g. `(14)(23)` or `(1,10)`.
    #[arg(long)]
    pub sigma: Option<String>,
    /// Triangular family: oriented pairs carrying the unit entry, e.g. `14,32`.
    /// Defaults to the upper orientation of every 2-cycle.
    #[arg(long)]
    pub eps: Option<String>,
    /// Twisted family kind.
    #[arg(long)]
    pub kind: Option<String>,
    /// Symmetric family: emit the constant pair (G, Q) instead of K(u).
    #[arg(long = "const")]
    pub constant: bool,
    /// Substitutions `name=value`, applied after construction.
    #[arg(long, num_args = 1.., value_name = "NAME=VALUE")]
    pub set: Vec<String>,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    pub n: usize,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Matrix JSON (a constant pair for `const-identities`); omit for `ybe`.
    pub file: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub equation: EquationArg,
    /// Size for `ybe`; otherwise taken from the matrix.
    #[arg(long)]
    pub n: Option<usize>,
    #[command(flatten)]
    pub check: Check,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct OrbitArgs {
    /// Input matrix JSON.
    pub file: PathBuf,
    /// JSON list of moves, or the output of an earlier orbit run to replay.
    pub moves: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub flavor: FlavorArg,
    /// Draw a random composition of this many moves instead of reading a file.
    #[arg(long)]
    pub random: Option<usize>,
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
    #[command(flatten)]
    pub check: Check,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    pub n: usize,
    #[command(flatten)]
    pub check: Check,
    #[command(flatten)]
    pub out: Output,
}
