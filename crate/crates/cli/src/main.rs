mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use output::{emit, Failure};

/// Constant Toffoli-depth catalytic z-rotations over GF(2^n).
#[derive(Parser, Debug)]
#[command(name = "catrot", version, about, long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Find or certify a primitive polynomial.
    Primpoly(PrimpolyArgs),
    /// Synthesize a catalytic rotation circuit.
    Synth(SynthArgs),
    /// Simulate a rotation and check the catalysis contract.
    Verify(VerifyArgs),
    /// Toffoli count and depth, with and without a parallelism budget.
    Resources(ResourcesArgs),
    /// Prepare catalyst states.
    Prep(PrepArgs),
}

/// Field selection shared by most commands. `--poly` wins; a bare degree uses
/// the built-in table; with neither, n = 3.
#[derive(Args, Debug, Clone)]
struct FieldArgs {
    /// Field degree n.
    n: Option<u32>,
    /// Primitive polynomial, e.g. "x^3 + x + 1".
    #[arg(long)]
    poly: Option<String>,
}

#[derive(Args, Debug)]
struct PrimpolyArgs {
    n: Option<u32>,
    /// Upper bound on the number of nonzero terms.
    #[arg(long)]
    max_terms: Option<u32>,
    /// Certify this polynomial instead of searching.
    #[arg(long, value_name = "POLY")]
    check: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Fixed,
    Variable,
}

#[derive(Args, Debug)]
struct SynthArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// `b=K` for the grid angle 2 pi K / (2^n - 1), or `theta=X` (bare X also
    /// accepted) to round X radians onto that grid.
    #[arg(long, default_value = "b=1")]
    angle: String,
    #[arg(long, value_enum, default_value_t = Mode::Fixed)]
    mode: Mode,
    /// Run the variable-angle kickbacks in parallel.
    #[arg(long)]
    parallel: bool,
    /// Catalyst family index: the variable network uses psi_{a 2^t}.
    #[arg(long, default_value_t = 1)]
    a: u64,
    /// Write the circuit in text form.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Eigenstate index in fixed mode, target multiple b in variable mode.
    #[arg(long, default_value_t = 1)]
    k: u64,
    /// Control amplitudes, e.g. "0.6,0.8i" or "1,0".
    #[arg(long, value_name = "ALPHA,BETA")]
    alpha_beta: Option<String>,
    #[arg(long, value_enum, default_value_t = Mode::Fixed)]
    mode: Mode,
    #[arg(long, default_value_t = 1)]
    a: u64,
    #[arg(long)]
    parallel: bool,
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
}

#[derive(Args, Debug)]
struct ResourcesArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Toffoli gates allowed per layer.
    #[arg(long)]
    kappa: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Frobenius,
    Dlog,
    Qpe,
}

#[derive(Args, Debug)]
struct PrepArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, default_value_t = 1)]
    k: u64,
    #[arg(long, default_value_t = 1)]
    copies: usize,
    #[arg(long, value_enum, default_value_t = Method::Frobenius)]
    method: Method,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Counting-register size for phase estimation; defaults to n + 3.
    #[arg(long)]
    t_bits: Option<u32>,
    /// Directory for `.qstv` state files.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return emit(Err(Failure::Usage(e.to_string().trim_end().to_string()))),
    };
    emit(match cli.command {
        Command::Primpoly(args) => commands::primpoly(args),
        Command::Synth(args) => commands::synth(args),
        Command::Verify(args) => commands::verify(args),
        Command::Resources(args) => commands::resources(args),
        Command::Prep(args) => commands::prep(args),
    })
}
