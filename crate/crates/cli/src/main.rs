//! `xorcnf`: translate XOR systems to CNF, measure propagation hardness,
//! generate benchmark families and check representations and proofs.
//!
//! Exit codes: 0 success, 1 semantic failure (a check did not pass, an
//! unsatisfiable system, a measured value other than `--expect`), 2 usage
//! or parse error, 3 a size cap was exceeded.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

mod cmd;
mod io;

#[derive(Parser, Debug)]
#[command(
    name = "xorcnf",
    version,
    about = "XOR constraints to CNF, and how well unit propagation works on the result"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Translate an XNF system into DIMACS CNF.
    Translate(TranslateArgs),
    /// Measure hardness, p-hardness, w-hardness, symmetric width or
    /// arc-consistency hardness of a DIMACS clause-set.
    Measure(MeasureArgs),
    /// Generate benchmark instances.
    Gen(GenArgs),
    /// Check a CNF against its source XNF system, or a refutation of it.
    Verify(VerifyArgs),
    /// Validate a resolution proof against a DIMACS clause-set.
    CheckProof(CheckProofArgs),
    /// Decide whether the incidence graph of a system or clause-set is
    /// acyclic (exit 1 if it is not).
    CheckAcyclic(CheckAcyclicArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Auto,
    X0,
    X1,
    X2,
    Xstar,
    Prime,
}

#[derive(Args, Debug)]
struct ConventionArgs {
    /// Read `x l1 .. lk 0` as l1 ⊕ .. ⊕ lk = 1 instead of the XOR-clause
    /// {l1, .., lk} (⊕ = 0).
    #[arg(long)]
    parity: bool,
}

#[derive(Args, Debug)]
struct TranslateArgs {
    /// XNF input; `-` or absent reads stdin.
    input: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodArg,
    /// Largest number of constraints for which `auto` uses X*.
    #[arg(long, env = "XORCNF_XSTAR_CAP", default_value_t = xorcnf_core::translate::DEFAULT_XSTAR_CAP)]
    xstar_cap: usize,
    /// Longest constraint allowed by the prime translation (default: the
    /// longest constraint of the input).
    #[arg(long)]
    k: Option<usize>,
    #[command(flatten)]
    convention: ConventionArgs,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("which").required(true)))]
struct MeasureArgs {
    /// DIMACS input; `-` or absent reads stdin.
    input: Option<PathBuf>,
    #[arg(long, group = "which")]
    hd: bool,
    #[arg(long, group = "which")]
    phd: bool,
    #[arg(long, group = "which")]
    whd: bool,
    #[arg(long, group = "which")]
    wid: bool,
    #[arg(long, group = "which")]
    ac: bool,
    /// `all`, `orig` (variables not declared by `c aux` comments) or a
    /// comma-separated variable list.
    #[arg(long, default_value = "all")]
    scope: String,
    /// Largest scope for the exhaustive sweep.
    #[arg(long, env = "XORCNF_CAP", default_value_t = xorcnf_core::measure::DEFAULT_SCOPE_CAP)]
    cap: usize,
    /// Evaluate this many random instantiations instead (a lower bound).
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print a JSON record instead of the one-line report.
    #[arg(long)]
    json: bool,
    /// Exit 1 unless the measured value equals this.
    #[arg(long)]
    expect: Option<usize>,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(subcommand)]
    family: GenFamily,
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum GenFamily {
    /// T_n, the X1 translation of the dipole pair (DIMACS).
    Tn { n: u32 },
    /// The linear-size resolution refutation of T_n (proof text).
    TnProof { n: u32 },
    /// The two constraints of the dipole with n edges (XNF).
    Dipole { n: u32 },
    /// A random system (XNF), determined by the seed.
    Random {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: u32,
        /// Longest constraint.
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        /// Generate a system with an acyclic incidence graph.
        #[arg(long)]
        acyclic: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The Tseitin system of a graph file (XNF).
    Tseitin { graph: PathBuf },
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("against").required(true)))]
struct VerifyArgs {
    /// The DIMACS clause-set under test.
    #[arg(long)]
    cnf: PathBuf,
    /// Check that the CNF represents this XNF system.
    #[arg(long, group = "against")]
    xnf: Option<PathBuf>,
    /// Check that this proof refutes the CNF.
    #[arg(long, group = "against")]
    proof: Option<PathBuf>,
    /// Compare on this many random assignments instead of all of them.
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    convention: ConventionArgs,
}

#[derive(Args, Debug)]
struct CheckProofArgs {
    proof: PathBuf,
    cnf: PathBuf,
    /// Accept axioms that are weakenings of input clauses.
    #[arg(long)]
    subsumed: bool,
}

#[derive(Args, Debug)]
struct CheckAcyclicArgs {
    /// XNF or DIMACS input; `-` or absent reads stdin.
    input: Option<PathBuf>,
    #[command(flatten)]
    convention: ConventionArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Translate(a) => cmd::translate(&a),
        Command::Measure(a) => cmd::measure(&a),
        Command::Gen(a) => cmd::gen(&a),
        Command::Verify(a) => cmd::verify(&a),
        Command::CheckProof(a) => cmd::check_proof(&a),
        Command::CheckAcyclic(a) => cmd::check_acyclic(&a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(cmd::exit_code(&e))
        }
    }
}
