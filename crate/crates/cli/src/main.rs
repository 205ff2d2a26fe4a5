//! `conformal-forge`: axiom checks, derivation-space solving and map checks
//! for `.lcsa` files.
//!
//! Exit codes: 0 when everything checked holds, 1 when a mathematical check
//! fails (or compared spaces differ), 2 for usage, input or consistency
//! errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "conformal-forge", version, about = "Exact computations with finite Lie conformal superalgebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct AlgebraArgs {
    /// Source file in the .lcsa format
    file: PathBuf,
    /// Name of the algebra inside the file
    #[arg(long)]
    algebra: String,
}

#[derive(Args)]
struct Output {
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check skew-symmetry and the Jacobi identity
    Check {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Solve for a degree-bounded basis of a derivation space
    Solve {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// cder, ctder, tc, tqc, ztder, gctder, abcd:A,B,C,D or phipsi:PHI,PSI
        #[arg(long)]
        space: String,
        #[arg(long, default_value = "even")]
        parity: String,
        /// Bound on the total degree in ∂ and x of every image coefficient
        #[arg(long, default_value_t = 2)]
        deg: u16,
        /// Write the basis file here
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        fmt: Output,
    },
    /// Inner derivations ad(∂^k e) within the degree window
    Inner {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, default_value = "even")]
        parity: String,
        #[arg(long, default_value_t = 2)]
        deg: u16,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        fmt: Output,
    },
    /// Decide whether two basis files span the same space
    Compare {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        fmt: Output,
    },
    /// Intersect the spans of two basis files
    Intersect {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        fmt: Output,
    },
    /// Elements of the first space whose gc-bracket with every basis map of the second vanishes
    Centralizer {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        fmt: Output,
    },
    /// Check a map from the file against a predicate
    Checkmap {
        file: PathBuf,
        #[arg(long)]
        map: String,
        /// hom, antihom, triplehom, automorphism, cder, ctder, tc, tqc, ztder,
        /// abcd:A,B,C,D, gctder, intertwiner, orthogonal, hom-intertwiner,
        /// decompose or phipsi:PHI,PSI
        #[arg(long)]
        kind: String,
        /// Relating map for gctder
        #[arg(long)]
        tau: Option<String>,
        /// Companion map for intertwiner, orthogonal, hom-intertwiner and decompose
        #[arg(long)]
        delta: Option<String>,
        #[command(flatten)]
        fmt: Output,
    },
    /// Verify symbolically that generator tuples suffice for the triple identities
    Selftest {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, default_value_t = 1)]
        deg: u16,
        #[command(flatten)]
        fmt: Output,
    },
    /// Central elements up to a ∂-degree
    Center {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, default_value_t = 2)]
        deg: u16,
    },
    /// Print the parsed file in normal form
    Print { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
