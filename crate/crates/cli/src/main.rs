use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use realspin_core::linalg::{DEFAULT_TOL, TOL_ENV};
use realspin_core::Error;

mod commands;
mod report;

use commands::CliffordOp;

/// Exit status for malformed arguments or input files.
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "realspin", version, about = "Exact Clifford, Spin^c, genus and Mackey computations")]
struct Cli {
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Tolerance for floating-point checks (default from REALSPIN_TOL, else 1e-9).
    #[arg(long, global = true)]
    tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Arithmetic in CCl(p,q).
    Clifford {
        #[arg(value_enum)]
        op: CliffordOp,
        /// `p,q`
        #[arg(long)]
        signature: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: Option<String>,
    },
    /// Lift a rotation matrix to Spin(n).
    SpinLift {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Canonical lift of a unitary matrix to Spin^c(2n).
    PhiLift {
        #[arg(long)]
        unitary: PathBuf,
    },
    /// A-hat genus of a product of projective spaces or of Pontryagin data.
    Ahat {
        #[arg(long, conflicts_with = "pontryagin", required_unless_present = "pontryagin")]
        manifold: Option<String>,
        #[arg(long)]
        pontryagin: Option<PathBuf>,
    },
    /// Integrality obstruction for a genus value. Exit 0 when obstructed, 2 on a witness.
    Obstruction {
        #[arg(long, allow_hyphen_values = true)]
        genus: String,
    },
    /// The full obstruction chain for CP2. Exit 0 when obstructed, 2 otherwise.
    Theorem {
        /// Replace the computed genus of CP2.
        #[arg(long, allow_hyphen_values = true)]
        genus: Option<String>,
    },
    /// Check the Mackey axioms of a presentation file.
    Mackey {
        #[arg(long)]
        presentation: PathBuf,
    },
    /// Seeded property suites.
    Verify {
        /// clifford, pin-spin, genus, mackey, functional-calculus or all
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
}

fn tolerance(flag: Option<f64>) -> Result<f64, String> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var(TOL_ENV) {
            Ok(s) => s.trim().parse().map_err(|_| format!("{TOL_ENV}={s} is not a number"))?,
            Err(_) => DEFAULT_TOL,
        },
    };
    if !(tol.is_finite() && tol > 0.0) {
        return Err(format!("tolerance must be positive and finite, got {tol}"));
    }
    Ok(tol)
}

fn run(cli: Cli) -> Result<report::Outcome, Error> {
    let tol = tolerance(cli.tol).map_err(Error::Parse)?;
    match cli.command {
        Command::Clifford { op, signature, a, b } => commands::clifford(op, &signature, &a, b.as_deref()),
        Command::SpinLift { matrix } => commands::spin_lift_cmd(&matrix, tol),
        Command::PhiLift { unitary } => commands::phi_lift_cmd(&unitary, tol),
        Command::Ahat { manifold, pontryagin } => commands::ahat(manifold.as_deref(), pontryagin.as_deref()),
        Command::Obstruction { genus } => commands::obstruction(&genus),
        Command::Theorem { genus } => commands::theorem(genus.as_deref()),
        Command::Mackey { presentation } => commands::mackey(&presentation),
        Command::Verify { suite, seed, cases } => commands::verify(&suite, seed, cases, tol),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&out.report).expect("reports serialize"));
            } else {
                print!("{}", out.human);
            }
            ExitCode::from(out.exit)
        }
        Err(Error::Verification(msg)) => {
            eprintln!("error: verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
