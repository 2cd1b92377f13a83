//! `deflation`: rewrite two-qubit circuits into fewer CNOTs.
//!
//! Exit codes: 0 on success, 1 on bad input, 2 when the result fails its
//! numerical verification.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use deflation_core::{ConjugationKind, DeflationInput, EntanglerForm};

use commands::{DeflateArgs, Side};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] deflation_core::Error),
    #[error("verification failed: max_err={max_err:.16e} exceeds tolerance {tol:e}")]
    Verification { max_err: f64, tol: f64 },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::Core(_) => 1,
            CliError::Verification { .. } => 2,
        }
    }
}

#[derive(Parser)]
#[command(name = "deflation", version, about = "Two-qubit circuit rewrites with fewer CNOTs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rewrite two controlled gates as two CNOTs.
    ///
    /// Either give the four angles of the core identity, or a circuit JSON
    /// file with exactly two controlled gates and --side.
    Deflate {
        circuit: Option<PathBuf>,
        #[arg(long, value_enum)]
        side: Option<SideArg>,
        #[arg(long, allow_negative_numbers = true)]
        theta_l: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        beta: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        beta_prime: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        theta_r: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rewrite the pattern CNOT (b, g) CNOT a CNOT with two CNOTs.
    CloseBreach {
        #[arg(long)]
        b_file: PathBuf,
        #[arg(long)]
        g_file: PathBuf,
        #[arg(long)]
        a_file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Synthesise a 4x4 unitary (matrix text or circuit JSON) with three
    /// entangling gates.
    Synth {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = GateArg::Cz)]
        gate: GateArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the randomised verification suite.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Plain text instead of JSON.
        #[arg(long)]
        text: bool,
    },
    /// Print the Pauli conjugation tables.
    Tables {
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Same,
    Opposite,
}

#[derive(Clone, Copy, ValueEnum)]
enum GateArg {
    Cz,
    Cnot,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    MagicDagger,
    Magic,
    CnotDown,
    CnotUp,
}

impl From<KindArg> for ConjugationKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::MagicDagger => ConjugationKind::MagicDagger,
            KindArg::Magic => ConjugationKind::Magic,
            KindArg::CnotDown => ConjugationKind::CnotDown,
            KindArg::CnotUp => ConjugationKind::CnotUp,
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Deflate {
            circuit,
            side,
            theta_l,
            beta,
            beta_prime,
            theta_r,
            out,
        } => {
            let given = [theta_l, beta, beta_prime, theta_r];
            let angles = match given {
                [Some(tl), Some(b), Some(bp), Some(tr)] => Some(DeflationInput::new(tl, b, bp, tr)),
                [None, None, None, None] => None,
                _ => return Err(CliError::Input("all four angle flags are required together".into())),
            };
            let side = side.map(|s| match s {
                SideArg::Same => Side::Same,
                SideArg::Opposite => Side::Opposite,
            });
            commands::deflate(&DeflateArgs {
                angles,
                circuit,
                side,
                out,
            })
        }
        Command::CloseBreach {
            b_file,
            g_file,
            a_file,
            out,
        } => commands::close_breach_cmd(&b_file, &g_file, &a_file, out.as_deref()),
        Command::Synth { input, gate, out } => {
            let form = match gate {
                GateArg::Cz => EntanglerForm::Cz,
                GateArg::Cnot => EntanglerForm::Cnot,
            };
            commands::synth(&input, form, out.as_deref())
        }
        Command::Verify { seed, trials, text } => commands::verify(seed, trials, text),
        Command::Tables { kind } => commands::tables(kind.map(Into::into)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
