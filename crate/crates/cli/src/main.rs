use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rll_cli::commands::{self, exit, Outcome};
use rll_core::semantics::Solver;

/// Right-linear lattice expressions: membership, proof checking and
/// inclusion.
#[derive(Parser)]
#[command(name = "rll", version)]
struct Cli {
    /// Print one JSON object instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical form of an expression or sequent.
    Parse {
        #[arg(long, default_value = "ab")]
        alphabet: String,
        #[arg(long, required_unless_present = "sequent", conflicts_with = "sequent")]
        expr: Option<String>,
        #[arg(long)]
        sequent: Option<String>,
    },
    /// Decide whether an ultimately periodic word is in a language.
    Member {
        #[arg(long, default_value = "ab")]
        alphabet: String,
        /// A word `stem(loop)^w`.
        #[arg(long)]
        word: String,
        #[arg(long)]
        expr: String,
        #[arg(long, value_enum, default_value_t = SolverArg::Zielonka)]
        solver: SolverArg,
    },
    /// Check a cyclic proof file.
    Check { file: PathBuf },
    /// Prove a guarded sequent or find a countermodel.
    Decide {
        #[arg(long, default_value = "ab")]
        alphabet: String,
        #[arg(long)]
        sequent: String,
        /// Write the proof here when one is found.
        #[arg(long)]
        emit_proof: Option<PathBuf>,
    },
    /// Print the complement of an expression.
    Complement {
        #[arg(long, default_value = "ab")]
        alphabet: String,
        #[arg(long)]
        expr: String,
    },
    /// Print the alternating parity automaton of an expression.
    ExportApa {
        #[arg(long, default_value = "ab")]
        alphabet: String,
        #[arg(long)]
        expr: String,
        /// Graphviz output.
        #[arg(long)]
        dot: bool,
    },
    /// Fixture corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Run the acceptance checks over the corpus.
    Run {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// proofs, decide, complement, membership, soundness, structure, or a criterion number.
        #[arg(long)]
        filter: Option<String>,
        /// Manifest path; defaults to the shipped corpus.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SolverArg {
    Zielonka,
    Spm,
}

fn run(cli: Cli) -> Outcome {
    let json = cli.json;
    match cli.command {
        Command::Parse { alphabet, expr, sequent } => {
            commands::parse_cmd(&alphabet, expr.as_deref(), sequent.as_deref(), json)
        }
        Command::Member { alphabet, word, expr, solver } => {
            let solver = match solver {
                SolverArg::Zielonka => Solver::Zielonka,
                SolverArg::Spm => Solver::ProgressMeasures,
            };
            commands::member_cmd(&alphabet, &word, &expr, solver, json)
        }
        Command::Check { file } => commands::check_cmd(&file, json),
        Command::Decide { alphabet, sequent, emit_proof } => {
            commands::decide_cmd(&alphabet, &sequent, emit_proof.as_deref(), json)
        }
        Command::Complement { alphabet, expr } => commands::complement_cmd(&alphabet, &expr, json),
        Command::ExportApa { alphabet, expr, dot } => commands::export_apa_cmd(&alphabet, &expr, dot, json),
        Command::Corpus { action: CorpusAction::Run { seed, filter, corpus } } => {
            commands::corpus_run_cmd(corpus.as_deref(), seed, filter.as_deref(), json)
        }
    }
}

fn main() -> ExitCode {
    let outcome = match Cli::try_parse() {
        Ok(cli) => run(cli),
        Err(e) if !e.use_stderr() => Outcome { code: exit::OK, stdout: e.to_string(), stderr: String::new() },
        Err(e) => Outcome { code: exit::USAGE, stdout: String::new(), stderr: e.render().to_string() },
    };
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
