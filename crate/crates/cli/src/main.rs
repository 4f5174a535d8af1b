//! `une`: compile formulas into reduction graphs, search and check
//! undominated out-regular subsets, run verification suites, export DOT.
//!
//! Exit codes: 0 decided (found, none, pass), 1 decided negative (check
//! rejected, suite failed), 2 usage or input error, 3 budget exhausted.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use une_core::Budget;

#[derive(Debug, Parser)]
#[command(name = "une", version, about = "Uniform Nash equilibria via undominated out-regular subgraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compile a DIMACS formula into the reduction graph and its role map.
    Reduce {
        /// DIMACS CNF input; clauses are normalized first if needed.
        cnf: PathBuf,
        /// Graph file to write. The role map is written next to it with the
        /// extension `roles`.
        #[arg(short, long)]
        output: PathBuf,
        /// Also write the planarized graph as `<stem>.planar.graph`, with
        /// `<stem>.planar.roles` and `<stem>.planar.registry`.
        #[arg(long)]
        planar: bool,
        /// Write the normalization report here.
        #[arg(long, value_name = "PATH")]
        normalization_report: Option<PathBuf>,
    },
    /// Find the least undominated out-regular subset of a graph or game.
    Solve {
        /// Graph or game file.
        instance: PathBuf,
        /// Also write the witness file here.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Verify a witness against a graph or game.
    Check {
        /// Graph or game file.
        instance: PathBuf,
        /// Witness file: one vertex or strategy id per line.
        witness: PathBuf,
    },
    /// Run a verification suite.
    Verify {
        suite: Suite,
        /// Seed for the randomized suites (`equivalence`, `all`).
        #[arg(long)]
        seed: Option<u64>,
        /// Random games per weight class.
        #[arg(long, default_value_t = 500)]
        trials: usize,
        /// Largest side of a random game.
        #[arg(long, default_value_t = 4)]
        max_size: usize,
        /// Formula to verify; repeatable. Defaults to the bundled corpus.
        #[arg(long)]
        cnf: Vec<PathBuf>,
        /// Write the report in key=value form here.
        #[arg(long, value_name = "PATH")]
        report: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Render a graph or game as DOT.
    Export {
        /// Graph or game file.
        instance: PathBuf,
        /// DOT file to write.
        #[arg(short, long)]
        output: PathBuf,
        /// Only the gadget of this variable (1-based) of a compiled graph.
        #[arg(long, conflicts_with = "clause")]
        variable: Option<usize>,
        /// Only the gadget of this clause (1-based) of a compiled graph.
        #[arg(long)]
        clause: Option<usize>,
        /// Gadget registry of a planarized graph; gadgets become clusters.
        #[arg(long, value_name = "PATH")]
        registry: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    /// Random games: equilibrium supports against witness sets.
    Equivalence,
    /// Formulas: satisfiability against witnesses on the reduction graph.
    Theorem3,
    /// Formulas: lifting and projecting witnesses through the planarization.
    Lemma4,
    All,
}

#[derive(Debug, Args)]
struct BudgetArg {
    /// Search node budget, or `unlimited`.
    #[arg(long, env = "UNE_BUDGET", default_value = "1000000", value_parser = parse_budget)]
    budget: Budget,
}

fn parse_budget(s: &str) -> Result<Budget, String> {
    if s == "unlimited" {
        return Ok(Budget::unlimited());
    }
    s.parse::<u64>()
        .map(Budget::nodes)
        .map_err(|_| format!("expected a node count or `unlimited`, found `{s}`"))
}

pub(crate) const EXIT_NEGATIVE: u8 = 1;
pub(crate) const EXIT_USAGE: u8 = 2;
pub(crate) const EXIT_BUDGET: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Reduce {
            cnf,
            output,
            planar,
            normalization_report,
        } => commands::reduce(&cnf, &output, planar, normalization_report.as_deref()),
        Command::Solve {
            instance,
            output,
            budget,
        } => commands::solve(&instance, output.as_deref(), budget.budget),
        Command::Check { instance, witness } => commands::check(&instance, &witness),
        Command::Verify {
            suite,
            seed,
            trials,
            max_size,
            cnf,
            report,
            budget,
        } => commands::verify(&commands::VerifyOptions {
            equivalence: matches!(suite, Suite::Equivalence | Suite::All),
            stages: match suite {
                Suite::Equivalence => Some(&[][..]),
                Suite::Theorem3 => Some(commands::REDUCTION_STAGES),
                Suite::Lemma4 => Some(commands::PLANAR_STAGES),
                Suite::All => None,
            },
            seed,
            trials,
            max_size,
            cnf: &cnf,
            report: report.as_deref(),
            budget: budget.budget,
        }),
        Command::Export {
            instance,
            output,
            variable,
            clause,
            registry,
        } => commands::export(&instance, &output, variable, clause, registry.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
