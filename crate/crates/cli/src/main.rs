use clap::{Parser, Subcommand, ValueEnum};
use nesykc::run::{self, LogBase, QueryArgs, QueryName};
use std::path::PathBuf;
use std::process::ExitCode;

/// Knowledge compilation and probabilistic reasoning for succinct
/// constraint languages (cardinality, hierarchies, acyclic simple paths,
/// matchings).
#[derive(Parser)]
#[command(name = "nesykc", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum QueryKindArg {
    Pqe,
    Eqe,
    Mpe,
    #[value(name = "top-k")]
    TopK,
    Thresh,
}

impl From<QueryKindArg> for QueryName {
    fn from(k: QueryKindArg) -> QueryName {
        match k {
            QueryKindArg::Pqe => QueryName::Pqe,
            QueryKindArg::Eqe => QueryName::Eqe,
            QueryKindArg::Mpe => QueryName::Mpe,
            QueryKindArg::TopK => QueryName::TopK,
            QueryKindArg::Thresh => QueryName::Thresh,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LogBaseArg {
    #[value(name = "e")]
    E,
    #[value(name = "2")]
    Two,
}

impl From<LogBaseArg> for LogBase {
    fn from(b: LogBaseArg) -> LogBase {
        match b {
            LogBaseArg::E => LogBase::Natural,
            LogBaseArg::Two => LogBase::Two,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compile a theory to a d-DNNF circuit (or 2-Horn CNF for hier/hex).
    Compile {
        /// Theory JSON file.
        #[arg(long)]
        theory: PathBuf,
        /// Output path; `.nnf` circuit, or `.cnf` for hier/hex theories.
        #[arg(long)]
        out: PathBuf,
        /// Keep FALSE-equivalent template cells instead of trimming them.
        #[arg(long)]
        no_trim: bool,
        /// Smooth the circuit before writing it.
        #[arg(long)]
        smooth: bool,
    },
    /// Answer a query on a circuit or a theory (auto-routed per language).
    Query {
        #[arg(value_enum)]
        kind: QueryKindArg,
        /// Compiled circuit (.nnf); variables are named Y1..Yk.
        #[arg(long, conflicts_with = "theory")]
        circuit: Option<PathBuf>,
        /// Theory JSON file.
        #[arg(long)]
        theory: Option<PathBuf>,
        /// Probability JSON file.
        #[arg(long)]
        probs: PathBuf,
        /// Number of states for top-k.
        #[arg(long)]
        k: Option<usize>,
        /// Probability threshold for thresh.
        #[arg(long)]
        threshold: Option<f64>,
        /// Entropy unit for eqe: nats (e) or bits (2).
        #[arg(long, value_enum, default_value = "e")]
        log_base: LogBaseArg,
    },
    /// Print the structural report of a circuit file.
    Check {
        #[arg(long)]
        circuit: PathBuf,
    },
    /// Answer a query by exhaustive enumeration (ground truth, capped by
    /// NESYKC_ORACLE_CAP, default 25 variables).
    Oracle {
        #[arg(value_enum)]
        kind: QueryKindArg,
        #[arg(long)]
        theory: PathBuf,
        #[arg(long)]
        probs: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        threshold: Option<f64>,
        #[arg(long, value_enum, default_value = "e")]
        log_base: LogBaseArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compile {
            theory,
            out,
            no_trim,
            smooth,
        } => run::cmd_compile(&theory, &out, no_trim, smooth),
        Command::Query {
            kind,
            circuit,
            theory,
            probs,
            k,
            threshold,
            log_base,
        } => {
            let args = QueryArgs {
                kind: kind.into(),
                k,
                threshold,
                log_base: log_base.into(),
            };
            run::cmd_query(circuit.as_deref(), theory.as_deref(), &probs, &args)
        }
        Command::Check { circuit } => run::cmd_check(&circuit),
        Command::Oracle {
            kind,
            theory,
            probs,
            k,
            threshold,
            log_base,
        } => {
            let args = QueryArgs {
                kind: kind.into(),
                k,
                threshold,
                log_base: log_base.into(),
            };
            run::cmd_oracle(&theory, &probs, &args)
        }
    };
    match result {
        Ok(Some(line)) => {
            println!("{line}");
            ExitCode::SUCCESS
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
