//! Command implementations: routing per language follows the complexity
//! map — compile where a d-DNNF exists, fall back to the combinatorial
//! solvers where only optimisation/enumeration is tractable, refuse the
//! rest with exit code 3.

use crate::formats::{emit_nnf, parse_nnf, parse_probs, parse_theory};
use crate::output;
use crate::CliError;
use nesykc_core::compile::{
    compile_aspath, compile_aspath_untrimmed, compile_card, compile_card_untrimmed,
    compile_te_hier, compile_tree_hier, emit_hex_2horn,
};
use nesykc_core::oracle::{self, QueryKind, QueryResult};
use nesykc_core::queries::{self, QueryError};
use nesykc_core::solve::{closure, matching};
use nesykc_core::{Circuit, Language, ProbabilityVector, Theory};
use std::path::{Path, PathBuf};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QueryName {
    Pqe,
    Eqe,
    Mpe,
    TopK,
    Thresh,
}

impl QueryName {
    pub fn label(self) -> &'static str {
        match self {
            QueryName::Pqe => "pqe",
            QueryName::Eqe => "eqe",
            QueryName::Mpe => "mpe",
            QueryName::TopK => "top-k",
            QueryName::Thresh => "thresh",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LogBase {
    Natural,
    Two,
}

pub struct QueryArgs {
    pub kind: QueryName,
    pub k: Option<usize>,
    pub threshold: Option<f64>,
    pub log_base: LogBase,
}

impl QueryArgs {
    fn top_k(&self) -> Result<usize, CliError> {
        self.k.ok_or_else(|| CliError::input("top-k requires --k"))
    }

    fn threshold(&self) -> Result<f64, CliError> {
        let t = self
            .threshold
            .ok_or_else(|| CliError::input("thresh requires --threshold"))?;
        if t.is_nan() || t <= 0.0 {
            return Err(CliError::input(format!("threshold {t} must be positive")));
        }
        Ok(t)
    }

    fn scale_entropy(&self, nats: f64) -> f64 {
        match self.log_base {
            LogBase::Natural => nats,
            LogBase::Two => nats / std::f64::consts::LN_2,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn map_query_error(e: QueryError) -> CliError {
    match e {
        QueryError::Unsatisfiable => {
            CliError::unsat("theory is unsatisfiable; no conditioned distribution exists")
        }
        other => CliError::input(format!("circuit rejected: {other}")),
    }
}

/// `compile --theory t.json --out c.nnf [--no-trim] [--smooth]`
pub fn cmd_compile(
    theory_path: &Path,
    out_path: &Path,
    no_trim: bool,
    smooth: bool,
) -> Result<Option<String>, CliError> {
    let theory = parse_theory(&read(theory_path)?)?;
    let circuit = match theory.language() {
        Language::Card => {
            if no_trim {
                compile_card_untrimmed(&theory)
            } else {
                compile_card(&theory)
            }
        }
        Language::AsPath => {
            if no_trim {
                compile_aspath_untrimmed(&theory)
            } else {
                compile_aspath(&theory)
            }
        }
        Language::TreeHier => compile_tree_hier(&theory),
        Language::TeHier => compile_te_hier(&theory),
        Language::Hier | Language::Hex => {
            // No polynomial d-DNNF exists; emit the 2-Horn CNF instead.
            let cnf = emit_hex_2horn(&theory).map_err(|e| CliError::input(format!("emit: {e}")))?;
            let cnf_path: PathBuf = out_path.with_extension("cnf");
            std::fs::write(&cnf_path, cnf)
                .map_err(|e| CliError::input(format!("{}: {e}", cnf_path.display())))?;
            if smooth {
                eprintln!("note: --smooth has no effect on CNF output");
            }
            eprintln!("wrote 2-Horn CNF to {}", cnf_path.display());
            return Ok(None);
        }
        Language::SPath => {
            return Err(CliError::route(
                "spath theories cannot be compiled: reasoning over cyclic simple paths \
                 is NP-hard (shortest path with arbitrary weights) and counting them is #P-hard",
            ))
        }
        Language::Match => {
            return Err(CliError::route(
                "match theories cannot be compiled: matchings admit no polynomial-size \
                 DNNF; use `query mpe|thresh|top-k`, which run the matching solver directly",
            ))
        }
    }
    .map_err(|e| CliError::input(format!("compile: {e}")))?;

    let circuit = if smooth { circuit.smooth() } else { circuit };
    std::fs::write(out_path, emit_nnf(&circuit))
        .map_err(|e| CliError::input(format!("{}: {e}", out_path.display())))?;
    eprintln!(
        "wrote circuit to {} ({} nodes, {} wires)",
        out_path.display(),
        circuit.node_count(),
        circuit.wire_count()
    );
    Ok(None)
}

/// `query <kind> (--circuit c.nnf | --theory t.json) --probs p.json ...`
pub fn cmd_query(
    circuit_path: Option<&Path>,
    theory_path: Option<&Path>,
    probs_path: &Path,
    args: &QueryArgs,
) -> Result<Option<String>, CliError> {
    match (circuit_path, theory_path) {
        (Some(c), None) => {
            let circuit = parse_nnf(&read(c)?)?;
            let probs = parse_probs(&read(probs_path)?, circuit.vars())?;
            run_circuit_query(&circuit, &probs, args).map(Some)
        }
        (None, Some(t)) => {
            let theory = parse_theory(&read(t)?)?;
            let probs = parse_probs(&read(probs_path)?, theory.vars())?;
            run_theory_query(&theory, &probs, args).map(Some)
        }
        _ => Err(CliError::input(
            "provide exactly one of --circuit or --theory",
        )),
    }
}

fn run_circuit_query(
    circuit: &Circuit,
    probs: &ProbabilityVector,
    args: &QueryArgs,
) -> Result<String, CliError> {
    let vars = circuit.vars();
    Ok(match args.kind {
        QueryName::Pqe => {
            let v = queries::pqe(circuit, probs).map_err(map_query_error)?;
            output::value_json("pqe", v)
        }
        QueryName::Eqe => {
            if !nesykc_core::structure::check_structure(circuit).smooth {
                eprintln!("note: circuit is not smooth; smoothing a working copy for eqe");
            }
            let v = queries::eqe(circuit, probs).map_err(map_query_error)?;
            output::value_json("eqe", args.scale_entropy(v))
        }
        QueryName::Mpe => {
            let (state, prob) = queries::mpe(circuit, probs).map_err(map_query_error)?;
            output::state_json("mpe", &state, prob, vars)
        }
        QueryName::TopK => {
            let ranked = queries::top_k(circuit, probs, args.top_k()?).map_err(map_query_error)?;
            output::states_json("top-k", &ranked, vars)
        }
        QueryName::Thresh => {
            let ranked =
                queries::thresh_enum(circuit, probs, args.threshold()?).map_err(map_query_error)?;
            output::states_json("thresh", &ranked, vars)
        }
    })
}

fn counting_refusal(language: Language) -> CliError {
    let why = match language {
        Language::Hier => {
            "counting queries (pqe/eqe) on DAG hierarchies are #P-hard; \
             mpe, thresh and top-k run the min-cut closure solver"
        }
        Language::Match => {
            "counting queries (pqe/eqe) on matchings are #P-hard; \
             mpe, thresh and top-k run the maximum-weight matching solver"
        }
        _ => unreachable!(),
    };
    CliError::route(why)
}

fn run_theory_query(
    theory: &Theory,
    probs: &ProbabilityVector,
    args: &QueryArgs,
) -> Result<String, CliError> {
    let vars = theory.vars();
    let map_solve = |e: nesykc_core::solve::SolveError| CliError::input(format!("solver: {e}"));
    match theory.language() {
        Language::Card | Language::AsPath | Language::TreeHier | Language::TeHier => {
            let circuit = match theory.language() {
                Language::Card => compile_card(theory),
                Language::AsPath => compile_aspath(theory),
                Language::TreeHier => compile_tree_hier(theory),
                Language::TeHier => compile_te_hier(theory),
                _ => unreachable!(),
            }
            .map_err(|e| CliError::input(format!("compile: {e}")))?;
            run_circuit_query(&circuit, probs, args)
        }
        Language::Hier => {
            let free = vec![None; vars.len()];
            match args.kind {
                QueryName::Pqe | QueryName::Eqe => Err(counting_refusal(Language::Hier)),
                QueryName::Mpe => {
                    let (state, prob) =
                        closure::closure_mpe(theory, probs, &free).map_err(map_solve)?;
                    Ok(output::state_json("mpe", &state, prob, vars))
                }
                QueryName::Thresh => {
                    let ranked = closure::closure_thresh_enum(theory, probs, args.threshold()?)
                        .map_err(map_solve)?;
                    Ok(output::states_json("thresh", &ranked, vars))
                }
                QueryName::TopK => {
                    let ranked =
                        closure::closure_top_k(theory, probs, args.top_k()?).map_err(map_solve)?;
                    Ok(output::states_json("top-k", &ranked, vars))
                }
            }
        }
        Language::Match => {
            let free = vec![None; vars.len()];
            match args.kind {
                QueryName::Pqe | QueryName::Eqe => Err(counting_refusal(Language::Match)),
                QueryName::Mpe => {
                    let (state, prob) =
                        matching::match_mpe(theory, probs, &free).map_err(map_solve)?;
                    Ok(output::state_json("mpe", &state, prob, vars))
                }
                QueryName::Thresh => {
                    let ranked = matching::match_thresh_enum(theory, probs, args.threshold()?)
                        .map_err(map_solve)?;
                    Ok(output::states_json("thresh", &ranked, vars))
                }
                QueryName::TopK => {
                    let ranked =
                        matching::match_top_k(theory, probs, args.top_k()?).map_err(map_solve)?;
                    Ok(output::states_json("top-k", &ranked, vars))
                }
            }
        }
        Language::Hex => Err(CliError::route(
            "hex theories are intractable for every query (vertex cover / monotone counting \
             reductions); compile to 2-Horn CNF for external tools, or use the oracle",
        )),
        Language::SPath => Err(CliError::route(
            "spath theories are intractable for every query (Hamiltonian path / simple-path \
             counting reductions); use the oracle on small instances",
        )),
    }
}

/// `check --circuit c.nnf`
pub fn cmd_check(circuit_path: &Path) -> Result<Option<String>, CliError> {
    let circuit = parse_nnf(&read(circuit_path)?)?;
    let report = nesykc_core::structure::check_structure(&circuit);
    Ok(Some(output::report_json(&report, circuit.vars())))
}

/// `oracle <kind> --theory t.json --probs p.json ...`; mirrors `query`
/// through exhaustive enumeration, capped by `NESYKC_ORACLE_CAP`.
pub fn cmd_oracle(
    theory_path: &Path,
    probs_path: &Path,
    args: &QueryArgs,
) -> Result<Option<String>, CliError> {
    let cap = match std::env::var("NESYKC_ORACLE_CAP") {
        Err(_) => oracle::DEFAULT_ORACLE_CAP,
        Ok(text) => text
            .parse()
            .map_err(|_| CliError::input(format!("NESYKC_ORACLE_CAP: {text:?} is not a count")))?,
    };
    let theory = parse_theory(&read(theory_path)?)?;
    let probs = parse_probs(&read(probs_path)?, theory.vars())?;
    let kind = match args.kind {
        QueryName::Pqe => QueryKind::Pqe,
        QueryName::Eqe => QueryKind::Eqe,
        QueryName::Mpe => QueryKind::Mpe,
        QueryName::TopK => QueryKind::TopK(args.top_k()?),
        QueryName::Thresh => QueryKind::Thresh(args.threshold()?),
    };
    let result = oracle::oracle_query_capped(&theory, &probs, kind, cap).map_err(|e| match e {
        oracle::OracleError::CapExceeded { vars, cap } => {
            CliError::cap(format!("{vars} variables exceed the oracle cap of {cap}"))
        }
        oracle::OracleError::Unsatisfiable => {
            CliError::unsat("theory is unsatisfiable; no conditioned distribution exists")
        }
        other => CliError::input(format!("oracle: {other}")),
    })?;
    let vars = theory.vars();
    Ok(Some(match result {
        QueryResult::Probability(v) => output::value_json("pqe", v),
        QueryResult::Entropy(v) => output::value_json("eqe", args.scale_entropy(v)),
        QueryResult::MostProbable { state, probability } => {
            output::state_json("mpe", &state, probability, vars)
        }
        QueryResult::Ranked(ranked) => output::states_json(args.kind.label(), &ranked, vars),
    }))
}
