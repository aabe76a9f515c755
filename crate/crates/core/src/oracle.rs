//! Exhaustive brute-force reference semantics.
//!
//! Everything here enumerates all `2^k` states and is capped accordingly;
//! it exists to pin down ground truth for the compilers, query engines and
//! solvers, and to serve the `oracle` CLI command.

use crate::math::KahanSum;
use crate::prob::ProbabilityVector;
use crate::theory::{SatChecker, Theory, TheoryError};
use crate::vars::State;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// Default enumeration cap; `2^25` states stay around a second.
pub const DEFAULT_ORACLE_CAP: usize = 25;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum QueryKind {
    Pqe,
    Eqe,
    Mpe,
    Thresh(f64),
    TopK(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct RankedState {
    pub state: State,
    pub probability: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum QueryResult {
    Probability(f64),
    Entropy(f64),
    MostProbable { state: State, probability: f64 },
    Ranked(Vec<RankedState>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum OracleError {
    CapExceeded { vars: usize, cap: usize },
    Unsatisfiable,
    BadThreshold(f64),
    Theory(TheoryError),
    DimensionMismatch { expected: usize, got: usize },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::CapExceeded { vars, cap } => {
                write!(f, "{vars} variables exceed the oracle cap of {cap}")
            }
            OracleError::Unsatisfiable => write!(f, "theory is unsatisfiable"),
            OracleError::BadThreshold(t) => write!(f, "threshold {t} must be positive"),
            OracleError::Theory(e) => write!(f, "{e}"),
            OracleError::DimensionMismatch { expected, got } => {
                write!(
                    f,
                    "probability vector has {got} entries, theory has {expected} variables"
                )
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for OracleError {}

/// All models of `t` in lexicographic bit-string order, using the default
/// cap.
pub fn oracle_models(t: &Theory) -> Result<Vec<State>, OracleError> {
    oracle_models_capped(t, DEFAULT_ORACLE_CAP)
}

pub fn oracle_models_capped(t: &Theory, cap: usize) -> Result<Vec<State>, OracleError> {
    let k = t.vars().len();
    if k > cap || k >= usize::BITS as usize - 1 {
        return Err(OracleError::CapExceeded { vars: k, cap });
    }
    let checker = SatChecker::new(t);
    let mut out = Vec::new();
    for m in 0..(1usize << k) {
        let state = state_from_index(k, m);
        if checker.check(&state) {
            out.push(state);
        }
    }
    Ok(out)
}

/// State number `m` in lexicographic order: bit of `Y_1` is the most
/// significant bit of `m`.
pub fn state_from_index(k: usize, m: usize) -> State {
    State::new((0..k).map(|i| m >> (k - 1 - i) & 1 == 1).collect())
}

pub fn oracle_query(
    t: &Theory,
    p: &ProbabilityVector,
    kind: QueryKind,
) -> Result<QueryResult, OracleError> {
    oracle_query_capped(t, p, kind, DEFAULT_ORACLE_CAP)
}

pub fn oracle_query_capped(
    t: &Theory,
    p: &ProbabilityVector,
    kind: QueryKind,
    cap: usize,
) -> Result<QueryResult, OracleError> {
    if p.len() != t.vars().len() {
        return Err(OracleError::DimensionMismatch {
            expected: t.vars().len(),
            got: p.len(),
        });
    }
    let models = oracle_models_capped(t, cap)?;
    match kind {
        QueryKind::Pqe => {
            let mut sum = KahanSum::default();
            for y in &models {
                sum.add(p.state_probability(y));
            }
            Ok(QueryResult::Probability(sum.value()))
        }
        QueryKind::Eqe => {
            if models.is_empty() {
                return Err(OracleError::Unsatisfiable);
            }
            Ok(QueryResult::Entropy(entropy_of_models(&models, p)))
        }
        QueryKind::Mpe => {
            // Models are visited in lexicographic order, so keeping the
            // first strict maximum realises the documented tie-break.
            let mut best: Option<(usize, f64)> = None;
            for (i, y) in models.iter().enumerate() {
                let w = p.state_probability(y);
                if best.is_none_or(|(_, bw)| w > bw) {
                    best = Some((i, w));
                }
            }
            match best {
                None => Err(OracleError::Unsatisfiable),
                Some((i, probability)) => Ok(QueryResult::MostProbable {
                    state: models[i].clone(),
                    probability,
                }),
            }
        }
        QueryKind::Thresh(threshold) => {
            if threshold.is_nan() || threshold <= 0.0 {
                return Err(OracleError::BadThreshold(threshold));
            }
            let mut ranked = rank_models(&models, p);
            ranked.retain(|r| r.probability >= threshold);
            Ok(QueryResult::Ranked(ranked))
        }
        QueryKind::TopK(k) => {
            let mut ranked = rank_models(&models, p);
            ranked.truncate(k);
            Ok(QueryResult::Ranked(ranked))
        }
    }
}

/// `H(P(y | p, kappa))` in nats over an explicit model list.
pub fn entropy_of_models(models: &[State], p: &ProbabilityVector) -> f64 {
    let mut z = KahanSum::default();
    let mut s = KahanSum::default();
    for y in models {
        let w = p.state_probability(y);
        z.add(w);
        s.add(w * crate::math::ln(w));
    }
    let z = z.value();
    crate::math::ln(z) - s.value() / z
}

/// Decreasing probability, ties broken toward the lexicographically
/// smallest bit string.
pub fn rank_models(models: &[State], p: &ProbabilityVector) -> Vec<RankedState> {
    let mut ranked: Vec<RankedState> = models
        .iter()
        .map(|y| RankedState {
            state: y.clone(),
            probability: p.state_probability(y),
        })
        .collect();
    ranked.sort_by(cmp_ranked);
    ranked
}

pub fn cmp_ranked(a: &RankedState, b: &RankedState) -> Ordering {
    b.probability
        .total_cmp(&a.probability)
        .then_with(|| a.state.cmp(&b.state))
}
