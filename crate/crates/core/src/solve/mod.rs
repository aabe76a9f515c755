//! Direct combinatorial solvers for the MPE-tractable languages that do not
//! compile to DNNF, plus the ranked-enumeration driver they share.

pub mod closure;
pub mod flow;
pub mod matching;

pub(crate) mod lawler;

use crate::theory::{Language, TheoryError};
use core::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum SolveError {
    WrongLanguage {
        expected: &'static str,
        got: Language,
    },
    InconsistentForcing,
    ForcedEdgesShareVertex,
    DimensionMismatch {
        expected: usize,
        got: usize,
    },
    BadThreshold(f64),
    Theory(TheoryError),
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::WrongLanguage { expected, got } => {
                write!(f, "solver expects a {expected} theory, got {got}")
            }
            SolveError::InconsistentForcing => {
                write!(f, "forced assignment is inconsistent with every closure")
            }
            SolveError::ForcedEdgesShareVertex => {
                write!(
                    f,
                    "forced-in edges share a vertex; no matching contains them"
                )
            }
            SolveError::DimensionMismatch { expected, got } => {
                write!(f, "expected {expected} entries, got {got}")
            }
            SolveError::BadThreshold(t) => write!(f, "threshold {t} must be positive"),
            SolveError::Theory(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for SolveError {}
