//! Compilers from the tractable languages to decision-node d-DNNFs, plus
//! the 2-Horn CNF emitter for hierarchy/exclusion theories.

mod card;
mod hier;
mod path;

pub use card::{compile_card, compile_card_untrimmed};
pub use hier::{compile_te_hier, compile_tree_hier, emit_hex_2horn};
pub use path::{compile_aspath, compile_aspath_untrimmed, normalize_graph, topo_edge_order};

use crate::theory::Language;
use core::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum CompileError {
    WrongLanguage {
        expected: &'static str,
        got: Language,
    },
    NoEdges,
    Cyclic,
}

impl fmt::Display for CompileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompileError::WrongLanguage { expected, got } => {
                write!(f, "compiler expects a {expected} theory, got {got}")
            }
            CompileError::NoEdges => write!(f, "path theory has no edges; no total path exists"),
            CompileError::Cyclic => write!(f, "graph is cyclic"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for CompileError {}
