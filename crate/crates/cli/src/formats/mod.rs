//! On-disk formats: theory JSON, probability JSON, and the NNF circuit
//! text format.

mod nnf;
mod probs_json;
mod theory_json;

pub use nnf::{emit_nnf, parse_nnf};
pub use probs_json::parse_probs;
pub use theory_json::parse_theory;
