//! Succinct constraint languages, knowledge compilation to d-DNNF, and the
//! four probabilistic reasoning queries (PQE, EQE, MPE, threshold/top-k
//! enumeration).
//!
//! The crate is organised around three layers:
//!
//! * [`theory`] — constraint instances in eight languages (cardinality,
//!   hierarchies, simple paths, matchings) over a shared variable universe,
//!   with exact per-language satisfaction semantics. [`oracle`] enumerates
//!   models by brute force and answers every query exactly; it is the
//!   reference semantics for everything else.
//! * [`circuit`] — an arena of NNF boolean circuits with structural
//!   validators ([`structure`]), conditioning, smoothing and trimming.
//!   [`compile`] lowers the tractable languages onto decision-node d-DNNFs,
//!   and [`queries`] answers all four queries on such circuits in one
//!   bottom-up pass each.
//! * [`solve`] — direct combinatorial solvers (min-cut closures, maximum
//!   weight matching) for the languages that are MPE-tractable but cannot
//!   be compiled, plus the ranked-enumeration driver shared by all of them.
//!
//! The crate is `no_std`-compatible (with `alloc`); disable the default
//! `std` feature and enable `libm` to build for targets without a standard
//! library. File formats and the command-line front end live in the
//! companion `nesykc` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("nesykc-core requires either the `std` or the `libm` feature");

mod bits;
mod math;

pub mod circuit;
pub mod compile;
pub mod oracle;
pub mod prob;
pub mod queries;
pub mod solve;
pub mod structure;
pub mod theory;
pub mod vars;

pub use circuit::{Circuit, Node, NodeId};
pub use oracle::{QueryKind, QueryResult, RankedState};
pub use prob::ProbabilityVector;
pub use structure::{StructureReport, Tristate};
pub use theory::{Language, Theory};
pub use vars::{State, VariableSet};
