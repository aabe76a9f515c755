//! File formats and command implementations behind the `nesykc` binary.
//!
//! Exit-code contract (stable):
//! * `0` — success
//! * `2` — malformed input (files, flags, structure validation)
//! * `3` — request refused because the route is intractable or the language
//!   cannot be compiled
//! * `4` — theory/circuit unsatisfiable where a distribution is required
//! * `5` — oracle variable cap exceeded

pub mod formats;
pub mod output;
pub mod run;

use std::fmt;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> CliError {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    pub fn route(message: impl Into<String>) -> CliError {
        CliError {
            code: 3,
            message: message.into(),
        }
    }

    pub fn unsat(message: impl Into<String>) -> CliError {
        CliError {
            code: 4,
            message: message.into(),
        }
    }

    pub fn cap(message: impl Into<String>) -> CliError {
        CliError {
            code: 5,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}
