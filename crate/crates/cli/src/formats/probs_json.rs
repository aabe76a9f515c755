//! Probability JSON: `{"probs": {"Y1": 0.9, ...}}` with one entry per
//! variable, each strictly inside (0, 1).

use crate::CliError;
use nesykc_core::{ProbabilityVector, VariableSet};
use serde::Deserialize;
use std::collections::BTreeMap;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProbsFile {
    probs: BTreeMap<String, f64>,
}

pub fn parse_probs(text: &str, vars: &VariableSet) -> Result<ProbabilityVector, CliError> {
    let file: ProbsFile =
        serde_json::from_str(text).map_err(|e| CliError::input(format!("probs JSON: {e}")))?;
    for name in file.probs.keys() {
        if vars.index_of(name).is_none() {
            return Err(CliError::input(format!(
                "probability for unknown variable {name:?}"
            )));
        }
    }
    let mut values = Vec::with_capacity(vars.len());
    for i in 0..vars.len() {
        let name = vars.name(i);
        match file.probs.get(name) {
            Some(&p) => values.push(p),
            None => return Err(CliError::input(format!("missing probability for {name:?}"))),
        }
    }
    ProbabilityVector::new(values).map_err(|e| CliError::input(format!("probs: {e}")))
}
