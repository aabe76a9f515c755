//! Deterministic JSON rendering: fixed key order, floats rounded to 12
//! significant digits.

use nesykc_core::oracle::RankedState;
use nesykc_core::{State, StructureReport, Tristate, VariableSet};
use serde::Serialize;

/// Round to 12 significant digits so identical queries print identical
/// bytes regardless of the route that computed them.
pub fn round_sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let magnitude = x.abs().log10().floor();
    let scale = 10f64.powf(11.0 - magnitude);
    (x * scale).round() / scale
}

#[derive(Serialize)]
struct StateEntry {
    state: Vec<String>,
    value: f64,
}

#[derive(Serialize)]
struct QueryOut {
    query: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    state: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    states: Option<Vec<StateEntry>>,
}

fn selected_names(state: &State, vars: &VariableSet) -> Vec<String> {
    state.selected().map(|i| vars.name(i).to_string()).collect()
}

pub fn value_json(query: &'static str, value: f64) -> String {
    render(QueryOut {
        query,
        value: Some(round_sig12(value)),
        state: None,
        states: None,
    })
}

pub fn state_json(query: &'static str, state: &State, value: f64, vars: &VariableSet) -> String {
    render(QueryOut {
        query,
        value: Some(round_sig12(value)),
        state: Some(selected_names(state, vars)),
        states: None,
    })
}

pub fn states_json(query: &'static str, ranked: &[RankedState], vars: &VariableSet) -> String {
    render(QueryOut {
        query,
        value: None,
        state: None,
        states: Some(
            ranked
                .iter()
                .map(|r| StateEntry {
                    state: selected_names(&r.state, vars),
                    value: round_sig12(r.probability),
                })
                .collect(),
        ),
    })
}

fn render(out: QueryOut) -> String {
    serde_json::to_string(&out).expect("output serialization cannot fail")
}

#[derive(Serialize)]
struct ReportOut {
    nnf: bool,
    decomposable: bool,
    deterministic: serde_json::Value,
    smooth: bool,
    obdd_order: Option<Vec<String>>,
    nodes: usize,
    wires: usize,
    vars: usize,
}

pub fn report_json(report: &StructureReport, vars: &VariableSet) -> String {
    let deterministic = match report.deterministic {
        Tristate::True => serde_json::Value::Bool(true),
        Tristate::False => serde_json::Value::Bool(false),
        Tristate::Unknown => serde_json::Value::String("unknown".into()),
    };
    let out = ReportOut {
        nnf: report.nnf,
        decomposable: report.decomposable,
        deterministic,
        smooth: report.smooth,
        obdd_order: report
            .obdd_order
            .as_ref()
            .map(|order| order.iter().map(|&v| vars.name(v).to_string()).collect()),
        nodes: report.node_count,
        wires: report.wires,
        vars: vars.len(),
    };
    serde_json::to_string(&out).expect("output serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_to_twelve_significant_digits() {
        assert_eq!(round_sig12(0.16934400000000002), 0.169344);
        assert_eq!(round_sig12(0.046875), 0.046875);
        assert_eq!(round_sig12(0.0), 0.0);
        assert_eq!(round_sig12(123456789012345.0), 123456789012000.0);
    }
}
