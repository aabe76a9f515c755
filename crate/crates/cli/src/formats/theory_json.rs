//! Theory JSON:
//!
//! ```json
//! {"language": "card", "variables": ["Y1", ...], "payload": {...}}
//! ```
//!
//! Card payload: `{"n": int, "op": "le"|"ge"|"eq", "l": int}`. Graph
//! payloads: `{"vertices": [...], "edges": [...]}` where an edge is
//! `[tail, head, varname]` for the edge-labeled languages (aspath, spath,
//! match) and `[tail, head]` for the vertex-labeled ones (hier, tree-hier,
//! te-hier, hex), whose vertices are the variable names themselves. Hex
//! adds `"exclusions": [[a, b], ...]`.

use crate::CliError;
use nesykc_core::theory::{
    CardOp, CardPayload, DirectedGraphPayload, HexPayload, Labeling, Payload,
    UndirectedGraphPayload,
};
use nesykc_core::{Language, Theory, VariableSet};
use serde::Deserialize;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TheoryFile {
    language: String,
    variables: Vec<String>,
    payload: serde_json::Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CardJson {
    n: usize,
    op: String,
    l: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<Vec<String>>,
    #[serde(default)]
    exclusions: Option<Vec<Vec<String>>>,
}

pub fn parse_theory(text: &str) -> Result<Theory, CliError> {
    let file: TheoryFile =
        serde_json::from_str(text).map_err(|e| CliError::input(format!("theory JSON: {e}")))?;
    let language: Language = file
        .language
        .parse()
        .map_err(|()| CliError::input(format!("unknown language {:?}", file.language)))?;
    let vars = VariableSet::new(file.variables.clone())
        .map_err(|e| CliError::input(format!("variables: {e}")))?;

    let payload = match language {
        Language::Card => {
            let card: CardJson = serde_json::from_value(file.payload)
                .map_err(|e| CliError::input(format!("card payload: {e}")))?;
            let op: CardOp = card
                .op
                .parse()
                .map_err(|()| CliError::input(format!("unknown card op {:?}", card.op)))?;
            Payload::Card(CardPayload {
                n: card.n,
                op,
                bound: card.l,
            })
        }
        Language::AsPath | Language::SPath | Language::Match => {
            let g: GraphJson = serde_json::from_value(file.payload)
                .map_err(|e| CliError::input(format!("graph payload: {e}")))?;
            if g.exclusions.is_some() {
                return Err(CliError::input(
                    "exclusions are only valid for hex theories",
                ));
            }
            let vertex_index = index_vertices(&g.vertices)?;
            let mut edges = Vec::with_capacity(g.edges.len());
            let mut edge_vars = Vec::with_capacity(g.edges.len());
            for e in &g.edges {
                let [tail, head, varname] = edge_triple(e)?;
                let u = lookup(&vertex_index, tail)?;
                let v = lookup(&vertex_index, head)?;
                let var = vars.index_of(varname).ok_or_else(|| {
                    CliError::input(format!("edge variable {varname:?} not declared"))
                })?;
                edges.push((u, v));
                edge_vars.push(var);
            }
            if language == Language::Match {
                Payload::Ugraph(UndirectedGraphPayload {
                    vertices: g.vertices,
                    edges,
                    edge_vars,
                })
            } else {
                Payload::Digraph(DirectedGraphPayload {
                    vertices: g.vertices,
                    edges,
                    labeling: Labeling::Edge(edge_vars),
                })
            }
        }
        Language::Hier | Language::TreeHier | Language::TeHier | Language::Hex => {
            let g: GraphJson = serde_json::from_value(file.payload)
                .map_err(|e| CliError::input(format!("graph payload: {e}")))?;
            if language != Language::Hex && g.exclusions.is_some() {
                return Err(CliError::input(
                    "exclusions are only valid for hex theories",
                ));
            }
            // Vertex-labeled languages: vertices are the variable names.
            let vertex_index = index_vertices(&g.vertices)?;
            let vertex_vars = g
                .vertices
                .iter()
                .map(|name| {
                    vars.index_of(name).ok_or_else(|| {
                        CliError::input(format!("vertex {name:?} is not a declared variable"))
                    })
                })
                .collect::<Result<Vec<usize>, CliError>>()?;
            let mut edges = Vec::with_capacity(g.edges.len());
            for e in &g.edges {
                let [tail, head] = edge_pair(e)?;
                edges.push((lookup(&vertex_index, tail)?, lookup(&vertex_index, head)?));
            }
            if language == Language::Hex {
                let mut exclusions = Vec::new();
                for e in g.exclusions.unwrap_or_default() {
                    let [a, b] = edge_pair(&e)?;
                    exclusions.push((lookup(&vertex_index, a)?, lookup(&vertex_index, b)?));
                }
                Payload::Hex(HexPayload {
                    vertices: g.vertices,
                    hierarchy_edges: edges,
                    exclusion_edges: exclusions,
                    vertex_vars,
                })
            } else {
                Payload::Digraph(DirectedGraphPayload {
                    vertices: g.vertices,
                    edges,
                    labeling: Labeling::Vertex(vertex_vars),
                })
            }
        }
    };

    Theory::new(language, vars, payload).map_err(|e| CliError::input(format!("theory: {e}")))
}

fn index_vertices(
    vertices: &[String],
) -> Result<std::collections::BTreeMap<&str, usize>, CliError> {
    let mut index = std::collections::BTreeMap::new();
    for (i, v) in vertices.iter().enumerate() {
        if index.insert(v.as_str(), i).is_some() {
            return Err(CliError::input(format!("duplicate vertex {v:?}")));
        }
    }
    Ok(index)
}

fn lookup(index: &std::collections::BTreeMap<&str, usize>, name: &str) -> Result<usize, CliError> {
    index
        .get(name)
        .copied()
        .ok_or_else(|| CliError::input(format!("unknown vertex {name:?}")))
}

fn edge_triple(e: &[String]) -> Result<[&str; 3], CliError> {
    match e {
        [a, b, c] => Ok([a, b, c]),
        _ => Err(CliError::input(
            "edge-labeled languages need edges of the form [tail, head, varname]",
        )),
    }
}

fn edge_pair(e: &[String]) -> Result<[&str; 2], CliError> {
    match e {
        [a, b] => Ok([a, b]),
        _ => Err(CliError::input(
            "vertex-labeled languages need edges of the form [tail, head]",
        )),
    }
}
