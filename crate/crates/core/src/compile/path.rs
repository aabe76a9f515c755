//! Acyclic simple-path constraints to d-DNNF.
//!
//! Preprocessing merges all sources into one `s` and all sinks into one
//! `t`, then edges are relabelled along a topological edge order. The
//! circuit is a grid of decision nodes `(v, i)` — "the path reached vertex
//! `v` using the first `i` edges" — rooted at `(t, k)`: when edge `i` runs
//! `u -> v`, cell `(v, i)` branches to `(u, i-1)` on the positive side and
//! `(v, i-1)` on the negative one; otherwise edge `i` is forced off. Base
//! cells are `TRUE` at `s` and `FALSE` elsewhere, which encodes that the
//! empty prefix sits at the source.

use crate::circuit::{Circuit, CircuitBuilder, NodeId};
use crate::compile::CompileError;
use crate::theory::{DirectedGraphPayload, Labeling, Language, Payload, Theory};
use alloc::vec;
use alloc::vec::Vec;

fn aspath_parts(t: &Theory) -> Result<(&DirectedGraphPayload, &[usize]), CompileError> {
    if t.language() != Language::AsPath {
        return Err(CompileError::WrongLanguage {
            expected: "aspath",
            got: t.language(),
        });
    }
    let g = t.digraph().expect("aspath payload");
    let edge_vars = match &g.labeling {
        Labeling::Edge(vs) => vs.as_slice(),
        Labeling::Vertex(_) => unreachable!("validated at construction"),
    };
    Ok((g, edge_vars))
}

/// Merge every source into one `s` and every sink into one `t`. The model
/// set is unchanged; parallel edges may appear and each keeps its own
/// variable. Vertices that end up isolated are dropped.
pub fn normalize_graph(t: &Theory) -> Result<Theory, CompileError> {
    let (g, edge_vars) = aspath_parts(t)?;
    if g.edges.is_empty() {
        return Err(CompileError::NoEdges);
    }
    let nv = g.vertices.len();
    let mut has_in = vec![false; nv];
    let mut has_out = vec![false; nv];
    for &(u, v) in &g.edges {
        has_out[u] = true;
        has_in[v] = true;
    }
    // Smallest-index source with outgoing edges / sink with incoming edges;
    // both exist in a non-empty DAG.
    let s = (0..nv)
        .find(|&v| !has_in[v] && has_out[v])
        .expect("acyclic graph with edges has a live source");
    let t_v = (0..nv)
        .find(|&v| !has_out[v] && has_in[v])
        .expect("acyclic graph with edges has a live sink");

    let new_edges: Vec<(usize, usize)> = g
        .edges
        .iter()
        .map(|&(u, v)| {
            let u2 = if !has_in[u] { s } else { u };
            let v2 = if !has_out[v] { t_v } else { v };
            (u2, v2)
        })
        .collect();

    // Keep only vertices that still carry edges.
    let mut live = vec![false; nv];
    for &(u, v) in &new_edges {
        live[u] = true;
        live[v] = true;
    }
    let mut remap = vec![usize::MAX; nv];
    let mut vertices = Vec::new();
    for v in 0..nv {
        if live[v] {
            remap[v] = vertices.len();
            vertices.push(g.vertices[v].clone());
        }
    }
    let edges = new_edges
        .iter()
        .map(|&(u, v)| (remap[u], remap[v]))
        .collect();

    Ok(Theory::new_merged(
        Language::AsPath,
        t.vars().clone(),
        Payload::Digraph(DirectedGraphPayload {
            vertices,
            edges,
            labeling: Labeling::Edge(edge_vars.to_vec()),
        }),
    ))
}

/// A topological order of the edges: `order[i]` is the index of the edge in
/// position `i`; whenever a path runs from the head of `e` to the tail of
/// `f`, `e` comes first. Deterministic: among available edges the smallest
/// original index is taken.
pub fn topo_edge_order(t: &Theory) -> Result<Vec<usize>, CompileError> {
    let (g, _) = aspath_parts(t)?;
    let nv = g.vertices.len();
    let m = g.edges.len();
    // Edge e = (u, v) becomes available once every edge into u is placed.
    let mut blockers = vec![0usize; m];
    let mut unlocks: Vec<Vec<usize>> = vec![Vec::new(); nv];
    let mut indeg = vec![0usize; nv];
    for &(_, v) in &g.edges {
        indeg[v] += 1;
    }
    for (e, &(u, _)) in g.edges.iter().enumerate() {
        blockers[e] = indeg[u];
    }
    for (e, &(u, _)) in g.edges.iter().enumerate() {
        unlocks[u].push(e);
    }
    let mut ready: alloc::collections::BTreeSet<usize> =
        (0..m).filter(|&e| blockers[e] == 0).collect();
    let mut order = Vec::with_capacity(m);
    while let Some(&e) = ready.iter().next() {
        ready.remove(&e);
        order.push(e);
        let (_, head) = g.edges[e];
        for &f in &unlocks[head] {
            blockers[f] -= 1;
            if blockers[f] == 0 {
                ready.insert(f);
            }
        }
    }
    if order.len() != m {
        return Err(CompileError::Cyclic);
    }
    Ok(order)
}

pub fn compile_aspath(t: &Theory) -> Result<Circuit, CompileError> {
    build(t, true)
}

/// Same template without constant folding, i.e. before the trimming pass
/// removes the `FALSE`-equivalent cells below each vertex's first incident
/// edge.
pub fn compile_aspath_untrimmed(t: &Theory) -> Result<Circuit, CompileError> {
    build(t, false)
}

fn build(t: &Theory, fold: bool) -> Result<Circuit, CompileError> {
    let normalized = normalize_graph(t)?;
    let order = topo_edge_order(&normalized)?;
    let (g, edge_vars) = aspath_parts(&normalized)?;
    let nv = g.vertices.len();
    let k = g.edges.len();

    // Per position i (1-based): the edge and the variable it carries.
    let step_edge: Vec<(usize, usize)> = order.iter().map(|&e| g.edges[e]).collect();
    let step_var: Vec<usize> = order.iter().map(|&e| edge_vars[e]).collect();

    let mut has_in = vec![false; nv];
    let mut has_out = vec![false; nv];
    for &(u, v) in &g.edges {
        has_out[u] = true;
        has_in[v] = true;
    }
    let s = (0..nv)
        .find(|&v| !has_in[v])
        .expect("normalized graph has a source");
    let t_v = (0..nv)
        .find(|&v| !has_out[v])
        .expect("normalized graph has a sink");

    // Mark the cells reachable from the root (t, k).
    let mut needed = vec![false; nv * (k + 1)];
    let cell = |v: usize, i: usize| i * nv + v;
    let mut stack = vec![(t_v, k)];
    while let Some((v, i)) = stack.pop() {
        if needed[cell(v, i)] {
            continue;
        }
        needed[cell(v, i)] = true;
        if i == 0 {
            continue;
        }
        let (tail, head) = step_edge[i - 1];
        if head == v {
            stack.push((tail, i - 1));
        }
        stack.push((v, i - 1));
    }

    let mut b = if fold {
        CircuitBuilder::new(t.vars().clone())
    } else {
        CircuitBuilder::raw(t.vars().clone())
    };
    let mut nodes: Vec<Option<NodeId>> = vec![None; nv * (k + 1)];
    for i in 0..=k {
        for v in 0..nv {
            if !needed[cell(v, i)] {
                continue;
            }
            let id = if i == 0 {
                if v == s {
                    b.t()
                } else {
                    b.f()
                }
            } else {
                let (tail, head) = step_edge[i - 1];
                let var = step_var[i - 1];
                let lo = nodes[cell(v, i - 1)].expect("cell built in order");
                let hi = if head == v {
                    nodes[cell(tail, i - 1)].expect("cell built in order")
                } else {
                    b.f()
                };
                b.decision(var, hi, lo)
            };
            nodes[cell(v, i)] = Some(id);
        }
    }
    let root = nodes[cell(t_v, k)].expect("root cell built");
    Ok(b.finish(root))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{oracle_models, state_from_index};
    use crate::structure::{check_structure, Tristate};
    use crate::vars::{State, VariableSet};

    fn figd() -> Theory {
        let vars = VariableSet::numbered(6).unwrap();
        let payload = Payload::Digraph(DirectedGraphPayload {
            vertices: vec!["s".into(), "a".into(), "b".into(), "c".into(), "t".into()],
            edges: vec![(0, 1), (0, 2), (1, 2), (1, 4), (2, 3), (3, 4)],
            labeling: Labeling::Edge(vec![0, 1, 2, 3, 4, 5]),
        });
        Theory::new(Language::AsPath, vars, payload).unwrap()
    }

    fn circuit_models(c: &Circuit) -> Vec<State> {
        let k = c.vars().len();
        (0..1usize << k)
            .map(|m| state_from_index(k, m))
            .filter(|y| c.evaluate(y).unwrap())
            .collect()
    }

    #[test]
    fn figd_is_already_normal_and_topological() {
        let t = figd();
        let n = normalize_graph(&t).unwrap();
        assert_eq!(n.digraph().unwrap().edges, t.digraph().unwrap().edges);
        assert_eq!(topo_edge_order(&t).unwrap(), vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn figd_compiles_to_its_three_paths() {
        let t = figd();
        let c = compile_aspath(&t).unwrap();
        let models = circuit_models(&c);
        assert_eq!(models, oracle_models(&t).unwrap());
        assert_eq!(models.len(), 3);
        assert!(models.contains(&State::from_selected(6, &[0, 3])));
        assert!(models.contains(&State::from_selected(6, &[0, 2, 4, 5])));
        assert!(models.contains(&State::from_selected(6, &[1, 4, 5])));
    }

    #[test]
    fn figd_structure_is_obdd() {
        let c = compile_aspath(&figd()).unwrap();
        let r = check_structure(&c);
        assert!(r.decomposable);
        assert_eq!(r.deterministic, Tristate::True);
        let order = r.obdd_order.expect("decision order exists");
        // Root decides the last edge in topological order, so with the
        // identity labeling the decided variables descend.
        assert!(order.windows(2).all(|w| w[0] > w[1]), "{order:?}");
        assert_eq!(order.first(), Some(&5));
    }

    #[test]
    fn single_edge_is_a_literal() {
        let vars = VariableSet::numbered(1).unwrap();
        let payload = Payload::Digraph(DirectedGraphPayload {
            vertices: vec!["s".into(), "t".into()],
            edges: vec![(0, 1)],
            labeling: Labeling::Edge(vec![0]),
        });
        let t = Theory::new(Language::AsPath, vars, payload).unwrap();
        let c = compile_aspath(&t).unwrap();
        assert_eq!(
            *c.node(c.root()),
            crate::circuit::Node::Lit {
                var: 0,
                positive: true
            }
        );
    }

    #[test]
    fn two_isolated_sources_merge_into_parallel_edges() {
        let vars = VariableSet::numbered(2).unwrap();
        let payload = Payload::Digraph(DirectedGraphPayload {
            vertices: vec!["s1".into(), "s2".into(), "t".into()],
            edges: vec![(0, 2), (1, 2)],
            labeling: Labeling::Edge(vec![0, 1]),
        });
        let t = Theory::new(Language::AsPath, vars, payload).unwrap();
        let n = normalize_graph(&t).unwrap();
        let g = n.digraph().unwrap();
        assert_eq!(g.edges.len(), 2);
        assert_eq!(g.edges[0], g.edges[1]);
        let c = compile_aspath(&t).unwrap();
        let models = circuit_models(&c);
        assert_eq!(models.len(), 2);
        assert_eq!(models, oracle_models(&t).unwrap());
    }

    #[test]
    fn trimmed_figd_is_smaller_than_untrimmed() {
        let t = figd();
        let trimmed = compile_aspath(&t).unwrap();
        let raw = compile_aspath_untrimmed(&t).unwrap();
        assert!(trimmed.wire_count() < raw.wire_count());
        for m in 0..64usize {
            let y = state_from_index(6, m);
            assert_eq!(raw.evaluate(&y).unwrap(), trimmed.evaluate(&y).unwrap());
        }
    }

    #[test]
    fn wire_bound_on_figd() {
        let t = figd();
        let c = compile_aspath(&t).unwrap();
        let g = t.digraph().unwrap();
        assert!(c.wire_count() <= 6 * g.vertices.len() * g.edges.len());
    }

    #[test]
    fn all_zero_is_never_a_model() {
        let t = figd();
        let c = compile_aspath(&t).unwrap();
        assert!(!c.evaluate(&State::zeros(6)).unwrap());
    }
}
