//! MPE and ranked enumeration for DAG hierarchical theories via maximum
//! weight closure, reduced to min-cut (project-selection style).
//!
//! Vertices weigh their logits; the positive side hangs off the source, the
//! negative side feeds the sink, and every hierarchy edge `(parent, child)`
//! becomes an infinite arc `child -> parent` so that selecting a child
//! pulls its parent in. The minimal min-cut source side is then the
//! lexicographically smallest maximum-probability closure.

use crate::oracle::{cmp_ranked, RankedState};
use crate::prob::ProbabilityVector;
use crate::solve::flow::FlowNetwork;
use crate::solve::lawler::{self, StopRule};
use crate::solve::SolveError;
use crate::theory::{DirectedGraphPayload, Labeling, Language, Theory};
use crate::vars::State;
use alloc::vec;
use alloc::vec::Vec;

struct ClosureInstance<'a> {
    graph: &'a DirectedGraphPayload,
    vertex_vars: &'a [usize],
    /// Logit weight per vertex.
    weights: Vec<f64>,
    inf: f64,
}

fn instance<'a>(t: &'a Theory, p: &ProbabilityVector) -> Result<ClosureInstance<'a>, SolveError> {
    if !matches!(t.language(), Language::Hier | Language::TreeHier) {
        return Err(SolveError::WrongLanguage {
            expected: "hier",
            got: t.language(),
        });
    }
    let graph = t.digraph().expect("hier payload is a digraph");
    let vertex_vars = match &graph.labeling {
        Labeling::Vertex(vs) => vs.as_slice(),
        Labeling::Edge(_) => unreachable!("validated at construction"),
    };
    if p.len() != t.vars().len() {
        return Err(SolveError::DimensionMismatch {
            expected: t.vars().len(),
            got: p.len(),
        });
    }
    let weights: Vec<f64> = vertex_vars.iter().map(|&v| p.logit_of(v)).collect();
    let inf = weights.iter().map(|w| w.abs()).sum::<f64>() + 1.0;
    Ok(ClosureInstance {
        graph,
        vertex_vars,
        weights,
        inf,
    })
}

/// Forced-1 vertices drag in all their ancestors; a forced-0 ancestor makes
/// the subspace empty.
fn forcing_consistent(inst: &ClosureInstance<'_>, forced: &[Option<bool>]) -> bool {
    let nv = inst.graph.vertices.len();
    let mut must = vec![false; nv];
    let mut stack: Vec<usize> = (0..nv)
        .filter(|&v| forced[inst.vertex_vars[v]] == Some(true))
        .collect();
    while let Some(v) = stack.pop() {
        if must[v] {
            continue;
        }
        must[v] = true;
        for &(parent, child) in &inst.graph.edges {
            if child == v && !must[parent] {
                stack.push(parent);
            }
        }
    }
    (0..nv).all(|v| !(must[v] && forced[inst.vertex_vars[v]] == Some(false)))
}

fn solve_closure(inst: &ClosureInstance<'_>, forced: &[Option<bool>]) -> Option<State> {
    if !forcing_consistent(inst, forced) {
        return None;
    }
    let nv = inst.graph.vertices.len();
    // Node layout: 0 = source, 1 = sink, 2 + v = vertex v.
    let mut net = FlowNetwork::new(nv + 2, 0, 1);
    for v in 0..nv {
        let w = inst.weights[v];
        match forced[inst.vertex_vars[v]] {
            Some(true) => {
                net.add_arc(0, 2 + v, inst.inf);
                if w < 0.0 {
                    net.add_arc(2 + v, 1, -w);
                }
            }
            Some(false) => {
                net.add_arc(2 + v, 1, inst.inf);
                if w > 0.0 {
                    net.add_arc(0, 2 + v, w);
                }
            }
            None => {
                if w > 0.0 {
                    net.add_arc(0, 2 + v, w);
                } else if w < 0.0 {
                    net.add_arc(2 + v, 1, -w);
                }
            }
        }
    }
    for &(parent, child) in &inst.graph.edges {
        net.add_arc(2 + child, 2 + parent, inst.inf);
    }
    let (_, side) = net.min_cut();

    let k = forced.len();
    let mut bits = vec![false; k];
    for v in 0..nv {
        if side[2 + v] {
            bits[inst.vertex_vars[v]] = true;
        }
    }
    let state = State::new(bits);
    // The source side of a min cut is always a closure respecting the
    // forced literals; anything else is a bug in the reduction.
    assert!(
        inst.graph
            .edges
            .iter()
            .all(|&(parent, child)| !state.get(inst.vertex_vars[child])
                || state.get(inst.vertex_vars[parent])),
        "min-cut side violates the closure property"
    );
    assert!(
        forced
            .iter()
            .enumerate()
            .all(|(i, f)| f.is_none_or(|b| state.get(i) == b)),
        "min-cut side violates a forced literal"
    );
    Some(state)
}

/// Most probable closure respecting `forced` (indexed by variable), with
/// its probability. Ties prefer unselected vertices, which yields the
/// lexicographically smallest optimal closure.
pub fn closure_mpe(
    t: &Theory,
    p: &ProbabilityVector,
    forced: &[Option<bool>],
) -> Result<(State, f64), SolveError> {
    let inst = instance(t, p)?;
    if forced.len() != t.vars().len() {
        return Err(SolveError::DimensionMismatch {
            expected: t.vars().len(),
            got: forced.len(),
        });
    }
    match solve_closure(&inst, forced) {
        None => Err(SolveError::InconsistentForcing),
        Some(state) => {
            let prob = p.state_probability(&state);
            Ok((state, prob))
        }
    }
}

/// All closures with probability at least `threshold`, by decreasing
/// probability then lexicographic order.
pub fn closure_thresh_enum(
    t: &Theory,
    p: &ProbabilityVector,
    threshold: f64,
) -> Result<Vec<RankedState>, SolveError> {
    if threshold.is_nan() || threshold <= 0.0 {
        return Err(SolveError::BadThreshold(threshold));
    }
    let inst = instance(t, p)?;
    let mut out = lawler::enumerate(
        t.vars().len(),
        |forced| {
            solve_closure(&inst, forced).map(|s| {
                let prob = p.state_probability(&s);
                (s, prob)
            })
        },
        StopRule::Threshold(threshold),
    );
    out.sort_by(cmp_ranked);
    Ok(out)
}

/// First `k` closures by decreasing probability.
pub fn closure_top_k(
    t: &Theory,
    p: &ProbabilityVector,
    k: usize,
) -> Result<Vec<RankedState>, SolveError> {
    let inst = instance(t, p)?;
    Ok(lawler::enumerate(
        t.vars().len(),
        |forced| {
            solve_closure(&inst, forced).map(|s| {
                let prob = p.state_probability(&s);
                (s, prob)
            })
        },
        StopRule::Count(k),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prob::sigmoid;
    use crate::theory::{DirectedGraphPayload, Payload};
    use crate::vars::VariableSet;

    fn edge_theory() -> Theory {
        let vars = VariableSet::new(["u", "v"]).unwrap();
        let payload = Payload::Digraph(DirectedGraphPayload {
            vertices: vec!["u".into(), "v".into()],
            edges: vec![(0, 1)],
            labeling: Labeling::Vertex(vec![0, 1]),
        });
        Theory::new(Language::Hier, vars, payload).unwrap()
    }

    fn probs_from_logits(ws: &[f64]) -> ProbabilityVector {
        ProbabilityVector::new(ws.iter().map(|&w| sigmoid(w)).collect()).unwrap()
    }

    #[test]
    fn positive_weights_take_both() {
        let t = edge_theory();
        let p = probs_from_logits(&[1.0, 2.0]);
        let (state, _) = closure_mpe(&t, &p, &[None, None]).unwrap();
        assert_eq!(state, State::new(vec![true, true]));
    }

    #[test]
    fn negative_parent_blocks_child() {
        let t = edge_theory();
        let p = probs_from_logits(&[-3.0, 2.0]);
        let (state, _) = closure_mpe(&t, &p, &[None, None]).unwrap();
        assert_eq!(state, State::new(vec![false, false]));
    }

    #[test]
    fn uniform_ties_prefer_empty() {
        let t = edge_theory();
        let p = ProbabilityVector::uniform(2, 0.5).unwrap();
        let (state, prob) = closure_mpe(&t, &p, &[None, None]).unwrap();
        assert_eq!(state, State::new(vec![false, false]));
        assert!((prob - 0.25).abs() < 1e-15);
    }

    #[test]
    fn inconsistent_forcing_rejected() {
        let t = edge_theory();
        let p = ProbabilityVector::uniform(2, 0.5).unwrap();
        // Child forced in, parent forced out.
        assert_eq!(
            closure_mpe(&t, &p, &[Some(false), Some(true)]),
            Err(SolveError::InconsistentForcing)
        );
    }

    #[test]
    fn uniform_enumeration_lists_all_closures() {
        let t = edge_theory();
        let p = ProbabilityVector::uniform(2, 0.5).unwrap();
        let all = closure_thresh_enum(&t, &p, 0.2).unwrap();
        assert_eq!(all.len(), 3);
        let none = closure_thresh_enum(&t, &p, 0.3).unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn scaling_logits_keeps_the_argmax() {
        let t = edge_theory();
        let p1 = probs_from_logits(&[-1.0, 2.0]);
        let p2 = probs_from_logits(&[-2.5, 5.0]);
        let (s1, _) = closure_mpe(&t, &p1, &[None, None]).unwrap();
        let (s2, _) = closure_mpe(&t, &p2, &[None, None]).unwrap();
        assert_eq!(s1, s2);
    }
}
