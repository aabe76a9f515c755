//! Seeded random theories, probability vectors and circuits shared by the
//! workspace test suites; everything is deterministic given the seed.

use nesykc_core::circuit::{Circuit, CircuitBuilder, NodeId};
use nesykc_core::oracle::state_from_index;
use nesykc_core::theory::{
    CardOp, CardPayload, DirectedGraphPayload, HexPayload, Labeling, Payload,
    UndirectedGraphPayload,
};
use nesykc_core::{Language, ProbabilityVector, State, Theory, VariableSet};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The running six-edge example DAG: one source `s`, one sink `t`, and
/// exactly three total simple paths.
pub fn fig_d() -> Theory {
    let vars = VariableSet::numbered(6).unwrap();
    let payload = Payload::Digraph(DirectedGraphPayload {
        vertices: vec!["s".into(), "a".into(), "b".into(), "c".into(), "t".into()],
        edges: vec![(0, 1), (0, 2), (1, 2), (1, 4), (2, 3), (3, 4)],
        labeling: Labeling::Edge(vec![0, 1, 2, 3, 4, 5]),
    });
    Theory::new(Language::AsPath, vars, payload).unwrap()
}

/// The probability vector used with [`fig_d`] throughout the suites.
pub fn fig_d_probs() -> ProbabilityVector {
    ProbabilityVector::new(vec![0.9, 0.2, 0.6, 0.3, 0.8, 0.7]).unwrap()
}

pub fn random_probs(k: usize, rng: &mut TestRng) -> ProbabilityVector {
    ProbabilityVector::new((0..k).map(|_| rng.gen_range(0.02..0.98)).collect()).unwrap()
}

/// A shuffled variable labeling so that compiled circuits exercise
/// non-identity bijections.
fn shuffled_labels(k: usize, rng: &mut TestRng) -> Vec<usize> {
    let mut labels: Vec<usize> = (0..k).collect();
    labels.shuffle(rng);
    labels
}

fn vertex_names(nv: usize) -> Vec<String> {
    (0..nv).map(|i| format!("v{i}")).collect()
}

/// Random theory of the given language with at most `max_vars` variables
/// (at least one).
pub fn random_theory(language: Language, max_vars: usize, rng: &mut TestRng) -> Theory {
    match language {
        Language::Card => {
            let n = rng.gen_range(1..=max_vars);
            let op = *[CardOp::Le, CardOp::Ge, CardOp::Eq].choose(rng).unwrap();
            let bound = rng.gen_range(0..=n);
            let vars = VariableSet::numbered(n).unwrap();
            Theory::new(
                Language::Card,
                vars,
                Payload::Card(CardPayload { n, op, bound }),
            )
            .unwrap()
        }
        Language::Hier | Language::Hex => {
            let nv = rng.gen_range(1..=max_vars);
            let mut edges = Vec::new();
            for u in 0..nv {
                for v in u + 1..nv {
                    if rng.gen_bool(0.3) {
                        edges.push((u, v));
                    }
                }
            }
            let vars = VariableSet::numbered(nv).unwrap();
            let labels = shuffled_labels(nv, rng);
            if language == Language::Hier {
                let payload = Payload::Digraph(DirectedGraphPayload {
                    vertices: vertex_names(nv),
                    edges,
                    labeling: Labeling::Vertex(labels),
                });
                Theory::new(Language::Hier, vars, payload).unwrap()
            } else {
                let mut exclusions = Vec::new();
                for u in 0..nv {
                    for v in u + 1..nv {
                        if rng.gen_bool(0.2) {
                            exclusions.push((u, v));
                        }
                    }
                }
                let payload = Payload::Hex(HexPayload {
                    vertices: vertex_names(nv),
                    hierarchy_edges: edges,
                    exclusion_edges: exclusions,
                    vertex_vars: labels,
                });
                Theory::new(Language::Hex, vars, payload).unwrap()
            }
        }
        Language::TreeHier | Language::TeHier => {
            let nv = rng.gen_range(1..=max_vars);
            let mut edges = Vec::new();
            for v in 1..nv {
                edges.push((rng.gen_range(0..v), v));
            }
            let vars = VariableSet::numbered(nv).unwrap();
            let payload = Payload::Digraph(DirectedGraphPayload {
                vertices: vertex_names(nv),
                edges,
                labeling: Labeling::Vertex(shuffled_labels(nv, rng)),
            });
            Theory::new(language, vars, payload).unwrap()
        }
        Language::AsPath => {
            let (nv, edges) = random_dag_edges(max_vars, rng);
            let k = edges.len();
            let vars = VariableSet::numbered(k).unwrap();
            let payload = Payload::Digraph(DirectedGraphPayload {
                vertices: vertex_names(nv),
                edges,
                labeling: Labeling::Edge(shuffled_labels(k, rng)),
            });
            Theory::new(Language::AsPath, vars, payload).unwrap()
        }
        Language::SPath => {
            // Arbitrary digraph; cycles allowed.
            let nv = rng.gen_range(2..=(max_vars + 1).min(8));
            let mut pairs = Vec::new();
            for u in 0..nv {
                for v in 0..nv {
                    if u != v {
                        pairs.push((u, v));
                    }
                }
            }
            pairs.shuffle(rng);
            let k = rng.gen_range(1..=max_vars.min(pairs.len()));
            let edges: Vec<(usize, usize)> = pairs.into_iter().take(k).collect();
            let vars = VariableSet::numbered(k).unwrap();
            let payload = Payload::Digraph(DirectedGraphPayload {
                vertices: vertex_names(nv),
                edges,
                labeling: Labeling::Edge(shuffled_labels(k, rng)),
            });
            Theory::new(Language::SPath, vars, payload).unwrap()
        }
        Language::Match => {
            let nv = rng.gen_range(2..=(max_vars + 1).min(9));
            let mut pairs = Vec::new();
            for u in 0..nv {
                for v in u + 1..nv {
                    pairs.push((u, v));
                }
            }
            pairs.shuffle(rng);
            let k = rng.gen_range(1..=max_vars.min(pairs.len()));
            let edges: Vec<(usize, usize)> = pairs.into_iter().take(k).collect();
            let vars = VariableSet::numbered(k).unwrap();
            let payload = Payload::Ugraph(UndirectedGraphPayload {
                vertices: vertex_names(nv),
                edges,
                edge_vars: shuffled_labels(k, rng),
            });
            Theory::new(Language::Match, vars, payload).unwrap()
        }
    }
}

/// Random DAG with at most `max_edges` edges (at least one); multiple
/// sources and sinks are likely.
pub fn random_dag_edges(max_edges: usize, rng: &mut TestRng) -> (usize, Vec<(usize, usize)>) {
    let nv = rng.gen_range(2..=(max_edges + 1).min(10));
    let mut pairs = Vec::new();
    for u in 0..nv {
        for v in u + 1..nv {
            pairs.push((u, v));
        }
    }
    pairs.shuffle(rng);
    let k = rng.gen_range(1..=max_edges.min(pairs.len()));
    (nv, pairs.into_iter().take(k).collect())
}

/// Random aspath theory (wrapper kept for call-site clarity).
pub fn random_aspath(max_edges: usize, rng: &mut TestRng) -> Theory {
    random_theory(Language::AsPath, max_edges, rng)
}

/// Random OBDD-shaped d-DNNF over `k` variables with DAG sharing (a few
/// distinct sub-circuits per level, so size stays linear in `k`); variables
/// may be skipped along branches, so the result is usually not smooth.
pub fn random_obdd(k: usize, rng: &mut TestRng) -> Circuit {
    const BUCKETS: usize = 3;
    let vars = VariableSet::numbered(k).unwrap();
    let mut b = CircuitBuilder::new(vars);
    let mut memo: Vec<[Option<NodeId>; BUCKETS]> = vec![[None; BUCKETS]; k + 1];
    fn rec(
        b: &mut CircuitBuilder,
        memo: &mut Vec<[Option<NodeId>; BUCKETS]>,
        k: usize,
        i: usize,
        bucket: usize,
        rng: &mut TestRng,
    ) -> NodeId {
        if let Some(id) = memo[i][bucket] {
            return id;
        }
        let id = if i >= k {
            if rng.gen_bool(0.7) {
                b.t()
            } else {
                b.f()
            }
        } else if rng.gen_bool(0.25) {
            // Skip this variable entirely along this branch.
            rec(b, memo, k, i + 1, rng.gen_range(0..BUCKETS), rng)
        } else {
            let hi = rec(b, memo, k, i + 1, rng.gen_range(0..BUCKETS), rng);
            let lo = rec(b, memo, k, i + 1, rng.gen_range(0..BUCKETS), rng);
            b.decision(i, hi, lo)
        };
        memo[i][bucket] = Some(id);
        id
    }
    let root = rec(&mut b, &mut memo, k, 0, 0, rng);
    b.finish(root)
}

/// All `2^k` states accepted by the circuit, in lexicographic order.
pub fn circuit_models(c: &Circuit) -> Vec<State> {
    let k = c.vars().len();
    assert!(k <= 22, "model enumeration wants a small circuit");
    (0..1usize << k)
        .map(|m| state_from_index(k, m))
        .filter(|y| c.evaluate(y).unwrap())
        .collect()
}
