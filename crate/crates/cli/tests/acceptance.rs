//! Acceptance suite: one test per criterion, each printing a PASS line
//! with its measurements (visible with `cargo test --test acceptance --
//! --nocapture`).
//!
//! 1. Six-edge example DAG reproduced exactly by oracle and compiler.
//! 2. Query agreement sweep: >= 200 random theories across all eight
//!    languages, >= 10 probability vectors each, every tractable route
//!    against the oracle at the stated tolerances, under two minutes.
//! 3. Structural validity of every compiler output (plus OBDD orders for
//!    card/aspath).
//! 4. Wire-count bounds: card <= 6(l+1)n up to n = 200, aspath <= 6|V||E|
//!    on 30 random DAGs up to 100 edges, under thirty seconds.
//! 5. Scalability: 12x12 grid paths (compile + pqe + mpe < 5 s) and
//!    card(1000, eq, 500) (compile + pqe < 10 s).
//! 6. Complexity-map routing at the binary level: counting on match/hier
//!    exits 3 while mpe succeeds on both.
//! 7. Closed forms: binomial PQE, zero entropy for a single model, ln 3
//!    for the example DAG under uniform probabilities.
//! 8. Flow and matching primitives against exhaustive oracles, 100 seeds
//!    each.

use nesykc_core::compile::{compile_aspath, compile_card, compile_te_hier, compile_tree_hier};
use nesykc_core::oracle::{oracle_models, oracle_query, QueryKind, QueryResult, RankedState};
use nesykc_core::queries;
use nesykc_core::solve::closure::{closure_mpe, closure_thresh_enum, closure_top_k};
use nesykc_core::solve::flow::FlowNetwork;
use nesykc_core::solve::matching::{
    match_mpe, match_thresh_enum, match_top_k, matched_edges, max_weight_matching,
};
use nesykc_core::structure::{check_structure, Tristate};
use nesykc_core::theory::{CardOp, DirectedGraphPayload, Labeling, Payload};
use nesykc_core::{Circuit, Language, ProbabilityVector, State, Theory, VariableSet};
use nesykc_testgen::{circuit_models, fig_d, random_probs, random_theory, rng};
use rand::Rng;
use std::path::{Path, PathBuf};
use std::time::Instant;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn compile_for(t: &Theory) -> Circuit {
    match t.language() {
        Language::Card => compile_card(t).unwrap(),
        Language::AsPath => compile_aspath(t).unwrap(),
        Language::TreeHier => compile_tree_hier(t).unwrap(),
        Language::TeHier => compile_te_hier(t).unwrap(),
        other => panic!("no compiler for {other}"),
    }
}

fn oracle_pqe(t: &Theory, p: &ProbabilityVector) -> f64 {
    match oracle_query(t, p, QueryKind::Pqe).unwrap() {
        QueryResult::Probability(v) => v,
        _ => unreachable!(),
    }
}

fn oracle_eqe(t: &Theory, p: &ProbabilityVector) -> f64 {
    match oracle_query(t, p, QueryKind::Eqe).unwrap() {
        QueryResult::Entropy(v) => v,
        _ => unreachable!(),
    }
}

fn oracle_mpe(t: &Theory, p: &ProbabilityVector) -> (State, f64) {
    match oracle_query(t, p, QueryKind::Mpe).unwrap() {
        QueryResult::MostProbable { state, probability } => (state, probability),
        _ => unreachable!(),
    }
}

fn oracle_ranked(t: &Theory, p: &ProbabilityVector, kind: QueryKind) -> Vec<RankedState> {
    match oracle_query(t, p, kind).unwrap() {
        QueryResult::Ranked(v) => v,
        _ => unreachable!(),
    }
}

#[test]
fn criterion_1_example_dag_reproduction() {
    let start = Instant::now();
    let t = fig_d();
    let expected = vec![
        State::from_selected(6, &[1, 4, 5]),    // (Y2, Y5, Y6)
        State::from_selected(6, &[0, 2, 4, 5]), // (Y1, Y3, Y5, Y6)
        State::from_selected(6, &[0, 3]),       // (Y1, Y4)
    ];
    let models = oracle_models(&t).unwrap();
    assert_eq!(models.len(), 3);
    for m in &expected {
        assert!(models.contains(m), "oracle misses {m:?}");
    }
    let compiled = circuit_models(&compile_aspath(&t).unwrap());
    assert_eq!(compiled, models, "compiled circuit and oracle disagree");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("[acceptance] criterion 1 PASS — example DAG reproduced in {elapsed:?}");
}

#[test]
fn criterion_2_query_agreement_sweep() {
    let start = Instant::now();
    let mut r = rng(0xACCE97);
    let mut theories = 0usize;
    let mut checks = 0usize;
    for round in 0..26 {
        for &language in &Language::ALL {
            let t = random_theory(language, 15, &mut r);
            theories += 1;
            let models = oracle_models(&t).unwrap();
            let circuit = match language {
                Language::Card | Language::AsPath | Language::TreeHier | Language::TeHier => {
                    Some(compile_for(&t))
                }
                _ => None,
            };
            let solver = matches!(language, Language::Hier | Language::Match);
            for _ in 0..10 {
                let p = random_probs(t.vars().len(), &mut r);
                if let Some(c) = &circuit {
                    let want = oracle_pqe(&t, &p);
                    let got = queries::pqe(c, &p).unwrap();
                    assert!(
                        (got - want).abs() <= 1e-9 * want.max(1e-300),
                        "{language} round {round}: pqe {got} vs {want}"
                    );
                    let want = oracle_eqe(&t, &p);
                    let got = queries::eqe(c, &p).unwrap();
                    assert!(
                        (got - want).abs() <= 1e-9,
                        "{language}: eqe {got} vs {want}"
                    );

                    let (want_state, want_prob) = oracle_mpe(&t, &p);
                    let (state, prob) = queries::mpe(c, &p).unwrap();
                    assert_eq!(state, want_state, "{language}: mpe state");
                    assert_eq!(prob, want_prob, "{language}: mpe probability");
                    checks += 3;
                }
                if solver {
                    let (want_state, want_prob) = oracle_mpe(&t, &p);
                    let (state, prob) = match language {
                        Language::Hier => closure_mpe(&t, &p, &vec![None; p.len()]).unwrap(),
                        Language::Match => match_mpe(&t, &p, &vec![None; p.len()]).unwrap(),
                        _ => unreachable!(),
                    };
                    assert!(
                        (prob - want_prob).abs() <= 1e-9 * want_prob,
                        "{language}: solver mpe {prob} vs {want_prob}"
                    );
                    assert!(t.satisfies(&state).unwrap(), "{language}: mpe not a model");
                    if language == Language::Hier {
                        assert_eq!(state, want_state, "closure tie-break is lexicographic");
                    }
                    checks += 1;
                }
                // Enumerations: two thresholds and a top-3 per vector.
                if circuit.is_some() || solver {
                    let hi = models
                        .iter()
                        .map(|m| p.state_probability(m))
                        .fold(0.0f64, f64::max);
                    for threshold in [hi * 0.9, hi * 0.3] {
                        let want = oracle_ranked(&t, &p, QueryKind::Thresh(threshold));
                        let got = match language {
                            Language::Hier => closure_thresh_enum(&t, &p, threshold).unwrap(),
                            Language::Match => match_thresh_enum(&t, &p, threshold).unwrap(),
                            _ => queries::thresh_enum(circuit.as_ref().unwrap(), &p, threshold)
                                .unwrap(),
                        };
                        assert_eq!(got.len(), want.len(), "{language}: thresh size");
                        for (g, w) in got.iter().zip(&want) {
                            assert_eq!(g.state, w.state, "{language}: thresh set");
                        }
                        checks += 1;
                    }
                    let want = oracle_ranked(&t, &p, QueryKind::TopK(3));
                    let got = match language {
                        Language::Hier => closure_top_k(&t, &p, 3).unwrap(),
                        Language::Match => match_top_k(&t, &p, 3).unwrap(),
                        _ => queries::top_k(circuit.as_ref().unwrap(), &p, 3).unwrap(),
                    };
                    assert_eq!(got.len(), want.len());
                    for (g, w) in got.iter().zip(&want) {
                        assert!(
                            (g.probability - w.probability).abs() <= 1e-9 * w.probability,
                            "{language}: top-k probabilities"
                        );
                    }
                    checks += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(theories >= 200, "only {theories} theories");
    assert!(elapsed.as_secs_f64() < 120.0, "took {elapsed:?}");
    println!(
        "[acceptance] criterion 2 PASS — {theories} theories, {checks} query checks in {elapsed:?}"
    );
}

#[test]
fn criterion_3_structural_validity() {
    let mut r = rng(0x57A);
    let mut compiled = 0usize;
    for _ in 0..25 {
        for &language in &[
            Language::Card,
            Language::AsPath,
            Language::TreeHier,
            Language::TeHier,
        ] {
            let t = random_theory(language, 14, &mut r);
            let c = compile_for(&t);
            let rep = check_structure(&c);
            assert!(rep.decomposable, "{language}: not decomposable");
            assert_eq!(
                rep.deterministic,
                Tristate::True,
                "{language}: not deterministic"
            );
            if matches!(language, Language::Card | Language::AsPath) {
                assert!(rep.obdd_order.is_some(), "{language}: no OBDD order");
            }
            compiled += 1;
        }
    }
    // Larger instances than the sweep exercises.
    for (n, l) in [(120usize, 60usize), (200, 11)] {
        let t = Theory::card_numbered(n, CardOp::Eq, l).unwrap();
        let rep = check_structure(&compile_card(&t).unwrap());
        assert!(rep.decomposable && rep.deterministic.is_true() && rep.obdd_order.is_some());
        compiled += 1;
    }
    println!(
        "[acceptance] criterion 3 PASS — {compiled}/{compiled} compiler outputs structurally valid"
    );
}

#[test]
fn criterion_4_size_bounds() {
    let start = Instant::now();
    for n in 1..=200usize {
        for l in [0, 1, n / 2, n] {
            for op in [CardOp::Le, CardOp::Ge, CardOp::Eq] {
                let t = Theory::card_numbered(n, op, l).unwrap();
                let c = compile_card(&t).unwrap();
                assert!(
                    c.wire_count() <= 6 * (l + 1) * n,
                    "card({n}, {op:?}, {l}): {} wires",
                    c.wire_count()
                );
            }
        }
    }
    let mut r = rng(0x512E);
    for seed in 0..30 {
        let t = big_random_aspath(100, &mut r);
        let g = t.digraph().unwrap();
        let c = compile_aspath(&t).unwrap();
        assert!(
            c.wire_count() <= 6 * g.vertices.len() * g.edges.len(),
            "aspath seed {seed}: {} wires for |V|={} |E|={}",
            c.wire_count(),
            g.vertices.len(),
            g.edges.len()
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}");
    println!("[acceptance] criterion 4 PASS — card and aspath wire bounds hold ({elapsed:?})");
}

/// Random DAG with up to `max_edges` edges over enough vertices to stretch
/// the bound (vertices beyond the test generator's default scale).
fn big_random_aspath(max_edges: usize, r: &mut nesykc_testgen::TestRng) -> Theory {
    let nv = r.gen_range(8..=24);
    let mut pairs = Vec::new();
    for u in 0..nv {
        for v in u + 1..nv {
            pairs.push((u, v));
        }
    }
    use rand::seq::SliceRandom;
    pairs.shuffle(r);
    let k = r.gen_range(4..=max_edges.min(pairs.len()));
    let edges: Vec<(usize, usize)> = pairs.into_iter().take(k).collect();
    let vars = VariableSet::numbered(k).unwrap();
    let payload = Payload::Digraph(DirectedGraphPayload {
        vertices: (0..nv).map(|i| format!("v{i}")).collect(),
        edges,
        labeling: Labeling::Edge((0..k).collect()),
    });
    Theory::new(Language::AsPath, vars, payload).unwrap()
}

/// 12x12 grid with right/down/diagonal edges: the acyclic orientation of
/// the terrain-map path task.
fn grid_12x12() -> Theory {
    let n = 12usize;
    let idx = |r: usize, c: usize| r * n + c;
    let vertices: Vec<String> = (0..n * n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for r in 0..n {
        for c in 0..n {
            if c + 1 < n {
                edges.push((idx(r, c), idx(r, c + 1)));
            }
            if r + 1 < n {
                edges.push((idx(r, c), idx(r + 1, c)));
            }
            if r + 1 < n && c + 1 < n {
                edges.push((idx(r, c), idx(r + 1, c + 1)));
            }
        }
    }
    let k = edges.len();
    let vars = VariableSet::numbered(k).unwrap();
    let payload = Payload::Digraph(DirectedGraphPayload {
        vertices,
        edges,
        labeling: Labeling::Edge((0..k).collect()),
    });
    Theory::new(Language::AsPath, vars, payload).unwrap()
}

#[test]
fn criterion_5_scalability() {
    let start = Instant::now();
    let grid = grid_12x12();
    let k = grid.vars().len();
    let c = compile_aspath(&grid).unwrap();
    let p = ProbabilityVector::uniform(k, 0.5).unwrap();
    let pqe = queries::pqe(&c, &p).unwrap();
    let (state, _) = queries::mpe(&c, &p).unwrap();
    assert!(grid.satisfies(&state).unwrap(), "grid mpe must be a path");
    assert!(pqe > 0.0);
    let grid_time = start.elapsed();
    assert!(grid_time.as_secs_f64() < 5.0, "grid took {grid_time:?}");

    let start = Instant::now();
    let card = Theory::card_numbered(1000, CardOp::Eq, 500).unwrap();
    let c = compile_card(&card).unwrap();
    let p = ProbabilityVector::uniform(1000, 0.5).unwrap();
    let v = queries::pqe(&c, &p).unwrap();
    // Independent route to C(1000, 500) / 2^1000: fold one binomial factor
    // and one 1/4 per step.
    let want = (0..500).fold(1.0f64, |acc, i| {
        acc * (1000 - i) as f64 / ((i + 1) as f64 * 4.0)
    });
    assert!((v - want).abs() <= 1e-12, "{v} vs {want}");
    let card_time = start.elapsed();
    assert!(card_time.as_secs_f64() < 10.0, "card took {card_time:?}");
    println!(
        "[acceptance] criterion 5 PASS — 12x12 grid ({} edges) in {grid_time:?}, card(1000,eq,500) in {card_time:?}",
        k
    );
}

#[test]
fn criterion_6_complexity_map_routing() {
    let run = |args: &[&str]| {
        std::process::Command::new(env!("CARGO_BIN_EXE_nesykc"))
            .args(args)
            .output()
            .expect("binary runs")
    };
    let match_theory = fixture("match_path.json");
    let match_probs = fixture("match_probs.json");
    let hier_theory = fixture("hier_edge.json");
    let hier_probs = fixture("hier_probs.json");

    let pqe_match = run(&[
        "query",
        "pqe",
        "--theory",
        match_theory.to_str().unwrap(),
        "--probs",
        match_probs.to_str().unwrap(),
    ]);
    let pqe_hier = run(&[
        "query",
        "pqe",
        "--theory",
        hier_theory.to_str().unwrap(),
        "--probs",
        hier_probs.to_str().unwrap(),
    ]);
    let mpe_match = run(&[
        "query",
        "mpe",
        "--theory",
        match_theory.to_str().unwrap(),
        "--probs",
        match_probs.to_str().unwrap(),
    ]);
    let mpe_hier = run(&[
        "query",
        "mpe",
        "--theory",
        hier_theory.to_str().unwrap(),
        "--probs",
        hier_probs.to_str().unwrap(),
    ]);
    assert_eq!(pqe_match.status.code(), Some(3), "pqe on match must refuse");
    assert_eq!(pqe_hier.status.code(), Some(3), "pqe on hier must refuse");
    assert_eq!(mpe_match.status.code(), Some(0), "mpe on match must run");
    assert_eq!(mpe_hier.status.code(), Some(0), "mpe on hier must run");
    println!(
        "[acceptance] criterion 6 PASS — counting refused (exit 3) and optimisation served (exit 0) on match and hier"
    );
}

#[test]
fn criterion_7_closed_forms() {
    fn binomial(n: usize, k: usize) -> u128 {
        let mut c: u128 = 1;
        for i in 0..k.min(n - k) {
            c = c * (n - i) as u128 / (i + 1) as u128;
        }
        c
    }
    for n in 1..=30usize {
        let p = ProbabilityVector::uniform(n, 0.5).unwrap();
        for l in 0..=n {
            let t = Theory::card_numbered(n, CardOp::Eq, l).unwrap();
            let c = compile_card(&t).unwrap();
            let got = queries::pqe(&c, &p).unwrap();
            let want = binomial(n, l) as f64 / 2f64.powi(n as i32);
            assert!(
                (got - want).abs() <= 1e-9 * want,
                "card({n}, eq, {l}): {got} vs {want}"
            );
        }
    }

    // A single-model circuit has zero conditional entropy.
    let t = Theory::card_numbered(7, CardOp::Le, 0).unwrap();
    let c = compile_card(&t).unwrap();
    let p = ProbabilityVector::uniform(7, 0.37).unwrap();
    assert!(queries::eqe(&c, &p).unwrap().abs() <= 1e-9);

    // Uniform probabilities make the three example-DAG paths equiprobable.
    let c = compile_aspath(&fig_d()).unwrap();
    let p = ProbabilityVector::uniform(6, 0.5).unwrap();
    assert!((queries::eqe(&c, &p).unwrap() - 3f64.ln()).abs() <= 1e-9);
    println!("[acceptance] criterion 7 PASS — binomial PQE (n <= 30), point entropy, ln 3 on the example DAG");
}

#[test]
fn criterion_8_flow_and_matching_oracles() {
    let mut r = rng(0x0F10);
    for seed in 0..100 {
        let n = r.gen_range(3..=10);
        let arc_count = r.gen_range(1..=3 * n);
        let arcs: Vec<(usize, usize, f64)> = (0..arc_count)
            .filter_map(|_| {
                let u = r.gen_range(0..n);
                let v = r.gen_range(0..n);
                (u != v).then(|| (u, v, r.gen_range(0.0..8.0)))
            })
            .collect();
        let mut net = FlowNetwork::new(n, 0, 1);
        for &(u, v, cap) in &arcs {
            net.add_arc(u, v, cap);
        }
        let (flow, _) = net.min_cut();
        let brute = exhaustive_min_cut(n, &arcs);
        assert!(
            (flow - brute).abs() <= 1e-9 * brute.max(1.0),
            "flow seed {seed}: {flow} vs {brute}"
        );
    }
    for seed in 0..100 {
        let n = r.gen_range(2..=8);
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                pairs.push((u, v));
            }
        }
        use rand::seq::SliceRandom;
        pairs.shuffle(&mut r);
        let m = r.gen_range(1..=pairs.len().min(10));
        let edges: Vec<(usize, usize, f64)> = pairs
            .into_iter()
            .take(m)
            .map(|(u, v)| (u, v, r.gen_range(-3.0..6.0)))
            .collect();
        let mate = max_weight_matching(n, &edges);
        let got: f64 = matched_edges(&mate, &edges)
            .iter()
            .map(|&k| edges[k].2)
            .sum();
        let want = exhaustive_max_matching(n, &edges);
        assert!(
            (got - want).abs() <= 1e-9 * want.abs().max(1.0),
            "matching seed {seed}: {got} vs {want}"
        );
    }
    println!("[acceptance] criterion 8 PASS — min-cut and max-weight matching match exhaustive search, 100 seeds each");
}

fn exhaustive_min_cut(node_count: usize, arcs: &[(usize, usize, f64)]) -> f64 {
    let free: Vec<usize> = (2..node_count).collect();
    let mut best = f64::INFINITY;
    for mask in 0..1usize << free.len() {
        let mut side = vec![false; node_count];
        side[0] = true;
        for (bit, &v) in free.iter().enumerate() {
            side[v] = mask >> bit & 1 == 1;
        }
        let cut: f64 = arcs
            .iter()
            .filter(|&&(u, v, _)| side[u] && !side[v])
            .map(|&(_, _, c)| c)
            .sum();
        best = best.min(cut);
    }
    best
}

fn exhaustive_max_matching(n: usize, edges: &[(usize, usize, f64)]) -> f64 {
    let mut best = 0.0f64;
    for mask in 0..1usize << edges.len() {
        let mut used = vec![false; n];
        let mut ok = true;
        let mut w = 0.0;
        for (e, &(u, v, wt)) in edges.iter().enumerate() {
            if mask >> e & 1 == 1 {
                if used[u] || used[v] {
                    ok = false;
                    break;
                }
                used[u] = true;
                used[v] = true;
                w += wt;
            }
        }
        if ok {
            best = best.max(w);
        }
    }
    best
}
