//! End-to-end tests against the built binary: routing, exit codes, output
//! determinism, and the file formats.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nesykc"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn assert_code(out: &Output, code: i32) {
    assert_eq!(
        out.status.code(),
        Some(code),
        "stdout: {} stderr: {}",
        stdout_of(out),
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn compile_figd_round_trips_and_checks_as_obdd() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("figd.nnf");
    let figd = fixture("figd.json");
    let out = run(&[
        "compile",
        "--theory",
        figd.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_code(&out, 0);

    // The emitted file parses back and re-emits identically.
    let text = std::fs::read_to_string(&out_path).unwrap();
    let circuit = nesykc::formats::parse_nnf(&text).unwrap();
    assert_eq!(nesykc::formats::emit_nnf(&circuit), text);

    let check = run(&["check", "--circuit", out_path.to_str().unwrap()]);
    assert_code(&check, 0);
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&check)).unwrap();
    assert_eq!(report["decomposable"], true);
    assert_eq!(report["deterministic"], true);
    assert!(report["obdd_order"].is_array(), "aspath circuits are OBDDs");
}

#[test]
fn query_circuit_and_theory_agree_with_oracle_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("figd.nnf");
    run(&[
        "compile",
        "--theory",
        fixture("figd.json").to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    // Circuit files carry variables Y1..Yk, matching the fixture's names.
    let via_circuit = run(&[
        "query",
        "pqe",
        "--circuit",
        out_path.to_str().unwrap(),
        "--probs",
        fixture("figd_probs.json").to_str().unwrap(),
    ]);
    let via_theory = run(&[
        "query",
        "pqe",
        "--theory",
        fixture("figd.json").to_str().unwrap(),
        "--probs",
        fixture("figd_probs.json").to_str().unwrap(),
    ]);
    let via_oracle = run(&[
        "oracle",
        "pqe",
        "--theory",
        fixture("figd.json").to_str().unwrap(),
        "--probs",
        fixture("figd_probs.json").to_str().unwrap(),
    ]);
    assert_code(&via_circuit, 0);
    assert_code(&via_theory, 0);
    assert_code(&via_oracle, 0);
    assert_eq!(
        stdout_of(&via_circuit),
        "{\"query\":\"pqe\",\"value\":0.177664}\n"
    );
    assert_eq!(stdout_of(&via_circuit), stdout_of(&via_theory));
    assert_eq!(stdout_of(&via_theory), stdout_of(&via_oracle));
}

#[test]
fn outputs_are_deterministic_byte_streams() {
    let figd = fixture("figd.json");
    let probs = fixture("figd_probs.json");
    let args = [
        "query",
        "mpe",
        "--theory",
        figd.to_str().unwrap(),
        "--probs",
        probs.to_str().unwrap(),
    ];
    let first = run(&args);
    let second = run(&args);
    assert_code(&first, 0);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(
        stdout_of(&first),
        "{\"query\":\"mpe\",\"value\":0.169344,\"state\":[\"Y1\",\"Y3\",\"Y5\",\"Y6\"]}\n"
    );
}

#[test]
fn thresh_lists_states_in_order() {
    let out = run(&[
        "query",
        "thresh",
        "--theory",
        fixture("figd.json").to_str().unwrap(),
        "--probs",
        fixture("figd_probs.json").to_str().unwrap(),
        "--threshold",
        "0.003",
    ]);
    assert_code(&out, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let states = v["states"].as_array().unwrap();
    assert_eq!(states.len(), 3);
    assert_eq!(states[0]["value"], 0.169344);
    assert_eq!(states[1]["value"], 0.005184);
    assert_eq!(states[2]["value"], 0.003136);
}

#[test]
fn eqe_log_base_switches_units() {
    let nats = run(&[
        "query",
        "eqe",
        "--theory",
        fixture("figd.json").to_str().unwrap(),
        "--probs",
        fixture("figd_uniform.json").to_str().unwrap(),
    ]);
    let bits = run(&[
        "query",
        "eqe",
        "--theory",
        fixture("figd.json").to_str().unwrap(),
        "--probs",
        fixture("figd_uniform.json").to_str().unwrap(),
        "--log-base",
        "2",
    ]);
    assert_code(&nats, 0);
    assert_code(&bits, 0);
    let n: serde_json::Value = serde_json::from_str(&stdout_of(&nats)).unwrap();
    let b: serde_json::Value = serde_json::from_str(&stdout_of(&bits)).unwrap();
    assert!((n["value"].as_f64().unwrap() - 3f64.ln()).abs() < 1e-9);
    assert!((b["value"].as_f64().unwrap() - 3f64.log2()).abs() < 1e-9);
}

#[test]
fn intractable_routes_exit_three() {
    // Counting on matchings.
    let out = run(&[
        "query",
        "pqe",
        "--theory",
        fixture("match_path.json").to_str().unwrap(),
        "--probs",
        fixture("match_probs.json").to_str().unwrap(),
    ]);
    assert_code(&out, 3);
    // Counting on DAG hierarchies.
    let out = run(&[
        "query",
        "eqe",
        "--theory",
        fixture("hier_edge.json").to_str().unwrap(),
        "--probs",
        fixture("hier_probs.json").to_str().unwrap(),
    ]);
    assert_code(&out, 3);
    // Everything on hex and spath.
    let out = run(&[
        "query",
        "mpe",
        "--theory",
        fixture("hex_pair.json").to_str().unwrap(),
        "--probs",
        fixture("hex_probs.json").to_str().unwrap(),
    ]);
    assert_code(&out, 3);
    let out = run(&[
        "query",
        "mpe",
        "--theory",
        fixture("spath_cycle.json").to_str().unwrap(),
        "--probs",
        fixture("spath_probs.json").to_str().unwrap(),
    ]);
    assert_code(&out, 3);
    // Compilation refusals.
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("x.nnf");
    let out = run(&[
        "compile",
        "--theory",
        fixture("match_path.json").to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_code(&out, 3);
    let out = run(&[
        "compile",
        "--theory",
        fixture("spath_cycle.json").to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_code(&out, 3);
}

#[test]
fn solver_routes_succeed_on_hier_and_match() {
    let out = run(&[
        "query",
        "mpe",
        "--theory",
        fixture("match_path.json").to_str().unwrap(),
        "--probs",
        fixture("match_probs.json").to_str().unwrap(),
    ]);
    assert_code(&out, 0);
    assert_eq!(
        stdout_of(&out),
        "{\"query\":\"mpe\",\"value\":0.324,\"state\":[\"e1\",\"e3\"]}\n"
    );

    let mpe = run(&[
        "query",
        "mpe",
        "--theory",
        fixture("hier_edge.json").to_str().unwrap(),
        "--probs",
        fixture("hier_probs.json").to_str().unwrap(),
    ]);
    let oracle = run(&[
        "oracle",
        "mpe",
        "--theory",
        fixture("hier_edge.json").to_str().unwrap(),
        "--probs",
        fixture("hier_probs.json").to_str().unwrap(),
    ]);
    assert_code(&mpe, 0);
    assert_eq!(stdout_of(&mpe), stdout_of(&oracle));
}

#[test]
fn hier_compiles_to_two_horn_cnf() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("hier.nnf");
    let out = run(&[
        "compile",
        "--theory",
        fixture("hier_edge.json").to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_code(&out, 0);
    let cnf = std::fs::read_to_string(dir.path().join("hier.cnf")).unwrap();
    assert_eq!(cnf, "p cnf 2 1\n1 -2 0\n");
}

#[test]
fn check_flags_the_shared_literal_circuit() {
    let out = run(&[
        "check",
        "--circuit",
        fixture("shared_literal.nnf").to_str().unwrap(),
    ]);
    assert_code(&out, 0);
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(report["nnf"], true);
    assert_eq!(report["decomposable"], false);
    assert_eq!(report["deterministic"], false);
    assert_eq!(report["obdd_order"], serde_json::Value::Null);
}

#[test]
fn malformed_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.nnf");
    std::fs::write(&empty, "").unwrap();
    assert_code(&run(&["check", "--circuit", empty.to_str().unwrap()]), 2);

    // Cardinality bound above n is rejected at parse time.
    let out = run(&[
        "oracle",
        "pqe",
        "--theory",
        fixture("card_bad_bound.json").to_str().unwrap(),
        "--probs",
        fixture("card42_uniform.json").to_str().unwrap(),
    ]);
    assert_code(&out, 2);

    // Missing probability entry.
    let out = run(&[
        "query",
        "pqe",
        "--theory",
        fixture("figd.json").to_str().unwrap(),
        "--probs",
        fixture("card42_uniform.json").to_str().unwrap(),
    ]);
    assert_code(&out, 2);

    // top-k without --k.
    let out = run(&[
        "query",
        "top-k",
        "--theory",
        fixture("figd.json").to_str().unwrap(),
        "--probs",
        fixture("figd_probs.json").to_str().unwrap(),
    ]);
    assert_code(&out, 2);
}

#[test]
fn unsatisfiable_inputs_exit_four() {
    // A constant-false circuit has no conditioned distribution.
    let dir = tempfile::tempdir().unwrap();
    let unsat = dir.path().join("unsat.nnf");
    std::fs::write(&unsat, "nnf 1 0 1\nF\n").unwrap();
    let probs = dir.path().join("p.json");
    std::fs::write(&probs, "{\"probs\": {\"Y1\": 0.5}}").unwrap();
    for kind in ["mpe", "eqe"] {
        let out = run(&[
            "query",
            kind,
            "--circuit",
            unsat.to_str().unwrap(),
            "--probs",
            probs.to_str().unwrap(),
        ]);
        assert_code(&out, 4);
    }
    // pqe of an unsatisfiable circuit is simply zero.
    let out = run(&[
        "query",
        "pqe",
        "--circuit",
        unsat.to_str().unwrap(),
        "--probs",
        probs.to_str().unwrap(),
    ]);
    assert_code(&out, 0);
    assert_eq!(stdout_of(&out), "{\"query\":\"pqe\",\"value\":0.0}\n");

    // A purely cyclic graph admits no total simple path; the oracle knows.
    let out = run(&[
        "oracle",
        "mpe",
        "--theory",
        fixture("spath_cycle.json").to_str().unwrap(),
        "--probs",
        fixture("spath_probs.json").to_str().unwrap(),
    ]);
    assert_code(&out, 4);
}

#[test]
fn oracle_cap_exits_five() {
    let out = bin()
        .args([
            "oracle",
            "pqe",
            "--theory",
            fixture("figd.json").to_str().unwrap(),
            "--probs",
            fixture("figd_probs.json").to_str().unwrap(),
        ])
        .env("NESYKC_ORACLE_CAP", "3")
        .output()
        .unwrap();
    assert_code(&out, 5);
}

#[test]
fn card_route_reports_an_obdd_and_counts() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("card.nnf");
    run(&[
        "compile",
        "--theory",
        fixture("card42.json").to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    let check = run(&["check", "--circuit", out_path.to_str().unwrap()]);
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&check)).unwrap();
    assert!(report["obdd_order"].is_array());

    let out = run(&[
        "query",
        "pqe",
        "--theory",
        fixture("card42.json").to_str().unwrap(),
        "--probs",
        fixture("card42_uniform.json").to_str().unwrap(),
    ]);
    assert_eq!(stdout_of(&out), "{\"query\":\"pqe\",\"value\":0.375}\n");
}

#[test]
fn no_trim_keeps_the_raw_template() {
    let dir = tempfile::tempdir().unwrap();
    let trimmed_path = dir.path().join("trimmed.nnf");
    let raw_path = dir.path().join("raw.nnf");
    let figd = fixture("figd.json");
    run(&[
        "compile",
        "--theory",
        figd.to_str().unwrap(),
        "--out",
        trimmed_path.to_str().unwrap(),
    ]);
    run(&[
        "compile",
        "--theory",
        figd.to_str().unwrap(),
        "--out",
        raw_path.to_str().unwrap(),
        "--no-trim",
    ]);
    let trimmed =
        nesykc::formats::parse_nnf(&std::fs::read_to_string(&trimmed_path).unwrap()).unwrap();
    let raw = nesykc::formats::parse_nnf(&std::fs::read_to_string(&raw_path).unwrap()).unwrap();
    assert!(raw.wire_count() > trimmed.wire_count());
    // Same value through either circuit.
    for path in [&trimmed_path, &raw_path] {
        let out = run(&[
            "query",
            "pqe",
            "--circuit",
            path.to_str().unwrap(),
            "--probs",
            fixture("figd_probs.json").to_str().unwrap(),
        ]);
        assert_eq!(stdout_of(&out), "{\"query\":\"pqe\",\"value\":0.177664}\n");
    }
}

#[test]
fn oracle_log_base_matches_query_log_base() {
    let base2 = |cmd: &str| {
        let out = run(&[
            cmd,
            "eqe",
            "--theory",
            fixture("figd.json").to_str().unwrap(),
            "--probs",
            fixture("figd_uniform.json").to_str().unwrap(),
            "--log-base",
            "2",
        ]);
        assert_code(&out, 0);
        stdout_of(&out)
    };
    assert_eq!(base2("query"), base2("oracle"));
}

#[test]
fn smooth_flag_produces_a_smooth_circuit() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("figd_smooth.nnf");
    run(&[
        "compile",
        "--theory",
        fixture("figd.json").to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
        "--smooth",
    ]);
    let check = run(&["check", "--circuit", out_path.to_str().unwrap()]);
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&check)).unwrap();
    assert_eq!(report["smooth"], true);
}
