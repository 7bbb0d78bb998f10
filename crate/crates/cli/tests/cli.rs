use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn hoffman(args: &[&str], stdin: &str) -> Output {
    hoffman_env(args, stdin, &[])
}

fn hoffman_env(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hoffman"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).env_remove("HOFFMAN_CATALOG");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).expect("json line")).collect()
}

#[test]
fn five_vertex_claim_confirms() {
    let out = hoffman(&["verify", "--claim", "eq2"], "");
    assert_eq!(out.status.code(), Some(0));
    let r = &records(&out)[0];
    assert_eq!(r["status"], "confirmed");
    assert_eq!(r["counts"]["non_line"], 2);
    assert!(r["notes"][0].as_str().unwrap().contains("2 classes at n=5"));
}

#[test]
fn recognizes_complete_graph_and_rejects_forbidden() {
    // K5, then every connected five-vertex graph
    let out = hoffman(&["recognize"], "D~{\n");
    assert_eq!(out.status.code(), Some(0));
    let r = &records(&out)[0];
    assert_eq!(r["is_line"], true);
    assert_eq!(r["cases"].as_array().unwrap().len(), 5);

    let gen = hoffman(&["gen", "-n", "5", "--connected"], "");
    let all = String::from_utf8(gen.stdout).unwrap();
    assert_eq!(all.lines().count(), 21);
    let out = hoffman(&["recognize"], &all);
    let non_line = records(&out).iter().filter(|r| r["is_line"] == false).count();
    assert_eq!(non_line, 2);
}

#[test]
fn text_format_input_and_pretty_output() {
    let out = hoffman(&["spectral", "--pretty"], "s=3 f=1\n0 1\n0 3\n1 3\n2 3\n");
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["vs_threshold"], "equal");
}

#[test]
fn sums_for_named_and_file_figures() {
    let out = hoffman(&["sums", "--F", "F7", "--slim-k", "2", "--ck", "1"], "");
    assert_eq!(out.status.code(), Some(0));
    let named = records(&out);
    assert!(!named.is_empty());

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f7.hg");
    std::fs::write(&path, "s=4 f=1\n0 1\n0 4\n1 2\n1 4\n2 3\n2 4\n3 4\n").unwrap();
    let out = hoffman(&["sums", "--F", path.to_str().unwrap(), "--slim-k", "2", "--ck", "1"], "");
    assert_eq!(records(&out), named);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(hoffman(&["verify", "--claim", "nonsense"], "").status.code(), Some(2));
    assert_eq!(hoffman(&["recognize"], "not graph6 at all\n").status.code(), Some(2));
    assert_eq!(hoffman(&["gen", "-n", "40"], "").status.code(), Some(2));
    assert_eq!(hoffman(&["sums", "--F", "F4", "--slim-k", "2", "--parts", "H4"], "").status.code(), Some(2));
}

#[test]
fn refuted_claim_exits_one_with_report() {
    let out = hoffman(&["verify", "--claim", "table1"], "");
    assert_eq!(out.status.code(), Some(1));
    let reports = records(&out);
    assert_eq!(reports.len(), 7);
    assert!(reports.iter().any(|r| r["status"] == "refuted"));
}

#[test]
fn catalog_round_trip_through_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("cat");
    let out = hoffman(&["catalog", "build", "--nmax", "7", "--out", cat.to_str().unwrap()], "");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(records(&out)[0]["total"], 37);
    assert!(cat.join("catalog.json").is_file());
    assert!(cat.join("g6").join("n6.g6").is_file());

    let env = [("HOFFMAN_CATALOG", cat.to_str().unwrap())];
    let out = hoffman_env(&["verify", "--claim", "prop2.1"], "", &env);
    assert_eq!(out.status.code(), Some(0));
    let r = &records(&out)[0];
    assert_eq!(r["counts"]["n5"], 2);
    assert_eq!(r["counts"]["n6"], 28);
    assert_eq!(r["counts"]["n7"], 7);

    // the claw and K5 are line graphs here; K2,3 is not
    let out = hoffman_env(&["screen"], "Cs\nD~{\nDFw\n", &env);
    let verdicts: Vec<bool> = records(&out).iter().map(|r| r["is_line"].as_bool().unwrap()).collect();
    assert_eq!(verdicts, [true, true, false]);

    // an eight-vertex graph needs a larger catalog
    let out = hoffman_env(&["screen"], "G~~~~{\n", &env);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let a = hoffman(&["--threads", "1", "sums", "--F", "F1", "--slim-k", "4", "--ck", "2"], "");
    let b = hoffman(&["--threads", "4", "sums", "--F", "F1", "--slim-k", "4", "--ck", "2"], "");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
