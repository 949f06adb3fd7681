use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use pathchrom_verify::{default_plan, recheck, run_plan, RunOptions, Verdict};
use serde_json::Value;
use tempfile::TempDir;

fn pathchrom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pathchrom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn construct_then_measure_a_cycle() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("c5.col");
    let file = file.to_str().unwrap();
    let out = pathchrom(&["--out", file, "construct", "cycle", "5"]);
    assert!(out.status.success());
    assert!(fs::read_to_string(file).unwrap().contains("p edge 5 5"));

    let chi = json_of(&pathchrom(&["chromatic", file]));
    assert_eq!(chi["chromatic_number"], 3);
    assert_eq!(chi["coloring"].as_array().unwrap().len(), 5);

    let p = json_of(&pathchrom(&["path-chromatic", "--witness", file]));
    assert_eq!(p["path_chromatic_number"], 2);
    assert_eq!(p["witness"].as_array().unwrap().len(), 5);

    let yes = json_of(&pathchrom(&["path-chromatic", "--max-k", "2", file]));
    assert_eq!(yes["at_most"], true);
    let no = json_of(&pathchrom(&["path-chromatic", "--max-k", "1", file]));
    assert_eq!(no["at_most"], false);

    let special = json_of(&pathchrom(&["special", file]));
    assert_eq!(special["special"], false);
    assert!(special["witness"].is_null());
}

#[test]
fn json_graphs_and_products() {
    let dir = TempDir::new().unwrap();
    let k2 = dir.path().join("k2.json");
    let k2 = k2.to_str().unwrap();
    assert!(pathchrom(&[
        "--format",
        "json",
        "--out",
        k2,
        "construct",
        "complete",
        "2"
    ])
    .status
    .success());
    let special = json_of(&pathchrom(&["special", k2]));
    assert_eq!(special["special"], true);

    let rm = dir.path().join("r3.col");
    let rm = rm.to_str().unwrap();
    assert!(pathchrom(&["--out", rm, "construct", "rm", "3", k2])
        .status
        .success());
    let chi = json_of(&pathchrom(&["chromatic", rm]));
    assert_eq!(chi["order"], 9);
    // a row's apex sees two vertices at odd distance
    assert_eq!(chi["chromatic_number"], 3);
    let p = json_of(&pathchrom(&["path-chromatic", rm]));
    assert_eq!(p["path_chromatic_number"], 2);
}

#[test]
fn malformed_input_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(dir.path(), "bad.col", "p edge 3 1\ne 1 9\n");
    let out = pathchrom(&["chromatic", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());

    assert_eq!(
        pathchrom(&["verify", "no-such-claim"]).status.code(),
        Some(2)
    );
    assert_eq!(
        pathchrom(&["verify", "mycielski-chi", "q=1"]).status.code(),
        Some(2)
    );
    assert_eq!(pathchrom(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn decomposition_check_reports_validity() {
    let dir = TempDir::new().unwrap();
    let graph = write(dir.path(), "p4.col", "p edge 4 3\ne 1 2\ne 2 3\ne 3 4\n");
    let good = write(
        dir.path(),
        "good.json",
        r#"{"nodes": 3, "bags": [[0, 1], [1, 2], [2, 3]]}"#,
    );
    let out = pathchrom(&["decomp", "check", &graph, &good]);
    let v = json_of(&out);
    assert_eq!(v["valid"], true);
    assert_eq!(v["kind"], "path");
    assert_eq!(v["chromatic_number"], 2);

    // vertex 1 appears in two non-adjacent bags
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"nodes": 3, "bags": [[0, 1], [2, 3], [1, 2]]}"#,
    );
    let out = pathchrom(&["decomp", "check", &graph, &bad]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["valid"], false);
    assert!(v["chromatic_number"].is_null());

    let tree = write(
        dir.path(),
        "tree.json",
        r#"{"nodes": 3, "tree_edges": [[0, 1], [0, 2]], "bags": [[1, 2], [0, 1], [2, 3]]}"#,
    );
    let v = json_of(&pathchrom(&["decomp", "check", &graph, &tree]));
    assert_eq!(v["kind"], "tree");
    assert_eq!(v["valid"], true);
}

#[test]
fn single_claim_report_and_recheck() {
    let dir = TempDir::new().unwrap();
    let report = dir.path().join("k2.json");
    let report = report.to_str().unwrap();
    let out = pathchrom(&["--out", report, "verify", "thm1-k2", "m=6"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["claim_id"], "thm1-k2");
    assert_eq!(v["parameters"]["m"], 6);
    assert_eq!(v["verdict"]["status"], "pass");
    assert!(v.get("elapsed_ms").is_none());
    assert!(pathchrom(&["recheck", report]).status.success());

    // one colour everywhere is never proper on a graph with edges
    let mut tampered = v.clone();
    for bag in tampered["certificate"]["witness"]["bag_colorings"]
        .as_array_mut()
        .unwrap()
    {
        for c in bag.as_array_mut().unwrap() {
            *c = Value::from(0);
        }
    }
    let bad = write(dir.path(), "bad.json", &tampered.to_string());
    assert_eq!(pathchrom(&["recheck", &bad]).status.code(), Some(1));
}

#[test]
fn precondition_failures_are_usage_errors() {
    // m below the product hypothesis
    assert_eq!(
        pathchrom(&["verify", "thm1-k2", "m=3"]).status.code(),
        Some(2)
    );
    let skipped = json_of(&pathchrom(&["verify", "mycielski-chi", "k=7"]));
    assert_eq!(skipped["verdict"]["status"], "skipped");
}

#[test]
fn timings_are_opt_in() {
    let v = json_of(&pathchrom(&[
        "--timings",
        "verify",
        "lemma-cycle-no-special",
    ]));
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn listing_names_every_claim() {
    let out = pathchrom(&["verify", "list"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for c in pathchrom_verify::CLAIMS {
        assert!(text.contains(c.id), "{} missing", c.id);
    }
}

#[test]
fn every_passing_report_in_the_plan_rechecks() {
    let reports = run_plan(&default_plan(), &RunOptions::default(), 2).unwrap();
    assert_eq!(reports.len(), default_plan().len());
    for r in &reports {
        assert!(!r.verdict.is_fail(), "{}: {}", r.claim_id, r.summary);
        if matches!(r.verdict, Verdict::Pass) {
            recheck(r).unwrap_or_else(|e| panic!("{}: {e}", r.claim_id));
        }
    }
}
