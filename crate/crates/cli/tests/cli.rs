use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn tensorlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tensorlab")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn unknown_parameter_is_rejected_by_name() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "c.json",
        r#"{"command":"rank","parameters":{"w_state":3,"rmax_typo":2}}"#,
    );
    let out = tensorlab(&["run", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("rmax_typo"));
}

#[test]
fn exit_codes() {
    assert_eq!(tensorlab(&["minrank", "--mode", "gurvits", "--n", "2"]).status.code(), Some(0));
    assert_eq!(tensorlab(&["minrank", "--mode", "gurvits"]).status.code(), Some(2));
    assert_eq!(tensorlab(&["minrank", "--mode", "gurvits", "--n", "9"]).status.code(), Some(3));
    assert_eq!(tensorlab(&["rank", "--tensor-file", "/nonexistent/t.tensor"]).status.code(), Some(1));
    assert_eq!(
        tensorlab(&["minrank", "--mode", "gurvits", "--n", "2", "--format", "csv"]).status.code(),
        Some(2)
    );
}

#[test]
fn gurvits_record_carries_seed_and_version() {
    let rec = json(&tensorlab(&["minrank", "--mode", "gurvits", "--n", "2", "--seed", "7"]));
    assert_eq!(rec["payload"]["decrement"], 8);
    assert_eq!(rec["payload"]["witness_rank"], 8);
    assert_eq!(rec["seed"], 7);
    assert_eq!(rec["config"]["seed"], 7);
    assert_eq!(rec["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(rec["tool"], "tensorlab");
}

#[test]
fn two_factor_scan_has_one_defective_cell() {
    let args: Vec<String> = ["terracini", "--mode", "scan"]
        .into_iter()
        .map(String::from)
        .chain((2..=5).flat_map(|n| ["--varieties".into(), format!("segre:{}", vec!["2"; n].join(","))]))
        .collect();
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    let rec = json(&tensorlab(&args));
    let defective = rec["payload"]["defective"].as_array().unwrap();
    assert_eq!(defective.len(), 1);
    assert_eq!(defective[0]["variety"], "segre:2,2,2,2");
    assert_eq!(defective[0]["r"], 3);
}

#[test]
fn rationals_are_strings() {
    let rec = json(&tensorlab(&["decompose", "--method", "sylvester", "--form", "1,0,0,1"]));
    let term = &rec["payload"]["terms"][0];
    assert!(term["coefficient"].is_string(), "{term}");
    let rec = json(&tensorlab(&["matchgate", "--mode", "pfaffian", "--matrix", "0 1 2 3;-1 0 4 5;-2 -4 0 6;-3 -5 -6 0"]));
    assert_eq!(rec["payload"]["pfaffian"], "8");
}

#[test]
fn csv_has_header_plus_rows() {
    let out = tensorlab(&["kron", "--mode", "cone", "--p", "2", "--q", "2", "--r", "2", "--n-max", "4", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rec = json(&tensorlab(&["kron", "--mode", "cone", "--p", "2", "--q", "2", "--r", "2", "--n-max", "4"]));
    let rows = rec["payload"]["rows"].as_array().unwrap().len();
    assert_eq!(text.lines().count(), rows + 1);
    assert!(text.starts_with("lambda,mu,nu,k"));
}

#[test]
fn text_format_has_header_line() {
    let out = tensorlab(&["kron", "--mode", "coefficient", "--lambda", "2,1", "--mu", "2,1", "--nu", "2,1", "--format", "text", "--seed", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with(&format!("# tensorlab {} seed 3", env!("CARGO_PKG_VERSION"))));
    assert!(text.lines().any(|l| l.starts_with("k") && l.trim_end().ends_with('1')));
}

#[test]
fn tensor_file_round_trip() {
    let text = "tensor v1\n2 2 2\nrational\n0 1\n1 0\n1 0\n0 0\n";
    let t = tensorlab::io::parse_tensor(text).unwrap();
    assert_eq!(tensorlab::io::emit_tensor(&t), text);
    let prime = "tensor v1\n2 3\nfp 5\n0 1 4\n3 2 0\n";
    assert_eq!(tensorlab::io::emit_tensor(&tensorlab::io::parse_tensor(prime).unwrap()), prime);
}

#[test]
fn output_file_appends_json_lines() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.jsonl");
    let p = path.to_str().unwrap();
    for _ in 0..2 {
        let out = tensorlab(&["minrank", "--mode", "friedland", "--n", "1", "--output", p]);
        assert!(out.status.success());
        assert!(out.stdout.is_empty());
    }
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 2);
    for line in text.lines() {
        let rec: Value = serde_json::from_str(line).unwrap();
        assert_eq!(rec["payload"]["violated"], true);
    }
}

#[test]
fn scan_resume_reuses_cells() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.jsonl");
    let p = path.to_str().unwrap();
    let first = ["terracini", "--mode", "scan", "--varieties", "segre:2,2,2,2", "--seed", "5", "--output", p];
    assert!(tensorlab(&first).status.success());
    let args = [
        "terracini", "--mode", "scan", "--varieties", "segre:2,2,2,2", "--varieties", "segre:2,2,2", "--seed", "5",
        "--output", p,
    ];
    assert!(tensorlab(&args).status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let recs: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(recs.len(), 2);
    let fresh = json(&tensorlab(&args[..args.len() - 2]));
    assert_eq!(recs[1]["payload"], fresh["payload"]);
    let rows = |v: &Value| v["payload"]["rows"].as_array().unwrap().clone();
    let reused: Vec<Value> = rows(&recs[1]).into_iter().filter(|r| r["variety"] == "segre:2,2,2,2").collect();
    assert_eq!(reused, rows(&recs[0]));
}

#[test]
fn config_file_matches_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "c.json",
        r#"{"command":"terracini","parameters":{"mode":"secant","variety":"veronese:3,4","r":5},"seed":11}"#,
    );
    let a = json(&tensorlab(&["run", &cfg]));
    let b = json(&tensorlab(&["terracini", "--variety", "veronese:3,4", "--r", "5", "--seed", "11"]));
    assert_eq!(a["payload"], b["payload"]);
    assert_eq!(a["payload"]["defect"], 1);
}

#[test]
fn exact_minrank_from_subspace_file() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(
        dir.path(),
        "x.json",
        r#"{"ambient":[2,2],"matrices":[[["0","1"],["-1","0"]],[["1","0"],["0","1"]]]}"#,
    );
    let three = json(&tensorlab(&["minrank", "--mode", "exact", "--subspace-file", &s, "--modulus", "3"]));
    assert_eq!(three["payload"]["min_rank"], 2);
    let five = json(&tensorlab(&["minrank", "--mode", "exact", "--subspace-file", &s, "--modulus", "5"]));
    assert_eq!(five["payload"]["min_rank"], 1);
}
