use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use reflectk::scalar::parse_scalar;
use reflectk::{Mat, MatJson};
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_reflectk"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn matrix(o: &Output) -> Mat {
    let j: MatJson = serde_json::from_slice(&o.stdout).unwrap();
    Mat::from_json(&j).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_symmetric_matches_printed_matrix() {
    let o = run(&["gen", "--family", "sym", "--n", "4", "--l", "2", "--r", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let theta = "((u - 1/u)/(1/(lambda*mu) + 1/u))";
    let chi = "(1/(lambda - mu*u))";
    let a = parse_scalar(&format!("1 + {theta}")).unwrap();
    let b = parse_scalar(&format!("1 + lambda*{theta}*{chi}")).unwrap();
    let c = parse_scalar(&format!("1 + {theta}*{chi}/lambda")).unwrap();
    let d = parse_scalar(&format!("-{theta}*{chi}")).unwrap();
    let want = Mat::from_entries(4, [(1, 1, a.clone()), (2, 2, a), (3, 3, b), (3, 4, d.clone()), (4, 3, d), (4, 4, c)]);
    assert_eq!(matrix(&o), want);
}

#[test]
fn gen_triangular_full_block_is_identity() {
    let o = run(&["gen", "--family", "tri", "--n", "4", "--m", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(matrix(&o).is_identity());
}

#[test]
fn gen_with_substitution_is_rational() {
    let o = run(&["gen", "--family", "twisted", "--n", "4", "--kind", "half-shift", "--set", "u=3", "s=2"]);
    assert_eq!(o.status.code(), Some(0));
    let three = parse_scalar("3").unwrap();
    let one = parse_scalar("1").unwrap();
    let want = Mat::from_entries(4, [(1, 2, three.clone()), (2, 1, three), (3, 4, one.clone()), (4, 3, one)]);
    assert_eq!(matrix(&o), want);
}

#[test]
fn invalid_labels_are_usage_errors() {
    let o = run(&["gen", "--family", "sym", "--n", "4", "--l", "1", "--r", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("r <= (N + l)/2"), "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(&["gen", "--family", "twisted", "--n", "3", "--kind", "pair-swap"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(run(&["gen", "--family", "bogus", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn enumerate_counts() {
    let counts = |n: &str| {
        let o = run(&["enumerate", n]);
        assert_eq!(o.status.code(), Some(0));
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v["counts"].clone()
    };
    assert_eq!(counts("4"), serde_json::json!({"sym": 4, "tri": 11, "twisted": 4}));
    assert_eq!(counts("3")["twisted"], 2);
    let five = counts("5");
    assert_eq!(five["sym"], 6);
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let ks = dir.path().join("ks.json");
    assert_eq!(run(&["gen", "--family", "sym", "--n", "4", "--l", "2", "--r", "3", "-o", s(&ks)]).status.code(), Some(0));
    let o = run(&["verify", s(&ks), "--equation", "re"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let id = write(dir.path(), "id.json", r#"{"dim": 3, "entries": [{"row":1,"col":1,"value":"1"},{"row":2,"col":2,"value":"1"},{"row":3,"col":3,"value":"1"}]}"#);
    assert_eq!(run(&["verify", s(&id), "--equation", "re"]).status.code(), Some(0));

    let mut j: Value = serde_json::from_str(&std::fs::read_to_string(&ks).unwrap()).unwrap();
    j["entries"][0]["value"] = Value::from("u + 1");
    let bad = write(dir.path(), "bad.json", &j.to_string());
    let o = run(&["verify", s(&bad), "--equation", "re", "--mode", "sampled", "--samples", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["pass"], false);
    assert_eq!(report["witness"]["point"]["s"], "2");
}

#[test]
fn parse_errors_report_position() {
    let dir = tempfile::tempdir().unwrap();
    let broken = write(dir.path(), "broken.json", "{\"dim\": 2,\n  \"entries\": [}");
    let o = run(&["verify", s(&broken), "--equation", "re"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2 column"));
    let bad_value = write(dir.path(), "value.json", r#"{"dim": 1, "entries": [{"row":1,"col":1,"value":"u +* 2"}]}"#);
    let o = run(&["verify", s(&bad_value), "--equation", "unitary"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("column"));
}

#[test]
fn ybe_and_constant_pairs() {
    assert_eq!(run(&["verify", "--equation", "ybe", "--n", "3"]).status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let pair = dir.path().join("pair.json");
    assert_eq!(
        run(&["gen", "--family", "sym", "--n", "4", "--l", "1", "--r", "2", "--const", "-o", s(&pair)]).status.code(),
        Some(0)
    );
    assert_eq!(run(&["verify", s(&pair), "--equation", "const-identities"]).status.code(), Some(0));
}

#[test]
fn every_generated_class_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["enumerate", "3"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let mut cases: Vec<(Vec<String>, &str)> = Vec::new();
    for c in v["sym"].as_array().unwrap() {
        cases.push((vec!["--family".into(), "sym".into(), "--l".into(), c["l"].to_string(), "--r".into(), c["r"].to_string()], "re"));
    }
    for c in v["tri"].as_array().unwrap() {
        let sigma: Vec<usize> = serde_json::from_value(c["sigma"].clone()).unwrap();
        let cycles: String = (1..=3).filter(|&i| i < sigma[i - 1]).map(|i| format!("({i}{})", sigma[i - 1])).collect();
        let eps: Vec<String> = c["eps"].as_array().unwrap().iter().map(|p| format!("{}{}", p[0], p[1])).collect();
        let mut a = vec!["--family".into(), "tri".into(), "--m".into(), c["m"].to_string()];
        if !cycles.is_empty() {
            a.extend(["--sigma".into(), cycles, "--eps".into(), eps.join(",")]);
        }
        cases.push((a, "re"));
    }
    for c in v["twisted"].as_array().unwrap() {
        cases.push((vec!["--family".into(), "twisted".into(), "--kind".into(), c["kind"].as_str().unwrap().into()], "ctre"));
    }
    assert_eq!(cases.len(), 2 + 4 + 2);
    for (k, (args, eq)) in cases.iter().enumerate() {
        let path = dir.path().join(format!("{k}.json"));
        let mut full: Vec<&str> = vec!["gen", "--n", "3", "-o", s(&path)];
        full.extend(args.iter().map(String::as_str));
        assert_eq!(run(&full).status.code(), Some(0), "{args:?}");
        let o = run(&["verify", s(&path), "--equation", eq]);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
    }
}

#[test]
fn orbit_moves_and_replay() {
    let dir = tempfile::tempdir().unwrap();
    let ks = dir.path().join("ks.json");
    run(&["gen", "--family", "sym", "--n", "3", "--l", "0", "--r", "1", "-o", s(&ks)]);
    let base: MatJson = serde_json::from_str(&std::fs::read_to_string(&ks).unwrap()).unwrap();
    let base = Mat::from_json(&base).unwrap();

    let empty = write(dir.path(), "empty.json", "[]");
    let o = run(&["orbit", s(&ks), s(&empty), "--flavor", "re"]);
    assert_eq!(o.status.code(), Some(0));
    let out: Value = serde_json::from_slice(&o.stdout).unwrap();
    let echoed: MatJson = serde_json::from_value(out["matrix"].clone()).unwrap();
    assert_eq!(Mat::from_json(&echoed).unwrap(), base);

    let neg = write(dir.path(), "neg.json", r#"[{"move": "negate"}]"#);
    let o = run(&["orbit", s(&ks), s(&neg), "--flavor", "re"]);
    assert_eq!(o.status.code(), Some(0));
    let out: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(out["check"]["pass"], true);
    let got: MatJson = serde_json::from_value(out["matrix"].clone()).unwrap();
    let flipped = base.subst(&reflectk::Bindings::new().with(reflectk::Var::MU, parse_scalar("-mu").unwrap())).unwrap();
    assert_eq!(Mat::from_json(&got).unwrap(), flipped);

    let probe = dir.path().join("probe.json");
    let replay = dir.path().join("replay.json");
    let o = run(&["orbit", s(&ks), "--random", "3", "--seed", "17", "--flavor", "re", "-o", s(&probe)]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["orbit", s(&ks), s(&probe), "--flavor", "re", "-o", s(&replay)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read(&probe).unwrap(), std::fs::read(&replay).unwrap());
}

#[test]
fn orbit_rejects_non_solutions_and_singular_conjugators() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"dim": 2, "entries": [{"row":1,"col":1,"value":"u"},{"row":1,"col":2,"value":"3"}]}"#);
    let none = write(dir.path(), "none.json", "[]");
    assert_eq!(run(&["orbit", s(&bad), s(&none), "--flavor", "re"]).status.code(), Some(1));
    let id = write(dir.path(), "id.json", r#"{"dim": 2, "entries": [{"row":1,"col":1,"value":"1"},{"row":2,"col":2,"value":"1"}]}"#);
    let zero = write(dir.path(), "zero.json", r#"[{"move":"conjugate","z":"zrho","eta":"0","flavor":"re"}]"#);
    let o = run(&["orbit", s(&id), s(&zero), "--flavor", "re"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("singular"));
}

#[test]
fn term_ceiling_comes_from_the_environment() {
    let o = bin().args(["verify", "--equation", "ybe", "--n", "2"]).env("REFLECTK_MAX_TERMS", "zero").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = bin().args(["verify", "--equation", "ybe", "--n", "2"]).env("REFLECTK_MAX_TERMS", "1").output().unwrap();
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn report_covers_every_class() {
    let o = run(&["report", "3", "--mode", "sampled"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1 + 2 + 4 + 2);
}
