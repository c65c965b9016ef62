use std::process::{Command, Output};

use serde_json::Value;

fn winfty(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_winfty")).args(args).output().expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn expand_schur() {
    let o = winfty(&["expand", "schur", "2,2"]);
    assert_eq!(o.status.code(), Some(0));
    let t = &json(&o)["terms"];
    assert_eq!(t["p[1,1,1,1]"], "1/12");
    assert_eq!(t["p[2,2]"], "1/4");
    assert_eq!(t["p[3,1]"], "-1/3");
    assert_eq!(t.as_object().unwrap().len(), 3);
}

#[test]
fn expand_empty_is_one() {
    let o = winfty(&["expand", "schur", ""]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "\"1\"");
    let o = winfty(&["expand", "schur", "", "--format", "text"]);
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "1");
}

#[test]
fn expand_jack() {
    let o = winfty(&["expand", "jack", "2", "--params", "symbolic"]);
    assert_eq!(o.status.code(), Some(0));
    let t = &json(&o)["terms"];
    assert_eq!(t["p[2]"], "1/(h1 - h2)");
    assert_eq!(t["p[1,1]"], "-h2/(h1 - h2)");
    // At h = (1, -1) the Jack polynomial is the Schur one.
    let o = winfty(&["expand", "jack", "2,1", "--params", "1,-1"]);
    let s = winfty(&["expand", "schur", "2,1"]);
    assert_eq!(json(&o)["terms"], json(&s)["terms"]);
}

#[test]
fn expand_tau_from_file() {
    let dir = std::env::temp_dir().join(format!("winfty-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("m.json");
    std::fs::write(&good, r#"[["1","0","2","3"],["0","1","1/2","-1"]]"#).unwrap();
    let o = winfty(&["expand", "tau", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["schur"]["S()"], "1");
    let bad = dir.join("r.json");
    std::fs::write(&bad, r#"[["1","2","3"],["2","4","6"]]"#).unwrap();
    assert_eq!(winfty(&["expand", "tau", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn usage_errors() {
    for args in [
        &["expand", "schur", "2,x"][..],
        &["expand", "schur", "3", "--degree", "2"],
        &["expand", "jack", "2", "--params", "1"],
        &["verify", "nope"],
        &["verify", "ope", "--n", "4..1"],
        &["verify", "yangian", "--gauge", "sideways"],
        &["frobnicate"],
    ] {
        assert_eq!(winfty(args).status.code(), Some(2), "{:?}", args);
    }
}

#[test]
fn verify_ope_pairs() {
    let o = winfty(&["verify", "ope", "--pairs", "V2V3,V1V4", "--n", "1..4"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["suite"], "ope");
    assert!(r["version"].is_string());
    assert_eq!(r["config"]["n"], serde_json::json!([1, 2, 3, 4]));
    for c in r["checks"].as_array().unwrap() {
        assert_eq!(c["status"], "pass", "{}", c);
        assert!(c["anchor"].is_string() && c["id"].is_string() && c["detail"].is_string());
    }
}

#[test]
fn verify_yangian_gauges() {
    let o = winfty(&["verify", "yangian", "--level", "4", "--gauge", "ef"]);
    assert_eq!(o.status.code(), Some(0));
    let o = winfty(&["verify", "yangian", "--level", "2", "--gauge", "literal"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("first failure: yangian.exact.yangian3"));
}

#[test]
fn verify_tau_is_deterministic() {
    let a = winfty(&["verify", "tau", "--random-matrices", "20", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    let b = winfty(&["verify", "tau", "--random-matrices", "20", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["config"]["seed"], 7);
}
