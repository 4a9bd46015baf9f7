use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use glinf_core::fmodule::{dual_lift, FModuleSpec};
use glinf_core::pieri::PieriElement;
use glinf_core::profile::fixtures::*;
use glinf_core::profile::{Profile, WeightProfile};
use glinf_core::structure::{FiltrationLayer, LoewyLength, StructureReport};
use serde_json::{json, Value};
use tempfile::TempDir;

fn write_input(dir: &TempDir, name: &str, profile: Profile, module: FModuleSpec) -> PathBuf {
    write_raw(dir, name, profile.raw(), module)
}

fn write_raw(dir: &TempDir, name: &str, profile: &WeightProfile, module: FModuleSpec) -> PathBuf {
    let path = dir.path().join(format!("{name}.json"));
    let doc = json!({ "profile": profile, "module": module });
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    path
}

fn glinf(input: Option<&Path>, args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_glinf"));
    cmd.args(args);
    if let Some(p) = input {
        cmd.arg("--input").arg(p);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_tm_sym1() {
    let dir = TempDir::new().unwrap();
    let p = write_input(&dir, "tm", p_tm(), FModuleSpec::Sym(1));
    let o = glinf(Some(&p), &["analyze"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["loewyLength"], json!({ "fin": 1 }));
    let report: StructureReport = serde_json::from_value(v).unwrap();
    assert_eq!(report.loewy_length, LoewyLength::Fin(1));
    assert!(report.has_socle);
}

#[test]
fn nonexample_exits_3() {
    let dir = TempDir::new().unwrap();
    let p = write_input(&dir, "nonex", p_nonex(), FModuleSpec::Fock);
    let o = glinf(Some(&p), &["analyze"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("J∞-initial"));
}

#[test]
fn malformed_and_invalid_inputs_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"profile\": [").unwrap();
    assert_eq!(glinf(Some(&bad), &["analyze"]).status.code(), Some(2));
    let missing = dir.path().join("missing.json");
    assert_eq!(glinf(Some(&missing), &["pieri"]).status.code(), Some(2));
    let wrong = write_input(&dir, "wrong", p_tm(), FModuleSpec::Fock);
    assert_eq!(glinf(Some(&wrong), &["analyze"]).status.code(), Some(2));
    let ok = write_input(&dir, "ok", p_tm(), FModuleSpec::Sym(1));
    assert_eq!(glinf(Some(&ok), &["analyze", "--max-rank", "99"]).status.code(), Some(2));
    assert_eq!(glinf(Some(&ok), &["analyze", "--format", "dot"]).status.code(), Some(2));
    assert_eq!(glinf(Some(&ok), &["bogus"]).status.code(), Some(2));
}

#[test]
fn stair_layer_zero_is_singleton() {
    let dir = TempDir::new().unwrap();
    let p = write_input(&dir, "stair", p_stair(), FModuleSpec::Sym(2));
    let o = glinf(Some(&p), &["layers", "--depth", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let layers: Vec<FiltrationLayer> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(layers[0].rank, 0);
    assert_eq!(layers[0].members.len(), 1);
    assert_eq!(layers[0].members[0].to_string(), "R1:2");
}

#[test]
fn linked_on_tm() {
    let dir = TempDir::new().unwrap();
    let p = write_input(&dir, "tm", p_tm(), FModuleSpec::Sym(1));
    let ask = |nu: &str, gamma: &str| {
        let o = glinf(Some(&p), &["linked", "--nu", nu, "--gamma", gamma]);
        assert_eq!(o.status.code(), Some(0));
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        v["linked"].as_bool().unwrap()
    };
    let b0 = r#"{"counts":{"B0":1}}"#;
    let b2 = r#"{"counts":{"B2":1}}"#;
    assert!(ask(b0, b2));
    assert!(!ask(b2, b0));
    assert!(ask(b0, b0));
    let o = glinf(Some(&p), &["linked", "--nu", "{", "--gamma", b0]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn pieri_on_pos_has_five_rows() {
    let dir = TempDir::new().unwrap();
    let p = write_input(&dir, "pos", p_pos(), FModuleSpec::Sym(2));
    let o = glinf(Some(&p), &["pieri", "--depth", "1"]);
    let elems: Vec<PieriElement> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(elems.len(), 5);
    let t = glinf(Some(&p), &["pieri", "--depth", "1", "--format", "text"]);
    assert_eq!(stdout(&t).lines().count(), 5);
}

#[test]
fn dot_on_tm_has_three_nodes() {
    let dir = TempDir::new().unwrap();
    let p = write_input(&dir, "tm", p_tm(), FModuleSpec::Sym(1));
    let o = glinf(Some(&p), &["dot"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("[label=").count(), 3);
    assert_eq!(dot.matches(" -> ").count(), 2);
    let ranks: std::collections::BTreeSet<&str> =
        dot.lines().filter_map(|l| l.split("\\nrank ").nth(1)).map(|r| &r[..1]).collect();
    assert_eq!(ranks.len(), 2);
}

#[test]
fn exhaust_stair_three_steps() {
    let dir = TempDir::new().unwrap();
    let p = write_input(&dir, "stair", p_stair(), FModuleSpec::Sym(2));
    let o = glinf(Some(&p), &["exhaust", "--steps", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["steps"].as_array().unwrap().len(), 3);
    assert_eq!(v["levels"].as_array().unwrap().len(), 4);
    assert!(v["steps"].as_array().unwrap().iter().all(|s| s["kind"] == "DStep"));
}

#[test]
fn documents_round_trip() {
    let dir = TempDir::new().unwrap();
    for (name, profile, module) in [
        ("tm", p_tm(), FModuleSpec::Ext(1)),
        ("stair", p_stair(), FModuleSpec::Sym(1)),
        ("ft", p_ft(), FModuleSpec::Fock),
        ("fock1", p_fock1(), FModuleSpec::Fock),
    ] {
        let p = write_input(&dir, name, profile, module);
        let o = glinf(Some(&p), &["analyze"]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&o.stderr));
        let report: StructureReport = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(report.module, module);
        let again = serde_json::to_string_pretty(&report).unwrap();
        assert_eq!(again, stdout(&o).trim_end());
    }
    let (raw, dual) = dual_lift(&p_pos(), FModuleSpec::Sym(1)).unwrap();
    let p = write_raw(&dir, "dual", &raw, dual);
    let o = glinf(Some(&p), &["analyze"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report: StructureReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((report.module, report.weight_sign), (FModuleSpec::SymDual(1), -1));
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let p = write_input(&dir, "fock1", p_fock1(), FModuleSpec::Fock);
    for args in [&["layers", "--depth", "2"][..], &["dot"], &["exhaust", "--steps", "4"]] {
        let a = glinf(Some(&p), args);
        let b = glinf(Some(&p), args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn verify_exit_codes() {
    let o = glinf(None, &["verify", "--criterion", "1,5", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("criterion 1: PASS") && out.contains("criterion 5: PASS"));
    let o = glinf(None, &["verify", "--criterion", "2", "--workers", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["criterion"], 2);
    assert_eq!(glinf(None, &["verify", "--criterion", "9"]).status.code(), Some(2));
}
