//! End-to-end runs of the `minsurf` binary.

use std::path::Path;
use std::process::{Command, Output};

use minsurf::catalog::instantiate_default;
use minsurf::wdata;
use serde_json::Value;

fn minsurf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minsurf")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn analyze_new_surface_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "ns.json", r#"{"schema": 1, "space": "R3", "family": "new-surface", "params": {"a": "0", "b": "2"}}"#);
    let out = minsurf(&["analyze", &f]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    let p = &v["maps"][0]["profile"];
    assert_eq!(p["nu"], "5/2");
    assert_eq!(p["omitted"], 2);
}

#[test]
fn verify_voss_fails_periods() {
    let out = minsurf(&["verify", "voss"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert!(v["periods"]["real_max"].as_f64().unwrap() > 0.0);
    assert_eq!(v["periods"]["passed"], false);
    assert_eq!(v["conformal"], true);
}

#[test]
fn verify_passing_surfaces_exit_zero() {
    for name in ["catenoid", "hkw-r4"] {
        let out = minsurf(&["verify", name]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        assert_eq!(json(&out)["overall"], true);
    }
}

#[test]
fn mesh_catenoid_obj() {
    let dir = tempfile::tempdir().unwrap();
    let obj = dir.path().join("c.obj");
    let out = minsurf(&["mesh", "catenoid", "--grid", "64x64", "--out", obj.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&obj).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 4096);
    assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 63 * 63);
}

#[test]
fn mesh_ply_header() {
    let dir = tempfile::tempdir().unwrap();
    let ply = dir.path().join("h.ply");
    let out = minsurf(&["mesh", "hkw-r4", "--grid", "16x16", "--outer-radius", "3", "--out", ply.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let bytes = std::fs::read(&ply).unwrap();
    let head = String::from_utf8_lossy(&bytes[..200.min(bytes.len())]);
    assert!(head.starts_with("ply\nformat binary_little_endian 1.0\n"));
    assert!(head.contains("property double w"));
}

#[test]
fn audit_reports_exact_bounds() {
    let out = minsurf(&["audit", "hkw-r4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["case"], "reciprocal_sum");
    assert_eq!(v["sharp"], true);
    let principal = v["principal"].as_str().unwrap();
    let check = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == principal).unwrap();
    assert_eq!((check["lhs"].as_str(), check["rhs"].as_str()), (Some("4"), Some("4")));
    // Audits require verified data.
    assert_eq!(minsurf(&["audit", "voss"]).status.code(), Some(1));
}

#[test]
fn curvature_exact_and_numeric() {
    let out = minsurf(&["curvature", "catenoid"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["total_curvature_pi_multiple"], -4);
    assert!(v["numeric_relative_error"].as_f64().unwrap() < 1e-3);
}

#[test]
fn catalog_show_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let listed = json(&minsurf(&["catalog", "list"]));
    for fam in listed["families"].as_array().unwrap() {
        let name = fam["name"].as_str().unwrap();
        let path = dir.path().join(format!("{name}.json"));
        let out = minsurf(&["catalog", "show", name, "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        let loaded = wdata::from_json_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(loaded, instantiate_default(name).unwrap(), "{name}");
        // The explicit file drives the same verification as the family name.
        let a = minsurf(&["verify", path.to_str().unwrap()]);
        let b = minsurf(&["verify", name]);
        assert_eq!(a.stdout, b.stdout, "{name}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn reports_are_deterministic() {
    for args in [["analyze", "ms1994"], ["audit", "new-surface"], ["verify", "conjugate-pair-r4"]] {
        assert_eq!(minsurf(&args).stdout, minsurf(&args).stdout, "{args:?}");
    }
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{\"schema\": 1,\n \"space\": \"R3\",\n \"g\": {\"num\": [\"1\", 0.5]},\n \"h\": {\"num\": [\"1\"]},\n \"punctures\": [\"inf\"]}");
    let out = minsurf(&["verify", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("g.num[1]"));
    let broken = write(dir.path(), "broken.json", "{\"schema\": 1,\n \"space\": ");
    let out = minsurf(&["verify", &broken]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(minsurf(&["verify", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(minsurf(&["catalog", "show", "scherk"]).status.code(), Some(2));
    assert_eq!(minsurf(&["mesh", "catenoid", "--grid", "7"]).status.code(), Some(2));
    let violated = write(dir.path(), "v.json", r#"{"schema": 1, "space": "R4", "family": "hkw-r4", "params": {"a": "1", "b": "2"}}"#);
    assert_eq!(minsurf(&["verify", &violated]).status.code(), Some(2));
}
