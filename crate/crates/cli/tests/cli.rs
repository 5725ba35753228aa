use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfvoa")).args(args).current_dir(fixtures()).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn sweedler_axioms_pass() {
    let out = run(&["verify-hopf", "sweedler.json"]);
    assert_eq!(out.status.code(), Some(0));
    let checks = json(&out)["checks"].as_array().unwrap().clone();
    assert!(checks.iter().all(|c| c["status"] == "pass"));
}

#[test]
fn mutated_antipode_fails_with_witness() {
    let out = run(&["verify-hopf", "sweedler-mutated.json"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let c = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "convolution inverse").unwrap();
    assert_eq!(c["witness"]["h"], "x");
}

#[test]
fn sweedler_is_not_cocommutative() {
    let out = run(&["cocomm", "sweedler.json", "--as-algebra-only"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["checks"][0]["witness"]["h"], "x");
}

#[test]
fn reports_are_byte_identical() {
    let a = run(&["kernel", "z4-via-z2.json", "--window", "4"]);
    let b = run(&["kernel", "z4-via-z2.json", "--window", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["data"]["kernel"], serde_json::json!(["-1 + g^2", "-g + g^3"]));
}

#[test]
fn schema_errors_exit_2_with_pointer() {
    let dir = tempfile::tempdir().unwrap();
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(fixtures().join("z2.json")).unwrap()).unwrap();
    v["mul"][0][3] = Value::String("1/0".into());
    let p = dir.path().join("bad.json");
    std::fs::write(&p, v.to_string()).unwrap();
    let out = run(&["verify-hopf", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/mul/0/3"));
}

#[test]
fn budget_beyond_window_is_a_usage_error() {
    let out = run(&["verify-action", "z2-parity.json", "--window", "4", "--budget", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn conductor_flag_rejects_larger_fields() {
    let ok = run(&["verify-hopf", "z4.json", "--conductor", "4"]);
    assert_eq!(ok.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(fixtures().join("z2.json")).unwrap()).unwrap();
    v["conductor"] = Value::from(3);
    let p = dir.path().join("z2-over-q3.json");
    std::fs::write(&p, v.to_string()).unwrap();
    assert_eq!(run(&["verify-hopf", p.to_str().unwrap(), "--conductor", "3"]).status.code(), Some(0));
    assert_eq!(run(&["verify-hopf", p.to_str().unwrap(), "--conductor", "4"]).status.code(), Some(2));
}

#[test]
fn fixtures_dir_resolves_inputs() {
    let out = Command::new(env!("CARGO_BIN_EXE_hopfvoa"))
        .args(["grouplikes", "s3.json", "--fixtures-dir"])
        .arg(fixtures())
        .current_dir(std::env::temp_dir())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["data"]["grouplikes"]["group"], "S3");
}

#[test]
fn build_then_verify_voa() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("voa.json");
    let out = run(&["build-voa", "--rank", "1", "--window", "4", "--budget", "4", "--out", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["verify-voa", p.to_str().unwrap(), "--budget", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json(&out)["data"]["central_charge"], "1");
}

#[test]
fn written_fixtures_match_shipped() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["fixtures", "--fixtures-dir", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    for entry in std::fs::read_dir(dir.path()).unwrap() {
        let p = entry.unwrap().path();
        let name = p.file_name().unwrap();
        assert_eq!(std::fs::read(&p).unwrap(), std::fs::read(fixtures().join(name)).unwrap(), "{name:?}");
    }
}

#[test]
fn action_commands() {
    let irreps = ["s3-trivial.json", "s3-sign.json", "s3-standard.json"];
    let mut args = vec!["decompose", "s3-color.json", "--window", "3", "--irreps"];
    args.extend(irreps);
    let out = run(&args);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["data"]["multiplicities"][2], serde_json::json!([3, 0, 3]));

    let mut args = vec!["separating-vector", "s3-color.json", "--window", "3", "--irrep", "3", "--q0", "1", "--irreps"];
    args.extend(irreps);
    let out = run(&args);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["data"]["rank"], 2);

    let out = run(&["tensor-mult", "s3.json", "s3-standard.json", "s3-standard.json", "s3-sign.json"]);
    assert_eq!(json(&out)["data"]["multiplicity"], 1);

    let out = run(&["sigma-image", "z2-parity.json", "--weight", "2", "--cutoff", "6"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["data"]["saturated"], true);

    let out = run(&["an-verify", "z2-parity.json", "--level", "1", "--budget", "4"]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&["verify-action", "sweedler-candidate.json", "--budget", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn suite_single_criterion() {
    let out = run(&["suite", "--only", "11"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["criteria"][0]["passed"], true);
    assert!(String::from_utf8_lossy(&out.stderr).contains("[PASS] 11"));
}

