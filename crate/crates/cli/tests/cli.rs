use std::path::PathBuf;
use std::process::{Command, Output};

fn knoerrer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knoerrer")).args(args).env_remove("KNOERRER_OUT").output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn fraction_values() {
    let out = knoerrer(&["fraction", "17", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for line in ["alpha [4,2,3]", "beta [2,2,4,2]", "lambda [17,5,3,1]", "t [1,1,1,3,3]"] {
        assert!(text.lines().any(|l| l == line), "missing {line:?} in\n{text}");
    }
}

#[test]
fn knoerrer_relations_for_5_2() {
    let out = knoerrer(&["present", "knoerrer", "5", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rels: Vec<&str> = text.lines().filter(|l| l.ends_with("=0")).collect();
    assert_eq!(rels, ["z1z1=0", "z2z2z2=0", "z1z2=0", "z2z2z1=0"]);
}

#[test]
fn invalid_input_exits_2() {
    assert_eq!(knoerrer(&["fraction", "4", "2"]).status.code(), Some(2));
    assert_eq!(knoerrer(&["fraction", "5", "5"]).status.code(), Some(2));
    assert_eq!(knoerrer(&["verify", "5", "2", "--checks", "bogus"]).status.code(), Some(2));
    let out = knoerrer(&["equiv", "--alpha", "2,3", "--keep", "1", "--alpha", "2,3", "--keep", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("must contain 0"));
}

#[test]
fn verify_passes_and_fault_fails() {
    let out = knoerrer(&["verify", "17", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pair"], serde_json::json!([17, 5]));
    let checks = v["checks"].as_object().unwrap();
    assert_eq!(checks.len(), 6);
    assert!(checks.values().all(|c| c == "pass"), "{v}");

    let out = knoerrer(&["verify", "5", "2", "--inject-fault", "phi-iso"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert!(v["checks"]["phi-iso"].as_str().unwrap().starts_with("fail"));
    assert_eq!(v["checks"]["dim=r"], "pass");
}

#[test]
fn sweep_is_independent_of_job_count() {
    let args = |jobs: &'static str| ["sweep", "--rmax", "14", "--jobs", jobs, "--format", "json"];
    let one = knoerrer(&args("1"));
    let four = knoerrer(&args("4"));
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn sweep_reports_faults() {
    let out = knoerrer(&["sweep", "--rmax", "6", "--inject-fault", "gldim=2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).trim_end().ends_with("failed"));
}

#[test]
fn empty_sweep_succeeds() {
    let out = knoerrer(&["sweep", "--rmin", "5", "--rmax", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("0 pairs, 0 failed"));
}

#[test]
fn out_dir_receives_file() {
    let dir: PathBuf = std::env::temp_dir().join(format!("knoerrer-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = knoerrer(&["--out", dir.to_str().unwrap(), "verify", "7", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let path = PathBuf::from(stdout(&out).trim());
    assert!(path.starts_with(&dir), "{path:?}");
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(v["pair"], serde_json::json!([7, 3]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn equiv_examples() {
    let v = json(&knoerrer(&["equiv", "--alpha", "2,3", "--keep", "0", "--alpha", "2,2,3", "--keep", "0,2"]));
    assert_eq!(v["equivalent"], false);
    assert_eq!(v["concatenation_verdict"], true);
    assert_eq!(v["disagreement"], true);

    let v = json(&knoerrer(&["equiv", "--alpha", "4,2,3", "--keep", "0,2", "--alpha", "4,2,3", "--keep", "0,2"]));
    assert_eq!(v["equivalent"], true);
    assert_eq!(v["disagreement"], false);
}

#[test]
fn k0_groups() {
    let v = json(&knoerrer(&["k0", "cyclic", "5", "2"]));
    assert_eq!(v["k0"], "Z/5");
    assert_eq!(v["obstruction"]["verdict"], "compatible");
    let v = json(&knoerrer(&["k0", "dihedral", "7", "2"]));
    assert_eq!(v["k0"], "Z/2 x Z/6");
}

#[test]
fn dot_output_is_a_digraph() {
    let out = knoerrer(&["present", "recon", "17", "5", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("digraph"));
}
