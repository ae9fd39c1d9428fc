//! End-to-end tests of the binary: flags, config files, exit codes,
//! file outputs and determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lie-eigenlab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary must run")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).to_string()
}

fn json_of(out: &Output) -> serde_json::Value {
    let text = stdout(out);
    let start = text.find('{').expect("stdout must contain a JSON envelope");
    serde_json::from_str(&text[start..]).expect("envelope must parse")
}

struct TempDir(PathBuf);

impl TempDir {
    fn new(tag: &str) -> Self {
        let dir =
            std::env::temp_dir().join(format!("lie-eigenlab-test-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        TempDir(dir)
    }

    fn path(&self) -> &Path {
        &self.0
    }

    fn file(&self, name: &str, contents: &str) -> String {
        let p = self.0.join(name);
        std::fs::write(&p, contents).unwrap();
        p.display().to_string()
    }
}

impl Drop for TempDir {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

#[test]
fn casimir_prints_the_su2_scalar() {
    let out = run(&[
        "casimir", "--group", "su", "--n", "2", "--family", "standard",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(
        stdout(&out).contains("-1.5000000"),
        "stdout: {}",
        stdout(&out)
    );
}

#[test]
fn casimir_prints_the_su4_scalar() {
    let out = run(&[
        "casimir", "--group", "su", "--n", "4", "--family", "standard",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("-3.7500000"));
}

#[test]
fn unknown_family_is_a_usage_error() {
    let out = run(&[
        "casimir", "--group", "su", "--n", "3", "--family", "mystery",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown family"));
}

#[test]
fn randomized_commands_demand_a_seed() {
    let out = run(&[
        "verify-family",
        "--group",
        "su",
        "--n",
        "3",
        "--family",
        "standard",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("seed"));
}

#[test]
fn verify_family_tensor_passes_with_mu_minus_two() {
    let out = run(&[
        "verify-family",
        "--group",
        "su",
        "--n",
        "3",
        "--family",
        "tensor",
        "--samples",
        "50",
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let v = json_of(&out);
    assert_eq!(v["schema"], "lie-eigenlab-report/1");
    assert_eq!(v["verdict"], "pass");
    let mu_check = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "verify-family/mu-vs-expected")
        .expect("tensor family must check mu against -2");
    assert!(mu_check["measured"].as_f64().unwrap() < 1e-9);
}

#[test]
fn non_isotropic_generator_is_a_precondition_error() {
    let tmp = TempDir::new("iso");
    let gen = tmp.file("e1.txt", "1 0  0 0  0 0  0 0\n");
    let out = run(&[
        "verify-family",
        "--group",
        "so",
        "--n",
        "4",
        "--family",
        "isotropic",
        "--gen-a",
        &gen,
        "--samples",
        "10",
        "--seed",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2), "stderr: {}", stderr(&out));
    assert!(stderr(&out).contains("isotropic"));
}

#[test]
fn injected_defect_fails_with_exit_one() {
    let out = run(&[
        "verify-family",
        "--group",
        "su",
        "--n",
        "3",
        "--family",
        "tensor",
        "--samples",
        "20",
        "--seed",
        "7",
        "--inject-defect",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["verdict"], "fail");
}

#[test]
fn extended_family_on_su3_is_rejected() {
    let out = run(&[
        "verify-family",
        "--group",
        "su",
        "--n",
        "3",
        "--family",
        "extended",
        "--s",
        "2",
        "--samples",
        "10",
        "--seed",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("2s"));
}

#[test]
fn verify_morphism_hopf_data_passes_and_probes_the_singular_set() {
    let tmp = TempDir::new("hopf");
    let p = tmp.file("p.txt", "1 0 : 1 0\n");
    let q = tmp.file("q.txt", "1 0 : 0 1\n");
    let out = run(&[
        "verify-morphism",
        "--group",
        "su",
        "--n",
        "2",
        "--family",
        "standard",
        "--poly-p",
        &p,
        "--poly-q",
        &q,
        "--samples",
        "100",
        "--seed",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let v = json_of(&out);
    assert_eq!(v["verdict"], "pass");
    let probe = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "verify-morphism/singular-set-floor")
        .expect("probe result present");
    assert!(probe["measured"].as_f64().unwrap() > 0.01);
    assert!(probe["detail"].as_str().unwrap().contains("likely empty"));
}

#[test]
fn verify_morphism_rejects_dependent_polynomials() {
    let tmp = TempDir::new("dep");
    let p = tmp.file("p.txt", "1 0 : 1 0\n");
    let q = tmp.file("q.txt", "0 2 : 1 0\n");
    let out = run(&[
        "verify-morphism",
        "--group",
        "su",
        "--n",
        "2",
        "--family",
        "standard",
        "--poly-p",
        &p,
        "--poly-q",
        &q,
        "--samples",
        "10",
        "--seed",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("dependent"));
}

#[test]
fn verify_morphism_rejects_mixed_degrees() {
    let tmp = TempDir::new("deg");
    let p = tmp.file("p.txt", "1 0 : 1 0\n");
    let q = tmp.file("q.txt", "1 0 : 1 1\n");
    let out = run(&[
        "verify-morphism",
        "--group",
        "su",
        "--n",
        "2",
        "--family",
        "standard",
        "--poly-p",
        &p,
        "--poly-q",
        &q,
        "--samples",
        "10",
        "--seed",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("degree"));
}

#[test]
fn sample_manifold_writes_csv_and_ply_and_is_deterministic() {
    let tmp = TempDir::new("cloud");
    let h = tmp.file("h.txt", "1 0 0 0 0 0\n0 0 2 0 0 0\n0 0 0 0 3 0\n");
    let base_a = tmp.path().join("a");
    let base_b = tmp.path().join("b");
    for base in [&base_a, &base_b] {
        let out = run(&[
            "sample-manifold",
            "--group",
            "su",
            "--n",
            "3",
            "--h-matrix",
            &h,
            "--samples",
            "40",
            "--seed",
            "11",
            "--spot-checks",
            "3",
            "--format",
            "json,csv,ply",
            "--out",
            &base.display().to_string(),
        ]);
        assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    }
    let csv_a = std::fs::read_to_string(base_a.with_extension("csv")).unwrap();
    let csv_b = std::fs::read_to_string(base_b.with_extension("csv")).unwrap();
    assert_eq!(csv_a.lines().count(), 40);
    assert_eq!(
        csv_a, csv_b,
        "fixed seed must reproduce the CSV byte for byte"
    );
    // row layout: 2 m^2 matrix entries + |Psi| + sigma_min + curvature slot
    let first = csv_a.lines().next().unwrap();
    assert_eq!(first.split(',').count(), 2 * 9 + 3);
    let ply = std::fs::read_to_string(base_a.with_extension("ply")).unwrap();
    assert!(ply.starts_with("ply\nformat ascii 1.0"));
    assert!(ply.contains("element vertex 40"));
    // JSON envelopes agree modulo the isolated timing record
    let report_a: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(base_a.with_extension("json")).unwrap())
            .unwrap();
    let report_b: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(base_b.with_extension("json")).unwrap())
            .unwrap();
    let strip = |mut v: serde_json::Value| {
        v.as_object_mut().unwrap().remove("timing");
        v.as_object_mut().unwrap().remove("config");
        v
    };
    assert_eq!(strip(report_a), strip(report_b));
}

#[test]
fn sample_manifold_rejects_identity_h_with_exit_two() {
    let out = run(&[
        "sample-manifold",
        "--group",
        "su",
        "--n",
        "3",
        "--h-matrix",
        "inline:1 0 0 0 0 0 0 0 1 0 0 0 0 0 0 0 1 0",
        "--samples",
        "5",
        "--seed",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("identity"));
}

#[test]
fn sample_manifold_accepts_random_distinct_h() {
    let out = run(&[
        "sample-manifold",
        "--group",
        "su",
        "--n",
        "3",
        "--h-matrix",
        "random-distinct",
        "--samples",
        "10",
        "--seed",
        "9",
        "--spot-checks",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let v = json_of(&out);
    assert_eq!(v["verdict"], "pass");
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let tmp = TempDir::new("cfg");
    let cfg = tmp.file(
        "run.cfg",
        "[run]\ncommand = verify-family\ngroup = su\nn = 3\nfamily = tensor\nsamples = 20\nseed = 7\ntol = 1e-8\n",
    );
    let out = run(&["verify-family", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let v = json_of(&out);
    assert_eq!(v["config"]["n"], 3);
    assert_eq!(v["config"]["samples"], 20);
    // flag overrides the file
    let out = run(&["verify-family", "--config", &cfg, "--samples", "25"]);
    let v = json_of(&out);
    assert_eq!(v["config"]["samples"], 25);
}

#[test]
fn acceptance_subset_runs_only_the_matching_criterion() {
    let out = run(&["acceptance", "--seed", "1", "--only", "casimir-agreement"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("criterion 1"));
    assert!(!text.contains("criterion 2"));
    let out = run(&["acceptance", "--seed", "1", "--only", "no-such-criterion"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn thread_cap_env_var_is_respected() {
    let out = bin()
        .args(["acceptance", "--seed", "1", "--only", "gradient-formula"])
        .env("LIE_EIGENLAB_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
}

#[test]
fn verify_family_reports_are_byte_identical_for_fixed_seeds() {
    let args = [
        "verify-family",
        "--group",
        "sp",
        "--n",
        "1",
        "--family",
        "standard",
        "--samples",
        "15",
        "--seed",
        "21",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    let text_a = stdout(&a);
    let text_b = stdout(&b);
    let mask = |t: &str| -> String {
        let start = t.find('{').unwrap();
        let mut v: serde_json::Value = serde_json::from_str(&t[start..]).unwrap();
        v.as_object_mut().unwrap().remove("timing");
        serde_json::to_string_pretty(&v).unwrap()
    };
    assert_eq!(mask(&text_a), mask(&text_b));
}
