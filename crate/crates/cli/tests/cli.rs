use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn qdouble(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qdouble"));
    cmd.args(args).env_remove("QDOUBLE_WORKERS");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn verify_default_meets_expectations_deterministically() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let out = qdouble(&["--q", "1.3", "verify", "--out", a.to_str().unwrap()], &[]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let out = qdouble(
        &["verify", "--q", "1.3", "--out", b.to_str().unwrap()],
        &[("QDOUBLE_WORKERS", "1")],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let doc = read_json(&a);
    assert_eq!(doc["config"]["q"], "1.3");
    let results = doc["results"].as_array().unwrap();
    let sections: Vec<&str> = results
        .iter()
        .map(|r| r["params"]["section"].as_str().unwrap())
        .collect();
    let mut order = sections.clone();
    order.dedup();
    assert_eq!(
        order,
        [
            "qscalars",
            "fockrep",
            "hopfops",
            "symalg",
            "rmatrix",
            "sl2bridge"
        ]
    );
    for r in results {
        let rspec = r["params"]["rspec"].as_str().unwrap_or("");
        let id = r["identity"].as_str().unwrap();
        if rspec == "quantum_double" && !id.starts_with("yan_relation") {
            assert_eq!(r["verdict"], "pass", "{id}");
        }
    }
    let yan_a = results
        .iter()
        .find(|r| r["identity"] == "intertwiner_a" && r["params"]["rspec"] == "yan_claimed")
        .unwrap();
    assert_eq!(yan_a["verdict"], "fail");
}

#[test]
fn config_file_echo_and_alpha() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.toml", "q = \"1.3\"\nkappa = 0\nrspecs = []\n");
    let out_path = dir.path().join("r.json");
    let out = qdouble(
        &[
            "--config",
            &cfg,
            "verify",
            "--out",
            out_path.to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc = read_json(&out_path);
    let alpha = doc["config"]["alpha"].as_f64().unwrap();
    assert!((alpha - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    assert!(doc["results"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["params"]["section"] != "rmatrix"));
}

#[test]
fn config_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let out = qdouble(&["verify"], &[]);
    assert_eq!(out.status.code(), Some(2));

    let cfg = write(&dir, "bad.toml", "q = \"1.3\"\n\nunknown_key = 3\n");
    let out = qdouble(&["--config", &cfg, "verify"], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let cfg = write(&dir, "noq.toml", "kappa = 1\n");
    assert_eq!(
        qdouble(&["--config", &cfg, "verify"], &[]).status.code(),
        Some(2)
    );

    let report = dir.path().join("never.json");
    let cfg = write(&dir, "cap.toml", "q = 1.3\n[caps]\ntriple_dim = 17\n");
    let out = qdouble(
        &[
            "--config",
            &cfg,
            "verify",
            "--out",
            report.to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(!report.exists());

    let out = qdouble(&["--q", "1.3", "verify"], &[("QDOUBLE_WORKERS", "0")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unmet_expectation_exits_one() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        &dir,
        "e.toml",
        "q = 1.3\nrspecs = [\"quantum_double\"]\n[expect]\n\"quantum_double.intertwiner_a\" = \"fail\"\n",
    );
    let out = qdouble(
        &[
            "--config",
            &cfg,
            "verify",
            "--out",
            dir.path().join("r.json").to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn rmatrix_dump_round_trips() {
    let dir = TempDir::new().unwrap();
    let dumps = dir.path().join("dumps");
    let out = qdouble(
        &[
            "--q",
            "1.3",
            "--dim",
            "10",
            "--window",
            "3",
            "rmatrix",
            "--dump-dir",
            dumps.to_str().unwrap(),
            "--out",
            dir.path().join("r.json").to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(dumps.join("R_quantum_double.txt")).unwrap();
    assert!(text.starts_with("# 100 100\n"));
    let m = qdouble::dump::parse(&text).unwrap();
    let p = qdouble::DeformParams::new(qdouble::qscalars::c(1.3), 0).unwrap();
    let rep = qdouble::FockRep::hopf(10, p).unwrap();
    let r = qdouble::rmatrix::build_r(&qdouble::RSpec::QuantumDouble, &rep, &rep).unwrap();
    assert_eq!(m, r);
}

#[test]
fn pairing_and_scan() {
    let out = qdouble(&["--q", "1.3", "pairing"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("k=")).count(), 16);

    let dir = TempDir::new().unwrap();
    let path = dir.path().join("scan.jsonl");
    let cfg = write(
        &dir,
        "s.toml",
        "q = 2\nrspecs = [\"quantum_double\"]\nrandom_words = 0\n",
    );
    let out = qdouble(
        &[
            "--config",
            &cfg,
            "scan",
            "--qs",
            "1.3,0.7+0.2i",
            "--out",
            path.to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let lines: Vec<Value> = std::fs::read_to_string(&path)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[1]["config"]["q"], "0.7+0.2i");
}
