use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const TWO_ATOM: &str = r#"{"atoms":[{"t":-1.0,"mu":1.0},{"t":1.0,"mu":1.0}],"a":[[1.0,0.0],[1.0,0.0]],"b":[[1.0,0.0],[1.0,0.0]],"kappa":[1.0,0.0]}"#;

fn singpert(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_singpert"))
        .current_dir(dir)
        .env_remove("SINGPERT_OUT")
        .args(args)
        .output()
        .expect("binary runs")
}

fn result_files(root: &Path) -> Vec<std::path::PathBuf> {
    let mut out = Vec::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in fs::read_dir(&d).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else if p.file_name().unwrap() == "result.json" {
                out.push(p);
            }
        }
    }
    out
}

#[test]
fn two_atom_spectrum() {
    let tmp = tempfile::tempdir().unwrap();
    fs::write(tmp.path().join("p.json"), TWO_ATOM).unwrap();
    let o = singpert(tmp.path(), &["spectrum", "p.json", "--out", "o"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let mut eig: Vec<f64> = v["oracle"]
        .as_array()
        .unwrap()
        .iter()
        .map(|z| z[0].as_f64().unwrap())
        .collect();
    eig.sort_by(f64::total_cmp);
    let s2 = 2f64.sqrt();
    assert!((eig[0] - (1.0 - s2)).abs() < 1e-10);
    assert!((eig[1] - (1.0 + s2)).abs() < 1e-10);

    let files = result_files(&tmp.path().join("o"));
    assert_eq!(files.len(), 1);
    let art: Value = serde_json::from_str(&fs::read_to_string(&files[0]).unwrap()).unwrap();
    let hash = art["manifest"]["input_hash"].as_str().unwrap();
    assert!(files[0]
        .parent()
        .unwrap()
        .ends_with(format!("spectrum/{hash}")));
    assert_eq!(art["manifest"]["command"], "spectrum");
}

#[test]
fn reruns_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    fs::write(tmp.path().join("p.json"), TWO_ATOM).unwrap();
    let args = [
        "diagnose", "growth", "p.json", "--out", "o", "--quiet", "--points", "50",
    ];
    assert_eq!(singpert(tmp.path(), &args).status.code(), Some(0));
    let files = result_files(&tmp.path().join("o"));
    let first = fs::read(&files[0]).unwrap();
    assert_eq!(singpert(tmp.path(), &args).status.code(), Some(0));
    assert_eq!(fs::read(&files[0]).unwrap(), first);
    assert!(files[0].parent().unwrap().join("growth.csv").exists());
}

#[test]
fn malformed_json_is_an_input_error_with_position() {
    let tmp = tempfile::tempdir().unwrap();
    fs::write(
        tmp.path().join("p.json"),
        "{\"atoms\": [\n  {\"t\": 1.0, \"mu\": }",
    )
    .unwrap();
    let o = singpert(tmp.path(), &["spectrum", "p.json", "--out", "o"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2 column"), "{err}");
}

#[test]
fn compare_surfaces_admissibility() {
    let tmp = tempfile::tempdir().unwrap();
    // κ = ω = Σ a b̄ μ/t = 0 violates the admissibility condition
    fs::write(
        tmp.path().join("p.json"),
        TWO_ATOM.replace("\"kappa\":[1.0,0.0]", "\"kappa\":[0.0,0.0]"),
    )
    .unwrap();
    let o = singpert(tmp.path(), &["compare", "p.json", "--out", "o"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("admissibility"));
}

#[test]
fn tolerance_and_usage_exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    fs::write(tmp.path().join("p.json"), TWO_ATOM).unwrap();
    let o = singpert(tmp.path(), &["compare", "p.json", "--out", "o", "--quiet"]);
    assert_eq!(o.status.code(), Some(0));
    let o = singpert(
        tmp.path(),
        &["spectrum", "p.json", "--out", "o", "--quiet", "--tol", "0"],
    );
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(singpert(tmp.path(), &["frobnicate"]).status.code(), Some(1));
    assert_eq!(singpert(tmp.path(), &["spectrum"]).status.code(), Some(1));
    let o = singpert(tmp.path(), &["spectrum", "missing.json", "--out", "o"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn gallery_commands() {
    let tmp = tempfile::tempdir().unwrap();
    let o = singpert(
        tmp.path(),
        &[
            "gallery", "ml-check", "--z=-1,0", "--n", "1000", "--out", "o",
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["err"].as_f64().unwrap() <= v["tail_bound"].as_f64().unwrap());

    let t: Vec<String> = (1..=5000).map(|n| n.to_string()).collect();
    fs::write(tmp.path().join("t.txt"), t.join("\n")).unwrap();
    let o = singpert(
        tmp.path(),
        &["gallery", "lacunary", "--spectrum", "t.txt", "--out", "o"],
    );
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["x"], serde_json::json!([2.0, 26.0, 2810.0]));

    let o = singpert(
        tmp.path(),
        &[
            "gallery", "section4", "--k", "6", "--len", "200", "--out", "o", "--quiet",
        ],
    );
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
}

#[test]
fn output_root_from_environment() {
    let tmp = tempfile::tempdir().unwrap();
    fs::write(tmp.path().join("p.json"), TWO_ATOM).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_singpert"))
        .current_dir(tmp.path())
        .env("SINGPERT_OUT", tmp.path().join("env-root"))
        .args(["clark", "p.json", "--zeta", "0,1", "--quiet"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(result_files(&tmp.path().join("env-root")).len(), 1);
}
