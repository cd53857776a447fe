use std::path::{Path, PathBuf};
use std::process::Command;

use fclust::cli::{run, EXIT_INVALID, EXIT_USAGE};
use fclust::io::{from_json, to_json};
use fclust::{delta_space, validate_metric, FiniteMetricSpace, Partition, PersistentSet};
use tempfile::TempDir;

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn fclust(args: &[&str]) -> Out {
    let mut stdout = Vec::new();
    let mut stderr = Vec::new();
    let argv = std::iter::once("fclust").chain(args.iter().copied());
    let code = run(argv, &mut stdout, &mut stderr);
    Out {
        code,
        stdout: String::from_utf8(stdout).unwrap(),
        stderr: String::from_utf8(stderr).unwrap(),
    }
}

fn write_space(dir: &TempDir, name: &str, x: &FiniteMetricSpace) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, to_json(x)).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn linkage_x() -> FiniteMetricSpace {
    validate_metric(
        ["A", "B", "C"],
        vec![vec![0.0, 4.0, 3.0], vec![4.0, 0.0, 5.0], vec![3.0, 5.0, 0.0]],
        false,
    )
    .unwrap()
}

#[test]
fn cluster_rips_on_two_points() {
    let dir = TempDir::new().unwrap();
    let x = write_space(&dir, "x.json", &delta_space(2, 1.0).unwrap());
    let out = fclust(&["cluster", "--scheme", r#"{"kind":"rips","delta":1.0}"#, "--input", s(&x)]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let p: Partition = from_json(&out.stdout).unwrap();
    assert!(p.is_single_block());
}

#[test]
fn cluster_reads_scheme_file_and_writes_output() {
    let dir = TempDir::new().unwrap();
    let x = write_space(&dir, "x.json", &fclust::collinear(&[0.0, 1.0, 2.0, 3.0, 4.0]).unwrap());
    let scheme = dir.path().join("scheme.json");
    std::fs::write(&scheme, r#"{ "kind": "clique", "m": 3, "delta": 1.0 }"#).unwrap();
    let out_path = dir.path().join("p.json");
    let out = fclust(&["cluster", "--scheme", s(&scheme), "--input", s(&x), "--output", s(&out_path)]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.is_empty());
    let p: Partition = from_json(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert!(p.is_discrete());
}

#[test]
fn hclust_complete_breakpoints() {
    let dir = TempDir::new().unwrap();
    let x = write_space(&dir, "cx.json", &linkage_x());
    let out = fclust(&["hclust", "--linkage", "complete", "--input", s(&x)]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let theta: PersistentSet = from_json(&out.stdout).unwrap();
    assert_eq!(theta.breakpoints(), vec![3.0, 5.0]);
}

#[test]
fn hclust_variants_and_dot() {
    let dir = TempDir::new().unwrap();
    let x = write_space(&dir, "x.json", &fclust::collinear(&[0.0, 1.0, 2.0, 3.0, 4.0]).unwrap());
    let out = fclust(&["hclust", "--rips-m", "3", "--input", s(&x)]);
    let theta: PersistentSet = from_json(&out.stdout).unwrap();
    assert_eq!(theta.breakpoints(), vec![2.0]);
    let out = fclust(&["hclust", "--trim", "2", "--input", s(&x)]);
    assert_eq!(out.code, 0);
    let out = fclust(&["hclust", "--format", "dot", "--input", s(&x)]);
    assert!(out.stdout.starts_with("digraph"));
    let out = fclust(&["hclust", "--trim", "0", "--input", s(&x)]);
    assert_eq!(out.code, EXIT_INVALID);
}

#[test]
fn invariant_prints_separation() {
    let dir = TempDir::new().unwrap();
    let x = write_space(&dir, "x.json", &fclust::collinear(&[0.0, 1.5, 4.0]).unwrap());
    let out = fclust(&["invariant", "--spec", r#"{"kind":"k_minus","k":2}"#, "--input", s(&x)]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout.trim(), "1.5");
    let out = fclust(&["invariant", "--spec", r#"{"kind":"k_minus","k":4}"#, "--input", s(&x)]);
    assert_eq!(out.stdout.trim(), "\"inf\"");
}

#[test]
fn transform_with_two_point_motif() {
    let dir = TempDir::new().unwrap();
    let x = write_space(&dir, "x.json", &fclust::collinear(&[0.0, 1.0, 3.0]).unwrap());
    let motifs = r#"{"motifs":[{"labels":["a","b"],"dist":[[0,1],[1,0]]}],"tag":"inj","scalable":true}"#;
    let out = fclust(&["transform", "--scheme", motifs, "--input", s(&x)]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let t: FiniteMetricSpace = from_json(&out.stdout).unwrap();
    assert_eq!(t.dist("0", "3").unwrap(), 2.0);
}

#[test]
fn check_runs_probes() {
    let out = fclust(&["check", "--probe", "COUNTEREXAMPLES", "--seed", "7"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("\"violations\": []"));
    let again = fclust(&["check", "--probe", "COUNTEREXAMPLES", "--seed", "7"]);
    assert_eq!(out.stdout, again.stdout);
    let out = fclust(&["check", "--probe", "factorization", "--seed", "3", "--spaces", "5"]);
    assert_eq!(out.code, 0);
    let out = fclust(&["check", "--probe", "NOT_A_PROBE"]);
    assert_eq!(out.code, EXIT_USAGE);
}

#[test]
fn convert_is_canonical_and_idempotent() {
    let dir = TempDir::new().unwrap();
    let raw = dir.path().join("raw.json");
    std::fs::write(&raw, r#"{"labels":["b","a"],"dist":[[0,2.5],[2.5,0]]}"#).unwrap();
    let once = fclust(&["convert", "--input", s(&raw)]);
    assert_eq!(once.code, 0, "{}", once.stderr);
    let canon = dir.path().join("canon.json");
    std::fs::write(&canon, &once.stdout).unwrap();
    let twice = fclust(&["convert", "--input", s(&canon)]);
    assert_eq!(once.stdout, twice.stdout);
    let dot = fclust(&["convert", "--format", "dot", "--input", s(&canon)]);
    assert_eq!(dot.code, EXIT_USAGE);

    let x = write_space(&dir, "x.json", &linkage_x());
    let h = fclust(&["hclust", "--input", s(&x)]);
    let hp = dir.path().join("h.json");
    std::fs::write(&hp, &h.stdout).unwrap();
    assert_eq!(fclust(&["convert", "--input", s(&hp)]).stdout, h.stdout);
    assert!(fclust(&["convert", "--format", "dot", "--input", s(&hp)]).stdout.contains("->"));
}

#[test]
fn validation_errors_exit_three_with_culprit() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"labels":["a","b","c"],"dist":[[0,1,5],[1,0,1],[5,1,0]]}"#).unwrap();
    let out = fclust(&["cluster", "--scheme", r#"{"kind":"rips","delta":1}"#, "--input", s(&bad)]);
    assert_eq!(out.code, EXIT_INVALID);
    assert!(out.stderr.contains("d(a,c)"), "{}", out.stderr);

    let asym = dir.path().join("asym.json");
    std::fs::write(&asym, r#"{"labels":["a","b"],"dist":[[0,1],[2,0]]}"#).unwrap();
    let out = fclust(&["convert", "--input", s(&asym)]);
    assert_eq!(out.code, EXIT_INVALID);
    assert!(out.stderr.contains("d(a,b)"), "{}", out.stderr);

    let x = write_space(&dir, "x.json", &delta_space(2, 1.0).unwrap());
    let out = fclust(&["cluster", "--scheme", r#"{"kind":"rips","delta":-1}"#, "--input", s(&x)]);
    assert_eq!(out.code, EXIT_INVALID);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(fclust(&[]).code, EXIT_USAGE);
    assert_eq!(fclust(&["cluster", "--input", "x.json"]).code, EXIT_USAGE);
    assert_eq!(fclust(&["frobnicate"]).code, EXIT_USAGE);
    let out = fclust(&["cluster", "--scheme", r#"{"kind":"rips","delta":1}"#, "--input", "/no/such/file.json"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert_eq!(fclust(&["hclust", "--linkage", "ward", "--input", "x.json"]).code, EXIT_USAGE);
}

#[test]
fn pseudometric_flag_admits_zero_distances() {
    let dir = TempDir::new().unwrap();
    let z = dir.path().join("z.json");
    std::fs::write(&z, r#"{"labels":["a","b","c"],"dist":[[0,0,2],[0,0,2],[2,2,0]]}"#).unwrap();
    let scheme = r#"{"kind":"rips","delta":1}"#;
    assert_eq!(fclust(&["cluster", "--scheme", scheme, "--input", s(&z)]).code, EXIT_INVALID);
    let out = fclust(&["cluster", "--scheme", scheme, "--input", s(&z), "--pseudometric"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let p: Partition = from_json(&out.stdout).unwrap();
    assert_eq!(p.num_blocks(), 2);
}

#[test]
fn force_lifts_the_clique_guard() {
    let dir = TempDir::new().unwrap();
    let coords: Vec<f64> = (0..30).map(f64::from).collect();
    let x = write_space(&dir, "x.json", &fclust::collinear(&coords).unwrap());
    let scheme = r#"{"kind":"clique","m":3,"delta":2}"#;
    assert_eq!(fclust(&["cluster", "--scheme", scheme, "--input", s(&x)]).code, EXIT_INVALID);
    let out = fclust(&["cluster", "--scheme", scheme, "--input", s(&x), "--force"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
}

#[test]
fn binary_honours_motif_size_variable() {
    let dir = TempDir::new().unwrap();
    let x = write_space(&dir, "x.json", &fclust::collinear(&[0.0, 1.0, 2.0, 3.0]).unwrap());
    let motifs = r#"{"motifs":[{"labels":["a","b","c"],"dist":[[0,1,1],[1,0,1],[1,1,0]]}],"tag":"inj","scalable":true}"#;
    let bin = env!("CARGO_BIN_EXE_fclust");
    let args = ["transform", "--scheme", motifs, "--input", s(&x)];
    let ok = Command::new(bin).args(args).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let limited = Command::new(bin).args(args).env("CLUST_MAX_MOTIF", "2").output().unwrap();
    assert_eq!(limited.status.code(), Some(EXIT_INVALID));
    let forced = Command::new(bin)
        .args(args)
        .arg("--force")
        .env("CLUST_MAX_MOTIF", "2")
        .output()
        .unwrap();
    assert_eq!(forced.status.code(), Some(0));
}
