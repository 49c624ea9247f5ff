use std::fs;
use std::process::{Command, Output};

use qdouble_core::fixtures::FixtureSet;

fn qdouble(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdouble")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn report(dir: &std::path::Path, name: &str) -> serde_json::Value {
    let text = fs::read_to_string(dir.join(format!("{name}_report.json"))).unwrap();
    serde_json::from_str(&text).unwrap()
}

#[test]
fn compute_z6_writes_all_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = qdouble(&["compute", "Z6", "--out", out]);
    assert!(o.status.success());
    let r = report(dir.path(), "Z6");
    assert_eq!(r["rank"], 36);
    assert_eq!(r["d_b_value"], "46656");
    assert!(dir.path().join("Z6_modular.json").exists());
    let fusion = fs::read_to_string(dir.path().join("Z6_fusion.txt")).unwrap();
    // Z6 x Z6 fusion is a group ring: one entry per (i, j)
    assert_eq!(fusion.lines().count(), 36 * 36);
}

#[test]
fn outputs_are_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        assert!(qdouble(&["compute", "binary_tetrahedral", "--out", d.path().to_str().unwrap()]).status.success());
    }
    for f in ["binary_tetrahedral_modular.json", "binary_tetrahedral_fusion.txt", "binary_tetrahedral_report.json"] {
        assert_eq!(fs::read(a.path().join(f)).unwrap(), fs::read(b.path().join(f)).unwrap(), "{f}");
    }
}

#[test]
fn aggregates_only_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let o = qdouble(&["compute", "F21", "--aggregates-only", "--format", "csv", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    assert!(!dir.path().join("F21_fusion.txt").exists());
    let csv = fs::read_to_string(dir.path().join("F21_report.csv")).unwrap();
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = |k: &str| row[header.iter().position(|h| *h == k).unwrap()];
    assert_eq!(col("row_sum_double"), "false");
    assert_eq!(col("rank"), "25");
}

#[test]
fn trivial_group_has_rank_one() {
    let dir = tempfile::tempdir().unwrap();
    assert!(qdouble(&["compute", "trivial", "--out", dir.path().to_str().unwrap()]).status.success());
    assert_eq!(report(dir.path(), "trivial")["rank"], 1);
}

#[test]
fn generator_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let gens = dir.path().join("s3.txt");
    fs::write(&gens, "# symmetric group on three points\n(1,2,3)\n(1,2)\n").unwrap();
    let o = qdouble(&["compute", "--generators", gens.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(report(dir.path(), "s3")["rank"], 8);
}

#[test]
fn verify_hurwitz_group() {
    let o = qdouble(&["verify", "Sigma168"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.contains("s_matrix") && l.contains(" ok ")));
    assert!(text.contains("0 failed"));
}

#[test]
fn verify_rejects_corrupted_fixtures() {
    let mut fx = FixtureSet::builtin();
    let z6 = fx.group.iter_mut().find(|g| g.name == "Z6").unwrap();
    z6.d_b = Some("2^7·3^6".into());
    z6.row.units = 35;
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("corrupted.json");
    fs::write(&path, serde_json::to_string(&fx).unwrap()).unwrap();
    let o = qdouble(&["verify", "Z6", "--fixtures", path.to_str().unwrap()]);
    assert!(!o.status.success());
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.contains("d_B") && l.contains("FAIL") && l.contains("2^7·3^6 / 2^6·3^6")));
    assert!(text.lines().any(|l| l.contains("units") && l.contains("FAIL")));
    assert!(text.contains("2 failed"));
}

#[test]
fn verify_reports_unreadable_fixture_cleanly() {
    let o = qdouble(&["verify", "Z6", "--fixtures", "/nonexistent/fixtures.toml"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn graph_commands() {
    let o = qdouble(&["graph", "binary_icosahedral", "--irrep", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("N2: 9 components"));

    let o = qdouble(&["graph", "Z6", "--irrep", "1"]);
    assert!(stdout(&o).contains("36 components"));

    let dir = tempfile::tempdir().unwrap();
    let o = qdouble(&["graph", "Sigma36x3", "--embedding", "--dot", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("N5: 14 components"));
    let dot = fs::read_to_string(dir.path().join("Sigma36x3_N5.dot")).unwrap();
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("\"(1:1)\""));

    let o = qdouble(&["graph", "Z6", "--irrep", "37"]);
    assert!(!o.status.success());
}

#[test]
fn list_and_unknown_group() {
    let o = qdouble(&["list"]);
    assert!(stdout(&o).contains("Sigma360x3"));
    let o = qdouble(&["compute", "Sigma999"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("not in catalog"));
}
