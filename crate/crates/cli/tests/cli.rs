use std::process::{Command, Output};

use rgauge_core::report::Report;

fn rgauge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rgauge")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn condense_double_prints_table_rows() {
    let o = rgauge(&["condense", "double(1,2)"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("fusion: Z2 x Z4\n"));
    assert!(s.contains("a₂-analogue: order 2, spin 1/4\n"));
    assert!(s.contains("a₋₄-analogue: order 4, spin 7/8 ≡ −1/8\n"));
    assert!(s.contains("gsd_torus: 8\n"));
}

#[test]
fn inline_flags_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = rgauge(&["lattice-verify", "--taxonomy", "double", "--n", "1", "--m", "2", "--L", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let r = Report::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r.lattice.unwrap().logical_factors, vec!["qudit(2)", "qudit(4)"]);
}

#[test]
fn boundary_of_the_double_is_empty() {
    let o = rgauge(&["boundary", "double(1,2)", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = Report::from_json(&stdout(&o)).unwrap();
    assert!(r.boundary.unwrap().lagrangian_subgroups.is_empty());
}

#[test]
fn config_file_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"mode": "condense", "generators": [["1", "0"], ["0", "3"]], "l": 2}"#).unwrap();
    let a = rgauge(&["full", "--config", cfg.to_str().unwrap(), "--json"]);
    let b = rgauge(&["full", "--config", cfg.to_str().unwrap(), "--json"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let r = Report::from_json(&stdout(&a)).unwrap();
    assert_eq!(r.condense.unwrap().fusion_group, vec![3, 3]);
}

#[test]
fn verification_failure_exits_one() {
    let o = rgauge(&["lattice-verify", "--generator", "1,1", "--generator", "0,1", "-L", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("result: FAIL"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(rgauge(&["condense", "nonsense"]).status.code(), Some(2));
    assert_eq!(rgauge(&["lattice-verify", "flux", "-L", "1"]).status.code(), Some(2));
    assert_eq!(rgauge(&["condense"]).status.code(), Some(2));
    assert_eq!(rgauge(&["condense", "--config", "/nonexistent.json"]).status.code(), Some(2));
}
