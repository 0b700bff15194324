use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let args: Vec<String> = args
        .iter()
        .map(|a| if a.ends_with(".alg") || a.ends_with(".sys") { dir.join(a).to_string_lossy().into_owned() } else { a.to_string() })
        .collect();
    Command::new(env!("CARGO_BIN_EXE_charp-diffalg"))
        .args(&args)
        .env_remove("CHARP_DIFFALG_BOUND")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn b2_is_a_quasifield_with_one_point() {
    let o = run(&["algebra", "b2.alg"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("VALIDATE PASS"), "{s}");
    assert!(s.contains("SIMPLE true"));
    assert!(s.contains("QSPEC 1 point\n"));
    assert!(s.contains("HOMEO spec_qspec PASS"));
}

#[test]
fn dual_numbers_are_not_simple() {
    let s = stdout(&run(&["algebra", "dual2.alg", "--checks", "simple"]));
    assert_eq!(s.trim_end().lines().last(), Some("SIMPLE false"));
}

#[test]
fn product_has_two_points() {
    let s = stdout(&run(&["algebra", "b2xb2.alg", "--checks", "spectra"]));
    assert!(s.contains("SPEC 2 points\n"));
    assert!(s.contains("QSPEC 2 points\n"));
}

#[test]
fn invalid_algebra_reports_violation() {
    let o = run(&["algebra", "h2_3.alg"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("VIOLATION leibniz 1 1 2"));
}

#[test]
fn malformed_file_reports_position() {
    let o = run(&["algebra", "malformed.alg"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 5, column 13"), "{err}");
}

#[test]
fn json_report_is_structured() {
    let o = run(&["algebra", "b2.alg", "--checks", "simple", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    let lines = v["lines"].as_array().unwrap();
    assert!(lines.iter().any(|l| l["text"] == "SIMPLE true"));
}

#[test]
fn solution_counts() {
    for (f, n) in [("exp.sys", 2), ("shift.sys", 2), ("unit.sys", 0), ("coupled.sys", 9), ("riccati.sys", 2), ("plane.sys", 8)] {
        let s = stdout(&run(&["solve", f]));
        assert!(s.starts_with(&format!("SOLUTIONS {n}\n")), "{f}: {s}");
    }
}

#[test]
fn solve_json_counts_points() {
    let o = run(&["solve", "exp.sys", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["count"], 2);
    assert_eq!(v["points"].as_array().unwrap().len(), 2);
}

#[test]
fn oversized_search_exits_three() {
    assert_eq!(run(&["solve", "exp.sys", "--precision", "30"]).status.code(), Some(3));
}

#[test]
fn taylor_of_b2() {
    let o = run(&["taylor", "b2.alg"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("ROW eps -> [1]=1"));
    assert!(s.ends_with("UNIVERSAL PASS\n"));
}

#[test]
fn taylor_kernel_of_projection() {
    let s = stdout(&run(&["taylor", "b2xb2.alg", "--phi", "1,0,0,0"]));
    assert!(s.contains("KERNEL [0,0,1,0;0,0,0,1]"), "{s}");
}

#[test]
fn taylor_needs_a_map_without_quasifield() {
    assert_eq!(run(&["taylor", "dual2.alg"]).status.code(), Some(2));
}

#[test]
fn hw_calculator() {
    assert_eq!(stdout(&run(&["hw", "p=2", "m=1", "N=3", "mul", "(1+[1])", "[1]"])), "[1]=1\n");
    assert_eq!(stdout(&run(&["hw", "p=2", "m=1", "N=3", "d", "1"])), "0\n");
}
