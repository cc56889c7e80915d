//! The `leviweb` binary: reports, exit codes and CSV output.

mod common;

use std::process::{Command, Output};

use common::fixture_path;

fn leviweb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leviweb")).args(args).output().unwrap()
}

fn fx(name: &str) -> String {
    fixture_path(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn extract_prints_the_web() {
    let o = leviweb(&["extract", &fx("parabola_web")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l == "Phi1: p1^2 - 4*z2"), "{text}");
    assert!(text.lines().any(|l| l == "line: 0,0;0,1"));
    assert!(text.lines().any(|l| l == "d1: 2"));
}

#[test]
fn reports_are_byte_identical() {
    for name in ["parabola_web", "example3", "cone3", "cusp", "cone2"] {
        let a = leviweb(&["extract", &fx(name), "--seed", "3"]);
        let b = leviweb(&["extract", &fx(name), "--seed", "3"]);
        let c = leviweb(&["--sequential", "extract", &fx(name), "--seed", "3"]);
        assert_eq!(a.stdout, b.stdout, "{name}");
        assert_eq!(a.stdout, c.stdout, "{name}");
    }
    let a = leviweb(&["check", &fx("parabola_web"), "--seed", "4"]);
    let b = leviweb(&["--sequential", "check", &fx("parabola_web"), "--seed", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn explicit_line_overrides_the_file() {
    let o = leviweb(&["extract", &fx("cone2"), "--line", "0,1;1,0", "--method", "sylvester"]);
    assert!(stdout(&o).contains("Phi1: z1*p1 - z2"));
    let o = leviweb(&["extract", &fx("cone2"), "--line", "0,0;1,0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn dicritical_and_segre() {
    let o = leviweb(&["dicritical", &fx("cone2"), "--point", "0,0"]);
    assert_eq!(stdout(&o), "dicritical: true\n");
    let o = leviweb(&["dicritical", &fx("parabola_web"), "--point", "0,0"]);
    assert_eq!(stdout(&o), "dicritical: false\n");
    let o = leviweb(&["segre", &fx("hyperplane"), "--point", "0,0,-1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("segre: z3 - 1\n"), "{}", stdout(&o));
}

#[test]
fn check_classifies_levi_flatness() {
    let o = leviweb(&["check", &fx("sphere")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("levi-flat: false"));
    let o = leviweb(&["check", &fx("example3")]);
    assert!(stdout(&o).contains("reality: ok\nhermitian: true\nsamples: 64\n"));
    assert!(stdout(&o).contains("levi-flat: true"));
}

#[test]
fn first_integral_and_membership() {
    let o = leviweb(&["first-integral", &fx("cone2"), "--point", "2,3"]);
    assert_eq!(stdout(&o), "values: 1\nt1: +1.500000000000e0 +0.000000000000e0\n");
    let o = leviweb(&["membership", &fx("pencil"), "--point", "1,I"]);
    assert!(stdout(&o).starts_with("member: true\n"));
    let o = leviweb(&["membership", &fx("pencil"), "--point", "1,2"]);
    assert!(stdout(&o).starts_with("member: false\n"));
}

#[test]
fn trace_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("leaf.csv");
    let args = [
        "trace",
        &fx("parabola_web"),
        "--start",
        "0,1",
        "--branch",
        "1",
        "--steps",
        "100",
        "--step",
        "0.01",
        "--emit-csv",
        csv.to_str().unwrap(),
    ];
    let o = leviweb(&args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report = stdout(&o);
    assert!(report.contains("in-segre: pass"));
    assert!(report.contains("integral: pass"));
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "step,re_z1,im_z1,re_z2,im_z2,re_p,im_p,resid_rho");
    assert_eq!(lines.len(), 102);
    let last: Vec<f64> = lines[101].split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(last[0], 100.0);
    assert!((last[1] - 1.0).abs() < 1e-12 && (last[3] - 4.0).abs() < 1e-6);

    let again = leviweb(&args);
    assert_eq!(again.stdout, o.stdout);
    assert_eq!(std::fs::read_to_string(&csv).unwrap(), text);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.lv");
    std::fs::write(&bad, "mode = rho\nn = 2\nexpr = z1 + zb1 + I*z2\n").unwrap();
    let bad = bad.to_str().unwrap();
    let o = leviweb(&["extract", bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("reality violated"));
    assert_eq!(leviweb(&["check", bad]).status.code(), Some(1));
    assert_eq!(leviweb(&["extract", "/nonexistent.lv"]).status.code(), Some(1));
    assert_eq!(leviweb(&["membership", &fx("parabola_web"), "--point", "0,1"]).status.code(), Some(1));

    // H(0, t) vanishes identically at the dicritical point
    assert_eq!(leviweb(&["first-integral", &fx("cone2"), "--point", "0,0"]).status.code(), Some(2));
    // a branch point is not a regular start
    let o = leviweb(&["trace", &fx("parabola_web"), "--start", "0.5,0", "--steps", "3"]);
    assert_eq!(o.status.code(), Some(2));

    assert_eq!(leviweb(&["extract"]).status.code(), Some(3));
    assert_eq!(leviweb(&["bogus", &fx("parabola_web")]).status.code(), Some(3));
    assert_eq!(leviweb(&["dicritical", &fx("cone2"), "--point", "0,0,0"]).status.code(), Some(3));
    assert_eq!(leviweb(&["dicritical", &fx("cone2"), "--point", "0,x"]).status.code(), Some(3));
    assert_eq!(leviweb(&["--version"]).status.code(), Some(0));
}
