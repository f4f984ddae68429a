use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "zerodim", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zerodim")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn check(args: &[&str], code: i32) -> String {
    let o = run(args);
    assert_eq!(o.status.code(), Some(code), "{args:?}\n{}{}", stdout(&o), String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

#[test]
fn header_names_the_command() {
    let out = check(&["frobenius", "2", "3"], 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some(concat!("# zerodim ", env!("CARGO_PKG_VERSION"), " frobenius")));
    assert_eq!(lines.next(), Some("1"));
}

#[test]
fn semigroup_commands() {
    assert!(check(&["frobenius", "6", "9", "20"], 0).ends_with("43\n"));
    assert!(check(&["decompose", "11", "3"], 0).ends_with("1 2\n"));
    check(&["decompose", "5", "3"], 2);
    check(&["frobenius", "0"], 2);
}

#[test]
fn bad_input_exits_with_two() {
    check(&["validate", "/nonexistent.bd"], 2);
    check(&["language", &fixture("odometer.bd"), "--n", "3"], 2);
    check(&["symbol", &fixture("odometer.bd"), "--vertex", "nope"], 2);
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn parse_errors_carry_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.bd");
    std::fs::write(&bad, "LEVEL 0 v0\nLEVEL 1 a\nEDGE 1 a zz 0\n").unwrap();
    let o = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn language_and_entropy() {
    let out = check(&["language", &fixture("golden.sub"), "--n", "4"], 0);
    assert_eq!(out.lines().skip(1).count(), 8);
    assert!(check(&["language", &fixture("golden.sub"), "--n", "20", "--count"], 0).ends_with("17711\n"));
    let out = check(&["entropy", &fixture("golden.sub"), "--n", "16"], 0);
    let h: f64 = out.lines().last().unwrap().parse().unwrap();
    assert!((h - 0.7085).abs() < 1e-3);
}

#[test]
fn word_cap_is_enforced() {
    let o = Command::new(env!("CARGO_BIN_EXE_zerodim"))
        .args(["language", &fixture("full2.sub"), "--n", "10"])
        .env("ZERODIM_MAX_WORDS", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn decisive_verdicts() {
    let e3 = check(&["decisive", &fixture("example3.bd"), "--depth", "6", "--stationary"], 1);
    assert!(e3.contains("non-decisive") && e3.contains("1 maximal, 2 minimal"));
    let e1 = check(&["decisive", &fixture("example1.bd"), "--depth", "6", "--stationary"], 0);
    assert!(e1.contains("decisive-evidence"));
    let skew = check(&["decisive", &fixture("skew.bd"), "--depth", "6", "--stationary"], 1);
    assert!(skew.contains("continuity"));
}

#[test]
fn orbit_through_the_stationary_tail() {
    let out = check(
        &["orbit", &fixture("odometer.bd"), "--vertex", "v1", "--labels", "0", "--steps", "3", "--stationary"],
        0,
    );
    let lines: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(lines, ["v1 [0]", "v1 [1]", "v2 [0, 1]", "v2 [1, 1]"]);
    let out = check(&["orbit", &fixture("odometer.bd"), "--vertex", "v1", "--labels", "1", "--steps", "3"], 0);
    assert!(out.ends_with("maximal\n"));
}

#[test]
fn successor_of_maximal_path_is_negative() {
    check(&["successor", &fixture("odometer.bd"), "--vertex", "v1", "--labels", "0"], 0);
    check(&["successor", &fixture("odometer.bd"), "--vertex", "v1", "--labels", "1"], 1);
    check(&["successor", &fixture("odometer.bd"), "--vertex", "v1", "--labels", "0", "--predecessor"], 1);
}

#[test]
fn telescope_output_parses_back() {
    let out = check(&["telescope", &fixture("example1.bd"), "--keep", "0,2,4"], 0);
    let body: String = out.lines().skip(1).map(|l| format!("{l}\n")).collect();
    let d = zerodim_reparse(&body);
    assert_eq!(d, 2);
}

fn zerodim_reparse(text: &str) -> usize {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("t.bd");
    std::fs::write(&p, text).unwrap();
    let out = check(&["validate", p.to_str().unwrap()], 0);
    out.lines().nth(1).unwrap().split_whitespace().nth(1).unwrap().trim_end_matches(',').parse().unwrap()
}

#[test]
fn markers_report_uncovered_words() {
    let out = check(&["markers", &fixture("full2.sub"), "--n", "2"], 1);
    assert!(out.contains("separated: true"));
    assert!(out.contains("uncovered words: 288"));
}

#[test]
fn compress_and_decode_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let rows = dir.path().join("rows");
    std::fs::write(&rows, "01001000\n").unwrap();
    let golden = fixture("golden.sub");
    let out = check(&["compress", &golden, "--block", "4", "--ell", "3", "--rows", rows.to_str().unwrap()], 0);
    let coded = out.lines().last().unwrap().to_string();
    assert_eq!(coded.len(), 8);
    let file = dir.path().join("coded");
    std::fs::write(&file, format!("{coded}\n")).unwrap();
    let back = check(&["decode", &golden, file.to_str().unwrap(), "--block", "4", "--ell", "3"], 0);
    assert_eq!(back.lines().last(), Some("0100|1000|"));
    check(&["compress", &golden, "--block", "8"], 2);
}

#[test]
fn countable_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let arr = dir.path().join("w.arr");
    std::fs::write(&arr, "ROWS 2 0 7\n| a b | b a | a a | b b |\n| x x x x | y y y y |\n").unwrap();
    let out = check(&["encode-countable", arr.to_str().unwrap(), "--profile", "2,4"], 0);
    assert!(out.contains("roundtrip ok"));
    assert_eq!(out.lines().nth(1).unwrap().split(' ').filter(|t| *t == "*").count(), 2);
    check(&["encode-countable", arr.to_str().unwrap(), "--profile", "2:3,4"], 2);
    check(&["validate", arr.to_str().unwrap(), "--profile", "2,4"], 0);
    check(&["validate", arr.to_str().unwrap(), "--profile", "3,4"], 1);
}

#[test]
fn symbol_and_dot() {
    let out = check(&["symbol", &fixture("example1.bd"), "--vertex", "w2"], 0);
    assert!(out.contains("ROWS"));
    let dot = check(&["dot", &fixture("example1.bd"), "--depth", "4"], 0);
    assert!(dot.contains("digraph") && dot.contains("\"4:w4\""));
    check(&["dot", &fixture("figure_u1.bd"), "--depth", "40"], 2);
}

#[test]
fn trapezoid_lists_descriptions() {
    let out = check(&["trapezoid", &fixture("golden.sub"), "--block", "2", "--depth", "2"], 0);
    assert!(out.contains("# t2.0 = r1.0 [r2.0] r1.0"));
    assert!(out.contains("LEVEL 2"));
}
