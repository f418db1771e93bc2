use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

fn ellrank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ellrank"))
        .args(args)
        .env_remove("ELLRANK_THREADS")
        .output()
        .expect("spawn ellrank")
}

fn stdout(args: &[&str]) -> String {
    let out = ellrank(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn value<'a>(kv: &'a str, key: &str) -> &'a str {
    kv.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(" = ")))
        .unwrap_or_else(|| panic!("no `{key}` in\n{kv}"))
}

#[test]
fn construct_reproduces_the_quartic_fixture() {
    let out = stdout(&["mestre", "construct", "--b", "148,116,104,57,25,0"]);
    let fixture = std::fs::read_to_string(fixture("nagao_quartic.txt")).unwrap();
    for line in fixture.lines().filter(|l| l.starts_with('r')) {
        assert!(out.lines().any(|l| l == line), "missing {line}");
    }
    let marked = out.lines().filter(|l| l.starts_with('P') || l.starts_with('M')).count();
    assert_eq!(marked, 24);
}

#[test]
fn search_finds_the_mestre_seed() {
    let out = stdout(&["--format", "kv", "mestre", "search", "--b5=-17,-16,10,11,14"]);
    assert!(out.lines().any(|l| l.starts_with("seed.") && l.ends_with("= -17,-16,10,11,14,17")), "{out}");
}

#[test]
fn conic_param_has_zero_defect() {
    let out = stdout(&["--format", "kv", "conic", "param", "--A", "213040", "--B", "429", "--base", "6,-478", "--compare", "mestre"]);
    assert_eq!(value(&out, "defect"), "0");
    assert_ne!(value(&out, "mobius"), "none");
}

#[test]
fn fibre_table_of_the_rational_surface() {
    let curve = fixture("nagao_minimal_u.curve");
    let out = stdout(&["--format", "kv", "fibres", curve.to_str().unwrap(), "--rank-ns", "10"]);
    assert_eq!(value(&out, "chi"), "1");
    assert_eq!(value(&out, "rational"), "yes");
    assert_eq!(value(&out, "mordell_weil_rank"), "7");
    assert!(out.contains("place = inf; degree = 1; type = I2"), "{out}");
}

#[test]
fn count_is_deterministic_across_thread_counts() {
    let curve = fixture("nagao_minimal_u.curve");
    let c = curve.to_str().unwrap();
    let one = stdout(&["--format", "kv", "--threads", "1", "count", c, "--square", "--p", "53"]);
    assert_eq!(value(&one, "total"), "3593");
    let env = Command::new(env!("CARGO_BIN_EXE_ellrank"))
        .args(["--format", "kv", "--threads", "1", "count", c, "--square", "--p", "53"])
        .env("ELLRANK_THREADS", "2")
        .output()
        .unwrap();
    assert!(env.status.success());
    assert_eq!(String::from_utf8(env.stdout).unwrap(), one);
}

#[test]
fn gram_of_a_quadratic_point() {
    let curve = fixture("nagao_minimal_u.curve");
    let pts = fixture("q_point.txt");
    let out = stdout(&["--format", "kv", "gram", curve.to_str().unwrap(), "--points", pts.to_str().unwrap()]);
    assert_eq!(value(&out, "row.1"), "[3/2]");
    assert_eq!(value(&out, "rank"), "1");
}

#[test]
fn verify_subset_reports_skips() {
    let out = stdout(&["--format", "kv", "verify-paper", "--only", "mestre"]);
    for id in 1..=4 {
        assert_eq!(value(&out, &format!("check.{id:02}.pass")), "yes");
    }
    assert!(out.contains("skipped.05 = "));
    assert!(out.contains("skipped.14 = "));
    assert_eq!(value(&out, "passed"), "4/4");
}

#[test]
fn bad_input_is_an_error() {
    let out = ellrank(&["curve", "minimal", "/nonexistent/curve"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("reading"));

    let dir = std::env::temp_dir().join(format!("ellrank-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("bad.curve");
    std::fs::write(&f, "a1 = 0\na2 = 0\na3 = 0\na4 = [1,2\na6 = 1\n").unwrap();
    let out = ellrank(&["curve", "minimal", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));
    std::fs::remove_dir_all(&dir).ok();
}
