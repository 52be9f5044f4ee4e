use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cansplit"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn split_a19_quartic() {
    let q = data("a19_quartic.txt");
    let o = run(&["split", &q, "--var", "x", "--var", "y", "--set", "t=1", "--degree", "20"], "");
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "h = z^20\n");
    let o = run(&["split", &q, "--var", "x", "--var", "y", "--set", "t=1", "--degree", "19"], "");
    assert_eq!(stdout(&o), "h = 0\n");
}

#[test]
fn split_zero_is_a_user_error() {
    let o = run(&["split", "--var", "x"], "0\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("multiplicity precondition"), "{}", stderr(&o));
}

#[test]
fn split_emits_all_four_series() {
    let o = run(&["split", "--var", "x", "--degree", "6", "--emit", "all"], "x^2 + x*y^2");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "g = 1/2*y^2\nh = -1/4*y^4\np = 1/2*y^2\nv = 1\nverify_split = true\n");
    let o = run(&["split", "--var", "x", "--var", "y", "--emit", "g"], "x^2 + y^2");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn syntax_errors_exit_two() {
    let o = run(&["split", "--var", "x"], "x^2 + y^+");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("syntax error at byte 8"));
}

#[test]
fn classify_examples() {
    let o = run(&["classify"], "x^2+y^2+z^2+t^2");
    assert!(stdout(&o).starts_with("cA_1\n"));
    let o = run(&["classify"], "x1*x2 + x3^3 + x4^3");
    assert!(stdout(&o).starts_with("cA_2\n"));
    let o = run(&["classify", &data("a19_quartic.txt"), "--set", "t=1"], "");
    assert!(stdout(&o).starts_with("A_19\n"), "{}", stdout(&o));
    assert!(stdout(&o).contains("residual h = z^20"));
    let o = run(&["classify", "--point", "1,-2,0,0"], "(x1-1)*(x2+2) + x3^4 + x4^4");
    assert!(stdout(&o).starts_with("cA_3\n"), "{}", stdout(&o));
    let o = run(&["classify", "--point", "1,2"], "x1*x2 + x3^4 + x4^4");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn family_dims_table() {
    let o = run(&["family", "dims", "--jobs", "3"], "");
    let s = stdout(&o);
    let dims: Vec<&str> = s.lines().map(|l| l.rsplit(' ').next().unwrap()).collect();
    assert_eq!(dims, ["77", "74", "70", "65", "59", "52", "44", "44", "44", "44", "35"]);
}

#[test]
fn family_check_on_tampered_coefficient() {
    let o = run(&["family", "check", "--family", "4", "-"], "b_4 = y^4\n");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("condition 4: FAIL, nonzero y^4"));
    assert!(stdout(&o).ends_with("member of family 4: no\n"));
}

#[test]
fn family_construct_and_check_round_trip() {
    let mut coeffs = String::from("a_2 = y*z\nd_6 = y^6 + z^6\n");
    for n in ["a_0", "b_0", "c_0", "d_0", "a_1", "b_1", "c_1", "d_1", "b_2", "c_2", "d_2", "b_3", "c_3", "d_3", "c_4", "d_4", "d_5"] {
        coeffs.push_str(&format!("{n} = 0\n"));
    }
    let o = run(&["family", "construct", "--family", "5", "-"], &coeffs);
    assert_eq!(o.status.code(), Some(0));
    let f = stdout(&o);
    assert_eq!(f, "f = y^6 + x^2*y^2*z^2 + z^6 + 2*x^3*y*z*t + x^4*t^2 - w^2\n");
    let o = run(&["family", "check", "--family", "5", "-"], &f);
    assert!(stdout(&o).ends_with("member of family 5: yes\n"), "{}", stdout(&o));
    let o = run(&["family", "construct", "--family", "5", "-"], "a_2 = y*z\n");
    let o = run(&["family", "check", "--family", "5", "-"], &stdout(&o));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn generality_verdicts() {
    let o = run(&["family", "generality", &data("ca4_general.fam")], "");
    assert!(stdout(&o).contains("base of the flop: 10 points"));
    assert!(stdout(&o).ends_with("general: yes\n"));
    let o = run(&["family", "generality", "--family", "8", "-"], "a_0 = 1\nA_0 = 1\n");
    assert!(stdout(&o).ends_with("general: no\n"));
}

#[test]
fn toric_link_of_the_weighted_example() {
    let o = run(&["toric-link", &data("weighted_example.link")], "");
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("[x, u*y, u*z, u^2*t, u^3*alpha, u^6*xi] -> ℙ(1, 1, 1, 1, 3, 5)"));
    assert!(s.contains("model [y, z, alpha, u*xi, u*t, x*xi, x*t]"));
    assert!(s.contains("-> ℙ(1, 1, 1, 2, 3, 4)"));
}

#[test]
fn toric_link_of_the_projective_line() {
    let o = run(&["toric-link", &data("p1.link")], "");
    let s = stdout(&o);
    assert_eq!(s.matches("fibration at ray").count(), 2, "{s}");
}

#[test]
fn toric_link_with_ideal_reports_division_order() {
    let o = run(&["toric-link", &data("ca4.link")], "");
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let s = stdout(&o);
    assert!(s.contains("= u^5 * ("), "{s}");
    assert!(s.contains("flop at ray (1, 1)"));
    assert!(s.contains("V(2*alpha*a_2 + C_5, alpha^2 - D_6)"));
    let o = run(&["toric-link", &data("weighted_example.link"), "-"], "ideal: x*xi - alpha^2\n");
    assert!(stdout(&o).contains("step 2: exceptional locus over"), "{}", stdout(&o));
}

#[test]
fn toric_link_bound_is_a_resource_guard() {
    let o = run(&["toric-link", &data("weighted_example.link"), "--bound", "1"], "");
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("resource guard"));
}

#[test]
fn catalog_replays() {
    let o = run(&["toric-link", "--catalog", "all", "--jobs", "4"], "");
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("FAIL"));
    let o = run(&["toric-link", "--catalog", "7.1"], "");
    assert!(stdout(&o).starts_with("cA7-1\n"));
    let o = run(&["toric-link", "--catalog", "cA9"], "");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_reports_are_deterministic() {
    let a = run(&["--format", "json", "toric-link", "--catalog", "all", "--jobs", "1"], "");
    let b = run(&["--format", "json", "toric-link", "--catalog", "all", "--jobs", "4"], "");
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["command"], "toric-link");
    assert!(v["inputs"]["digest"].as_str().unwrap().starts_with("sha256:"));
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert!(v.get("timing_ms").is_none());
    let c = run(&["--format", "json", "split", "--var", "x", "--emit", "all"], "x^2 + x*y^2");
    let d = run(&["--format", "json", "split", "--var", "x", "--emit", "all"], "x^2 + x*y^2");
    assert_eq!(c.stdout, d.stdout);
    let v: serde_json::Value = serde_json::from_slice(&c.stdout).unwrap();
    assert_eq!(v["results"]["h"], "-1/4*y^4");
    assert_eq!(v["results"]["verify_split"], true);
}
