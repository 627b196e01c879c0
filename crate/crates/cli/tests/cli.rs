use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name).display().to_string()
}

fn dcf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dcf")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// The payload: everything after the first blank line.
fn payload(o: &Output) -> String {
    let s = stdout(o);
    s.split_once("\n\n").map(|(_, p)| p.to_string()).unwrap_or_default()
}

fn header(o: &Output, key: &str) -> Option<String> {
    stdout(o).lines().take_while(|l| !l.is_empty()).find_map(|l| l.strip_prefix(&format!("{}: ", key)).map(str::to_string))
}

#[test]
fn member_exit_codes() {
    let o = dcf(&["member", &fixture("e1.pair"), "--f", "x1'' - 2*x1^3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(payload(&o), "zero\n");
    let o = dcf(&["member", &fixture("e1.pair"), "--f", "-x1' + x1"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(payload(&o), "nonzero\n");
}

#[test]
fn check_pair_reports_conditions() {
    let o = dcf(&["check-pair", &fixture("e5.pair")]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(header(&o, "condition").as_deref(), Some("(ii)"));
    let o = dcf(&["check-pair", &fixture("e4.pair")]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(header(&o, "condition").as_deref(), Some("(iii)"));
    let o = dcf(&["check-pair", &fixture("e3.pair")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(header(&o, "m").as_deref(), Some("1"));
    assert_eq!(header(&o, "seed").as_deref(), Some("0"));
}

#[test]
fn decide_and_series() {
    let o = dcf(&["decide", &fixture("e7.pair"), "--phi", "2*x1*x1' = 1 & x1 != 0"]);
    assert_eq!((o.status.code(), payload(&o)), (Some(0), "true\n".to_string()));
    let o = dcf(&["decide", &fixture("e7.pair"), "--phi", "x1' = 0"]);
    assert_eq!((o.status.code(), payload(&o)), (Some(3), "false\n".to_string()));
    let o = dcf(&["--seed", "9", "series-check", &fixture("e1.pair"), "--f", "x1'' - 2*x1^3", "--order", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(header(&o, "seed").as_deref(), Some("9"));
    assert_eq!(payload(&o), "zero to order 10\n");
    let o = dcf(&["series-check", &fixture("e1.pair"), "--f", "x1' - x1"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(payload(&o), "nonzero at order 1: 1\n");
}

#[test]
fn stabilize_output_is_a_valid_manifest() {
    let o = dcf(&["stabilize", &fixture("linear.sys")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(header(&o, "r").as_deref(), Some("2"));
    assert_eq!(header(&o, "d").as_deref(), Some("1 1 0 0"));
    let dir = tempdir("stab");
    let path = dir.join("linear.pair");
    std::fs::write(&path, payload(&o)).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(dcf(&["check-pair", p]).status.code(), Some(0));
    // Queries are read in stacked coordinates: x1''' = x1' holds on the type.
    assert_eq!(dcf(&["member", p, "--f", "x1''' - x1'"]).status.code(), Some(0));
    assert_eq!(dcf(&["member", p, "--f", "x1'' - x1"]).status.code(), Some(3));
    std::fs::remove_dir_all(dir).unwrap();
}

fn tempdir(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("dcf-cli-{}-{}", tag, std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn enumerate_writes_manifests_and_resumes() {
    let o = dcf(&["enumerate", "--n", "1", "--count", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(payload(&o), "");
    let dir = tempdir("enum");
    let (a, b) = (dir.join("a"), dir.join("b"));
    let args = ["enumerate", "--n", "1", "--r-max", "2", "--max-degree", "1", "--max-height", "1"];
    let whole = dcf(&[&args[..], &["--count", "12", "--emit-dir", a.to_str().unwrap()]].concat());
    assert_eq!(whole.status.code(), Some(0));
    dcf(&[&args[..], &["--count", "5", "--emit-dir", b.to_str().unwrap()]].concat());
    let rest = dcf(&[&args[..], &["--count", "7", "--emit-dir", b.to_str().unwrap(), "--resume"]].concat());
    assert_eq!(header(&rest, "emitted").as_deref(), Some("7"));
    let la = std::fs::read_to_string(a.join("ledger.tsv")).unwrap();
    assert_eq!(la, std::fs::read_to_string(b.join("ledger.tsv")).unwrap());
    assert_eq!(payload(&whole), la);
    for k in 0..12 {
        let name = format!("pair_{:06}.pair", k);
        let m = std::fs::read_to_string(a.join(&name)).unwrap();
        assert_eq!(m, std::fs::read_to_string(b.join(&name)).unwrap());
        assert_eq!(dcf(&["check-pair", a.join(&name).to_str().unwrap()]).status.code(), Some(0));
    }
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn gb_orders() {
    let f = fixture("circle_hyperbola.ideal");
    let o = dcf(&["gb", &f, "--order", "lex"]);
    assert_eq!(payload(&o), "x2 + x1^3 - x1\nx1^4 - x1^2 + 1\n");
    assert_eq!(dcf(&["gb", &f, "--order", "block:1"]).status.code(), Some(0));
    assert_eq!(dcf(&["gb", &f, "--order", "weird"]).status.code(), Some(2));
    let o = dcf(&["prolong", &fixture("e1.pair")]);
    assert_eq!((o.status.code(), payload(&o)), (Some(0), "".to_string()));
}

#[test]
fn usage_and_parse_errors_exit_2() {
    assert_eq!(dcf(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(dcf(&["member", &fixture("e1.pair")]).status.code(), Some(2));
    assert_eq!(dcf(&["check-pair", "/nonexistent/file.pair"]).status.code(), Some(2));
    let o = dcf(&["member", &fixture("e1.pair"), "--f", "x1 + * 2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("column 6"));
    let o = dcf(&["check-pair", &fixture("linear.sys")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("linear.sys:"));
}

#[test]
fn timeout_is_a_resource_error() {
    // A zero budget stops the first Gröbner computation.
    let o = dcf(&["--timeout", "0", "gb", &fixture("cyclic5.ideal")]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("resource limit"));
    assert_eq!(o.status.code(), Some(1));
}
