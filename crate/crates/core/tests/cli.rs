use std::process::Command;

use drinfeld::cli::{run, CliError};
use serde_json::Value;

fn ok(args: &[&str]) -> String {
    let mut full = vec!["drinfeld"];
    full.extend_from_slice(args);
    run(full).unwrap_or_else(|e| panic!("{args:?}: {e:?}"))
}

fn json(args: &[&str]) -> Value {
    let mut a = vec!["--json"];
    a.extend_from_slice(args);
    serde_json::from_str(&ok(&a)).unwrap()
}

fn bin(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_drinfeld")).args(args).output().unwrap()
}

#[test]
fn count_irreducibles() {
    assert_eq!(ok(&["count-irreducibles", "--q", "2", "--n", "4"]).trim(), "3");
    assert_eq!(json(&["count-irreducibles", "--q", "3", "--n", "2"])["count"], "3");
}

#[test]
fn heights_and_torsion() {
    assert_eq!(json(&["height", "--q", "2", "--point", "X + T"])["height"], "1");
    let i = json(&["canonical-height", "--point", "T*X + 1", "--depth", "2"]);
    assert_eq!(i["lower"], "1/4");
    assert_eq!(i["upper"], "9/4");
    let t = json(&["torsion", "--point", "X + 1", "--search", "2"]);
    assert_eq!(t["status"], "torsion");
    assert_eq!(t["witness"], "T^2 + T");
    let t = json(&["torsion", "--point", "T*X + 1", "--search", "2", "--depth", "2"]);
    assert_ne!(t["status"], "torsion");
}

#[test]
fn scan_formats_agree() {
    let rows = json(&["ss-scan", "--n-max", "4"]);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r["count_ss"] == r["count_total"]));

    let jsonl = ok(&["--format", "jsonl", "ss-scan", "--n-max", "4"]);
    let parsed: Vec<Value> = jsonl.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(&parsed, rows);

    let csv = ok(&["--format", "csv", "ss-scan", "--n-max", "4"]);
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let n_col = header.iter().position(|h| *h == "N").unwrap();
    let ns: Vec<&str> = lines.map(|l| l.split(',').nth(n_col).unwrap()).collect();
    assert_eq!(ns, ["1", "2", "3", "4"]);
}

#[test]
fn reruns_are_byte_identical() {
    let args = ["--json", "rv-report", "--n-max", "5", "--workers", "3"];
    assert_eq!(ok(&args), ok(&args));
    let args = ["--json", "siegel", "--random", "--count", "5", "--equations", "2", "--unknowns", "5", "--max-deg", "2", "--seed", "7"];
    assert_eq!(ok(&args), ok(&args));
}

#[test]
fn module_and_point_files() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("phi.toml");
    std::fs::write(&m, "q = 2\ncoeffs = [\"T\", \"1\", \"1\"]\n").unwrap();
    let p = dir.path().join("x.toml");
    std::fs::write(&p, "minpoly = \"X^2 + X + T\"\n").unwrap();
    let (m, p) = (m.to_str().unwrap(), p.to_str().unwrap());
    let from_file = json(&["canonical-height", "--module", m, "--point", p, "--depth", "2"]);
    let inline = json(&["canonical-height", "--module", m, "--point", "X^2 + X + T", "--depth", "2"]);
    assert_eq!(from_file, inline);
    assert_eq!(json(&["height", "--module", m])["module"], "Φ(T) = T + τ + τ^2 over F_2");
}

#[test]
fn out_file_infers_format() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("scan.csv");
    assert_eq!(ok(&["ss-scan", "--n-max", "2", "--out", out.to_str().unwrap()]), "");
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("N,"));
    let out = dir.path().join("b.json");
    ok(&["bounds", "--D", "65536", "--out", out.to_str().unwrap()]);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["lower_bound"]["log_q"]["hi"], "-5647");
}

#[test]
fn siegel_system_file() {
    let dir = tempfile::tempdir().unwrap();
    let s = dir.path().join("sys.toml");
    std::fs::write(&s, "rows = [[\"1\", \"T\"]]\n").unwrap();
    let v = json(&["siegel", "--system", s.to_str().unwrap()]);
    assert_eq!(v, json(&["siegel", "--row", "1;T"]));
    assert_eq!(v["x"], serde_json::json!(["T", "1"]));
    assert_eq!(v["delta"], 1);
}

#[test]
fn aux_poly_and_bounds() {
    let a = json(&["aux-poly", "--point", "T*X + 1", "--L", "2", "--t", "1", "--vanish-at", "T + 1"]);
    assert_eq!(a["G"], "1 + T*X");
    assert_eq!(a["vanishing"]["satisfied"], true);
    assert_eq!(a["vanishing"]["valuation"], 2);
    let b = json(&["bounds", "--D", "65536"]);
    assert_eq!(b["constants"]["big_c0"]["log_q"]["lo"], "-5625");
    assert_eq!(b["parameters"]["L"], "44302336000001");
    assert_eq!(json(&["enumerate-points", "--D", "1", "--chi", "1"])["count"], 8);
}

#[test]
fn error_kinds() {
    match run(["drinfeld", "height", "--bogus"]) {
        Err(e @ CliError::Usage(_)) => assert_eq!(e.exit_code(), 2),
        r => panic!("{r:?}"),
    }
    match run(["drinfeld", "height", "--q", "2", "--point", "T*X + T"]) {
        Err(e @ CliError::Run(_)) => assert_eq!(e.exit_code(), 2),
        r => panic!("{r:?}"),
    }
    match run(["drinfeld", "bounds", "--D", "65536", "--theorem", "2"]) {
        Err(e @ CliError::Run(_)) => assert_eq!(e.exit_code(), 2),
        r => panic!("{r:?}"),
    }
}

#[test]
fn binary_exit_codes() {
    let o = bin(&["count-irreducibles", "--q", "2", "--n", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "6");

    let o = bin(&["height", "--q", "2", "--point", "T*X + T"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));

    let o = bin(&["--sylvester-limit", "1", "canonical-height", "--point", "X^2 + X + T"]);
    assert_eq!(o.status.code(), Some(3));

    let o = bin(&["no-such-command"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn contract_errors_exit_one() {
    assert_eq!(drinfeld::Error::Contract("x".into()).exit_code(), 1);
}
