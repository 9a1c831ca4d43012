use std::path::PathBuf;
use std::process::{Command, Output};

fn sylow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sylow")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn order_and_sylow() {
    let o = sylow(&["order", "Up(3,2)"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "8");
    let o = sylow(&["--json", "sylow", "3", "GL(2,4)"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["order"], 9);
    assert_eq!(v["sylow"]["ambient_order"], 180);
}

#[test]
fn parse_errors_exit_two() {
    let o = sylow(&["order", "PSp(3,3)"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("at byte 0"), "{err}");
    assert_eq!(sylow(&["order"]).status.code(), Some(2));
}

#[test]
fn iso_exit_codes() {
    assert_eq!(sylow(&["iso", "Up(3,2)", "D(8)"]).status.code(), Some(0));
    let o = sylow(&["iso", "Q(8)", "D(8)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("order histogram"));
}

#[test]
fn budget_exits_three() {
    let o = sylow(&["--max-elements", "100", "order", "GL(3,3)"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_reports() {
    let o = sylow(&["--json", "verify", "--family", "PSp", "--prime", "3", "--dim", "4", "--q", "3"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "PASS");
    assert_eq!(v["expected_order"], 81);
    assert_eq!(v["entry"], "PSp-p");
    for key in ["case", "family", "params", "prime", "actual_order", "witness", "fingerprints"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert!(v.get("ms").is_none());

    let o = sylow(&["verify", "--family", "O", "--prime", "2", "--dim", "2", "--q", "3", "--eps", "-"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = sylow(&["verify", "--family", "PSL", "--prime", "2", "--dim", "2", "--q", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = sylow(&["verify", "--family", "PSL", "--prime", "2", "--dim", "2", "--q", "3", "--allow-l2-psl"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL-ORDER"));
}

#[test]
fn list_catalog_json() {
    let o = sylow(&["--json", "list-catalog"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), sylow_core::catalog::CATALOG.len());
    assert!(rows.iter().all(|r| r["id"].is_string() && r["locator"].is_string()));
}

#[test]
fn suite_files_are_reproducible() {
    let cases = tmp("cases.json");
    std::fs::write(
        &cases,
        r#"[{"family":"PSL","dim":3,"q":2,"prime":2,"entry":"PSL-p"},
            {"family":"GL","dim":2,"q":3,"prime":2,"entry":"GL-l"},
            {"family":"PSL","dim":2,"q":3,"prime":2,"entry":"PSL-l","quarantined":true,"allow_l2_psl":true}]"#,
    )
    .unwrap();
    let (a, b) = (tmp("a.json"), tmp("b.json"));
    let run = |out: &PathBuf| {
        sylow(&["verify-suite", "--jobs", "1", "--cases", cases.to_str().unwrap(), "--out", out.to_str().unwrap()])
    };
    let o = run(&a);
    // GL(2,3) at l = 2 fails and is not quarantined
    assert_eq!(o.status.code(), Some(1));
    run(&b);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&a).unwrap()).unwrap();
    assert_eq!(v["summary"]["quarantined"], 1);
    assert_eq!(v["summary"]["failures"], 1);

    let empty = tmp("empty.json");
    std::fs::write(&empty, "[]").unwrap();
    let o = sylow(&["verify-suite", "--cases", empty.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn timings_are_opt_in() {
    let cases = tmp("one.json");
    std::fs::write(&cases, r#"[{"family":"PSL","dim":2,"q":3,"prime":3,"entry":"PSL-p"}]"#).unwrap();
    let o = sylow(&["--json", "verify-suite", "--timings", "--cases", cases.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["cases"][0]["ms"].is_u64());
}
