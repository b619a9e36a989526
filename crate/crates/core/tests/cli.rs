use std::process::Command;

fn clp(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_clp")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn lambda_prints_one_fraction() {
    let (code, out, _) = clp(&["lambda", "--family", "gl", "--n", "2", "--q", "2", "--partition", "1,1"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), r#"{"partition":[1,1],"value":"1/6"}"#);
}

#[test]
fn aut_of_empty_partition() {
    let (code, out, _) = clp(&["aut", "--family", "sp", "--q", "3", "--partition", "-"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), r#"{"partition":[],"value":"1/1"}"#);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(clp(&["lambda", "--family", "o-even", "--n", "1", "--q", "3", "--partition", "-"]).0, 2);
    assert_eq!(clp(&["lambda", "--family", "gl", "--n", "1", "--q", "6", "--partition", "-"]).0, 2);
    assert_eq!(clp(&["aut", "--family", "gl", "--q", "2", "--partition", "1,2"]).0, 2);
    assert_eq!(clp(&["distribution", "--family", "o-odd", "--n", "0", "--q", "3"]).0, 2);
    assert_eq!(clp(&["frobnicate"]).0, 2);
}

#[test]
fn grids_print_one_object_per_line() {
    let (code, out, _) = clp(&["tv", "--family", "sp", "--n", "1..2", "--q", "2,3", "--method", "proposition"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 4);
    for l in lines {
        let v: serde_json::Value = serde_json::from_str(l).unwrap();
        assert_eq!(v["method"], "proposition");
        assert!(v["interval"]["lo"].as_str().unwrap().contains('/'));
    }
}

#[test]
fn identities_and_oracle() {
    let (code, out, _) = clp(&["identities", "--tag", "eul-1,sto-sp", "--q", "3", "--degree", "12"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.contains("\"passed\":true")).count(), 2);
    let (code, out, _) = clp(&["oracle", "--family", "u", "--n", "1..2", "--q", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.contains("\"status\":\"equal\"")).count(), 2);
}

#[test]
fn oracle_reports_budget_exclusions() {
    let out = Command::new(env!("CARGO_BIN_EXE_clp"))
        .args(["oracle", "--family", "gl", "--n", "3", "--q", "2"])
        .env("CLP_MAX_CANDIDATES", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("\"status\":\"excluded\""));
}

#[test]
fn sample_is_seeded() {
    let args = ["sample", "--family", "u", "--q", "2", "--count", "200", "--seed", "9"];
    let a = clp(&args);
    assert_eq!(a.0, 0);
    assert_eq!(a, clp(&args));
}
