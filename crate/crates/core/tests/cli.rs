use std::process::{Command, Output};

fn motzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_motzeta"))
        .args(args)
        .env_remove("MOTZETA_CACHE_DIR")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn ring_canonicalizes() {
    let o = motzeta(&["ring", "(L^2-1)/(L-1)", "L^(1/2)*L^(-3/2)"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let lines: Vec<&str> = s.lines().collect();
    assert!(lines[0].starts_with("L+1 "), "{s}");
    assert!(lines[0].contains("chi = 2"));
    assert!(lines[1].contains("chi = 1"));
}

#[test]
fn exit_codes() {
    assert_eq!(motzeta(&["poincare", "--curve", "nosuch"]).status.code(), Some(1));
    assert_eq!(motzeta(&["poincare"]).status.code(), Some(1));
    assert_eq!(motzeta(&["bogus"]).status.code(), Some(1));
    assert_eq!(motzeta(&["ring", "L^("]).status.code(), Some(1));
    let scope = motzeta(&["hfl-check", "--curve", "node"]);
    assert_eq!(scope.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&scope.stderr).contains("out of scope"));
}

#[test]
fn exp_identity_passes_for_the_node() {
    let o = motzeta(&["exp-identity", "--curve", "node", "--trunc", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "PASS: 6 coefficients equal\n");
}

#[test]
fn contact_count_and_class() {
    // xy: pairs with ord x + ord y = 2 modulo t^3
    let o = motzeta(&["contact", "count", "--f", "x*y", "--n", "2", "--p", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), (5u64.pow(3) - 5u64.pow(2)).to_string());

    let o = motzeta(&["contact", "class", "--f", "y^2-x^3", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("oracle"), "{}", stdout(&o));
}

#[test]
fn json_output_is_valid() {
    for args in [
        &["poincare", "--curve", "cusp", "--trunc", "5", "--format", "json"][..],
        &["alexander", "--curve", "cusp25", "--format", "json"],
        &["hfl-check", "--curve", "cusp", "--format", "json"],
        &["qseries", "--smooth", "--n", "2", "--sorder", "3", "--format", "json"],
    ] {
        let o = motzeta(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert!(!v.is_null());
    }
}

#[test]
fn qseries_node_endpoints() {
    let o = motzeta(&["qseries", "--curve", "node", "--trunc", "3", "--check-endpoints"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn curve_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cusp.json");
    let json = motzeta::curve::builtin("cusp").unwrap().to_json();
    std::fs::write(&path, json.to_string()).unwrap();
    let from_file = motzeta(&["poincare", "--curve-file", path.to_str().unwrap(), "--trunc", "6"]);
    let builtin = motzeta(&["poincare", "--curve", "cusp", "--trunc", "6"]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(stdout(&from_file), stdout(&builtin));
}

#[test]
fn cache_is_reused() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["igusa", "--f", "x*y", "--trunc", "3", "--cache", cache];
    let first = motzeta(&args);
    let second = motzeta(&args);
    assert_eq!(first.status.code(), Some(0));
    assert!(stdout(&first).contains("oracle"));
    let file = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let stored: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(stored["x*y|2|2"]["num"], serde_json::json!([0, 0, 0, 0, -1, 0, 1]));
    assert_eq!(stdout(&first), stdout(&second));
}
