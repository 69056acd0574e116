use std::io::Write;
use std::process::{Command, Output};

fn z2q(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_z2q")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn normalize_examples() {
    for (algebra, expr, want) in [
        ("dqsp", "xi*x", "q^-1*x*xi"),
        ("dqsp", "z*xi", "-q*xi*z"),
        ("dqsp", "xi^2", "0"),
        ("dqsp", "x*xi - q*xi*x", "0"),
        ("dqsp-ext", "S(xi)", "-q*x^-2*xi"),
        ("dqsp-ext", "S(S(xi))", "xi"),
        ("dqsp", "eps(x^3 + xi)", "1"),
        ("dqsp-omega", "d(x*xi)", "q*xi*dx + x*dxi"),
        ("dqsp-omega", "d(d(x*z))", "0"),
        ("dqsp", "Delta(x)", "x (x) x"),
        ("dqsp", "3/2*q^-1", "3/2*q^-1"),
    ] {
        let o = z2q(&["normalize", "--algebra", algebra, expr]);
        assert_eq!(o.status.code(), Some(0), "{expr}: {}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(stdout(&o).trim_end(), want, "{expr}");
    }
}

#[test]
fn degree_command() {
    let o = z2q(&["degree", "--algebra", "dqsp", "z*xi"]);
    assert_eq!(stdout(&o), "(1,0)\n");
    let o = z2q(&["degree", "--algebra", "dqsp", "x + z"]);
    assert_eq!(stdout(&o), "inhomogeneous\n");
}

#[test]
fn usage_errors() {
    for args in [
        vec!["normalize", "--algebra", "dqsp", "S(x)"],
        vec!["normalize", "--algebra", "dqsp", "x xi"],
        vec!["normalize", "--algebra", "dqsp", "y"],
        vec!["normalize", "--algebra", "dqsp", "(x"],
        vec!["verify", "--suite", "bogus"],
        vec!["presentations", "show", "missing"],
    ] {
        let o = z2q(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn verify_is_deterministic() {
    let a = z2q(&["verify", "--suite", "engine", "--bound", "3"]);
    let b = z2q(&["verify", "--suite", "engine", "--bound", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).ends_with("0 failed\n"));
}

#[test]
fn verify_all_json() {
    let o = z2q(&["verify", "--suite", "all", "--bound", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["suite"], "all");
    assert_eq!(v["bound"], 4);
    assert_eq!(v["failed"], 0);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(v["passed"].as_u64().unwrap() as usize, checks.len());
    assert!(checks.iter().all(|c| c["status"] == "pass" && c["lhs"].is_null()));
    let again = z2q(&["verify", "--suite", "all", "--bound", "4", "--format", "json"]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn presentations_round_trip_through_a_file() {
    let o = z2q(&["presentations", "show", "dqsp"]);
    assert_eq!(o.status.code(), Some(0));
    let dir = std::env::temp_dir().join(format!("z2q-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("copy.json");
    std::fs::File::create(&path).unwrap().write_all(&o.stdout).unwrap();
    let loaded = z2q(&["presentations", "load", path.to_str().unwrap()]);
    assert_eq!(loaded.status.code(), Some(0));
    assert!(stdout(&loaded).starts_with("dqsp: 4 generators"));

    let search = Command::new(env!("CARGO_BIN_EXE_z2q"))
        .args(["normalize", "--algebra", "copy", "xi*x"])
        .env("Z2Q_PRESENTATION_PATH", &dir)
        .output()
        .unwrap();
    assert_eq!(stdout(&search), "q^-1*x*xi\n");

    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(z2q(&["presentations", "load", path.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn non_confluent_file_is_rejected() {
    let spec = r#"{
        "name": "broken",
        "generators": [
            {"symbol": "a", "degree": "(0,0)"},
            {"symbol": "b", "degree": "(0,0)"}
        ],
        "rules": [
            {"hi": "b", "lo": "a", "coeff": "q"},
            {"hi": "b", "lo": "a", "coeff": "q^2"}
        ]
    }"#;
    let path = std::env::temp_dir().join(format!("z2q-broken-{}.json", std::process::id()));
    std::fs::write(&path, spec).unwrap();
    let o = z2q(&["presentations", "load", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not confluent"));
}
