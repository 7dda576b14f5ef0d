use std::path::PathBuf;
use std::process::{Command, Output};

fn matsec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matsec"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

#[test]
fn simulate_is_reproducible() {
    let args = [
        "simulate", "--matroid", "zoo:k5", "--alg", "alg2", "--weights", "geometric:1/2", "--trials",
        "3000", "--seed", "5",
    ];
    let (a, b) = (matsec(&args), matsec(&args));
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("matroid,algorithm,weights,mode"));
}

#[test]
fn exact_from_a_file_as_json() {
    let out = matsec(&[
        "exact", "--matroid", &fixture("u2_4.mat"), "--alg", "alg1", "--weights", "one-heavy", "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["mode"], "exact");
    assert_eq!(v["bound"]["passed"], true);
}

#[test]
fn structural_subcommands() {
    for args in [
        vec!["principal", "--matroid", "zoo:triangle-pendant"],
        vec!["cover", "--matroid", "zoo:k4", "--k", "2"],
        vec!["cover", "--matroid", "zoo:prism", "--cobases"],
        vec!["decompose", "--matroid", "zoo:triangle-pendant"],
        vec!["verify", "rank-formula", "--matroid", "zoo:k4"],
    ] {
        let out = matsec(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        serde_json::from_slice::<serde_json::Value>(&out.stdout).expect("json report");
    }
}

#[test]
fn failed_checks_exit_one() {
    // A triangle cannot be covered by one independent set.
    let out = matsec(&["cover", "--matroid", "zoo:triangle", "--k", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec![],
        vec!["simulate", "--matroid", "zoo:nope", "--alg", "alg1"],
        vec!["simulate", "--matroid", "zoo:k4", "--alg", "nope"],
        vec!["simulate", "--matroid", "zoo:k4", "--alg", "alg1", "--weights", "zipf"],
        vec!["exact", "--matroid", "zoo:k6", "--alg", "alg1"],
        vec!["principal", "--matroid", "zoo:k4", "--format", "csv"],
        vec!["verify", "no-such-suite"],
        vec!["simulate", "--matroid", "zoo:k4", "--alg", "alg1", "--alg-param", "x=1"],
    ] {
        let out = matsec(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn writes_to_out_file() {
    let path = std::env::temp_dir().join(format!("matsec-cli-{}.csv", std::process::id()));
    let out = matsec(&[
        "simulate", "--matroid", "zoo:u2-4", "--alg", "classical", "--trials", "100", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(written.lines().count(), 2);
}
