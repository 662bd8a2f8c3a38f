use std::path::Path;
use std::process::{Command, Output};

fn perdom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_perdom")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    perdom(args).status.code().expect("exit code")
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["table", "--g", "2,1,-3", "--q", "2", "--family", "ss"]), 0);
    assert_eq!(code(&["table", "--g", "1,1"]), 2);
    assert_eq!(code(&["table", "--g", "2,1,-3", "--family", "ge:0"]), 2);
    assert_eq!(code(&["table", "--g", "2,1,-3", "--family", "lt:1"]), 2);
    assert_eq!(code(&["table"]), 2);
    assert_eq!(code(&["zeta", "--g", "1,-1", "--q", "4"]), 2);
    assert_eq!(code(&["zeta", "--g", "1,-1", "--n", "0"]), 2);
    assert_eq!(code(&["zeta", "--g", "2,1,-3", "--budget", "10"]), 4);
    assert_eq!(code(&["kcomplex", "--d", "3", "--i0", "1,2"]), 2);
    assert_eq!(code(&["kcomplex", "--d", "3", "--corrupt-signs"]), 1);
    assert_eq!(code(&["verify-all", "--family", "ge:0"]), 2);
    assert_eq!(code(&["verify-all", "--corrupt-signs"]), 3);
    assert_eq!(code(&["no-such-command"]), 2);
}

#[test]
fn budget_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_perdom"))
        .args(["zeta", "--g", "2,1,-3", "--n", "1"])
        .env("PERDOM_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
    assert!(out.stdout.is_empty());
}

#[test]
fn zeta_reports_equal_counts() {
    let out = perdom(&["zeta", "--g", "2,1,-3", "--q", "2", "--n", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("| 3 | 657 | 657 | 441 | 441 | 216 | 216 | yes |"), "{text}");
}

#[test]
fn json_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["table", "--g", "5/2,5/2,1,-1,-5/2,-5/2", "--q", "3"][..],
        &["zeta", "--g", "1,1,-2", "--n", "2"][..],
        &["kcomplex", "--d", "3", "--q", "3"][..],
        &["verify-all"][..],
    ] {
        let a = dir.path().join("a.json");
        let b = dir.path().join("b.json");
        let run = |p: &Path, jobs: &str| {
            let mut full: Vec<&str> = args.to_vec();
            full.extend(["--jobs", jobs, "--json", p.to_str().unwrap()]);
            assert!(perdom(&full).status.success(), "{full:?}");
        };
        run(&a, "1");
        run(&b, "4");
        assert_eq!(read(&a), read(&b), "{args:?}");
    }
}

#[test]
fn config_file_with_rational_slopes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("g.json");
    std::fs::write(&cfg, r#"{"g": [[1,2,2],[-1,1,1]], "q": 2, "family": {"threshold": [1,2], "strict": false}, "n": [1, 2]}"#).unwrap();
    let json = dir.path().join("out.json");
    let out = perdom(&["zeta", "--config", cfg.to_str().unwrap(), "--json", json.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&read(&json)).unwrap();
    assert_eq!(v["g"], serde_json::json!([[1, 2, 2], [-1, 1, 1]]));
    assert_eq!(v["family"]["name"], "ge:1/2");
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);

    std::fs::write(&cfg, r#"{"g": [[1,1,1]], "colour": "red"}"#).unwrap();
    assert_eq!(code(&["table", "--config", cfg.to_str().unwrap()]), 2);
    assert_eq!(code(&["table", "--config", dir.path().join("missing.json").to_str().unwrap()]), 2);
}

#[test]
fn markdown_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let md = dir.path().join("t.md");
    let out = perdom(&["table", "--drinfeld", "4", "--q", "2", "--variant", "open", "--md", md.to_str().unwrap()]);
    assert!(out.status.success());
    let text = read(&md);
    assert_eq!(text, String::from_utf8(out.stdout).unwrap());
    assert!(text.contains("| H^3 | v_B |"));
    assert!(text.contains("| H^6 | i_G(-3) |"));
}

#[test]
fn both_variants_in_one_array() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("t.json");
    assert!(perdom(&["table", "--g", "2,1,-3", "--json", json.to_str().unwrap()]).status.success());
    let v: serde_json::Value = serde_json::from_str(&read(&json)).unwrap();
    let variants: Vec<&str> = v.as_array().unwrap().iter().map(|t| t["variant"].as_str().unwrap()).collect();
    assert_eq!(variants, ["open", "closed"]);
    // Closed table traces at q = 2 are the counts of the unstable locus.
    assert_eq!(v[1]["traces"]["1"], "21");
}

#[test]
fn stalk_and_dims_commands() {
    let out = perdom(&["stalk", "--drinfeld", "3", "--q", "2", "--n", "2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = perdom(&["dims", "--d", "3", "--q", "2", "--i0", "1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("| {s1} | 7 | 6 | 6 |"), "{text}");
}
