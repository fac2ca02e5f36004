use std::path::Path;
use std::process::{Command, Output};

fn hardyx(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hardyx"))
        .args(args)
        .current_dir(cwd)
        .env_remove("HARDYX_CACHE_DIR")
        .output()
        .expect("spawn hardyx")
}

#[test]
fn expand_writes_one_row_per_level() {
    let dir = tempfile::tempdir().unwrap();
    let out = hardyx(
        &["expand", "--fn", "gaussian:b=0.5", "--n", "1", "--kmax", "40", "--route", "direct", "--out", "tab.csv"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(dir.path().join("tab.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,value,est_err,route"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 41);
    assert!(rows.iter().all(|r| r.ends_with(",direct")));
    // 17 significant digits
    let v = rows[0].split(',').nth(1).unwrap();
    assert_eq!(v.split('e').next().unwrap().replace(['.', '-'], "").len(), 17);
    // only the renamed output remains
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn verify_example44_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = hardyx(&["verify", "example44"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["suite"], "example44");
    assert_eq!(report["pass"], true);
    let checks = report["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        for key in ["name", "measured", "tolerance", "pass"] {
            assert!(c.get(key).is_some(), "missing {key}");
        }
    }
}

#[test]
fn unknown_function_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = hardyx(&["expand", "--fn", "nosuch"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("nosuch") && err.contains("Usage"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn unknown_flag_and_suite_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    for args in [&["expand", "--fn", "gaussian", "--bogus"][..], &["verify", "nosuch"], &["expand", "--fn", "gaussian:q=1"]] {
        let out = hardyx(args, dir.path());
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    }
}

#[test]
fn output_independent_of_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let run = |t: &str| {
        let out = hardyx(
            &["--threads", t, "expand", "--fn", "gaussian:b=0.5", "--n", "1", "--kmax", "12", "--route", "wigner", "--format", "json"],
            dir.path(),
        );
        assert_eq!(out.status.code(), Some(0));
        out.stdout
    };
    assert_eq!(run("1"), run("8"));
}

#[test]
fn cached_rule_matches_fresh_rule() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let args = ["rule", "--kind", "radial", "--delta", "1.5", "--radius", "9", "--nodes", "64"];
    let fresh = hardyx(&[&args[..], &["--no-cache"]].concat(), dir.path());
    let first = hardyx(&[&args[..], &["--cache-dir", cache.to_str().unwrap()]].concat(), dir.path());
    let second = Command::new(env!("CARGO_BIN_EXE_hardyx"))
        .args(args)
        .current_dir(dir.path())
        .env("HARDYX_CACHE_DIR", &cache)
        .output()
        .unwrap();
    assert_eq!(fresh.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(&cache).unwrap().count(), 1);
    assert_eq!(fresh.stdout, first.stdout);
    assert_eq!(fresh.stdout, second.stdout);
}

#[test]
fn decay_reports_pass_for_example44() {
    let dir = tempfile::tempdir().unwrap();
    let out = hardyx(&["decay", "--fn", "example44", "--n", "2", "--theorem", "T1_3", "--format", "json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let a = v[0]["fit"]["implied_a"].as_f64().unwrap();
    assert!((a - 0.5f64.sqrt()).abs() < 5e-3);
}
