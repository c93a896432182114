use std::path::Path;

use bfun::cli::{run, CacheFile, Outcome, EXIT_OK, EXIT_USAGE};
use bfun::FactoredBPoly;
use serde_json::Value;

fn bfun(cache: &Path, args: &[&str]) -> Outcome {
    let mut argv = vec!["bfun".to_string(), "--cache".into(), cache.display().to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    run(argv)
}

fn roots_of(json: &str) -> Vec<(i64, i64, u64)> {
    let v: Value = serde_json::from_str(json).unwrap();
    v["roots"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["num"].as_i64().unwrap(), r["den"].as_i64().unwrap(), r["mult"].as_u64().unwrap()))
        .collect()
}

#[test]
fn conj_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = bfun(&dir.path().join("c.json"), &["conj", "3"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "(s + 2/3) (s + 1)^2 (s + 4/3)\n");
}

#[test]
fn local_at_double_point() {
    let dir = tempfile::tempdir().unwrap();
    let out = bfun(&dir.path().join("c.json"), &["local", "5", "5", "7"]);
    assert_eq!(out.stdout, "(s + 1)\n");
    let out = bfun(&dir.path().join("c.json"), &["local", "1/2", "1/3"]);
    assert_eq!(out.stdout, "1\n");
}

#[test]
fn opdam_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = bfun(&dir.path().join("c.json"), &["opdam", "A2", "--json"]);
    assert_eq!(out.code, EXIT_OK);
    let mut roots = roots_of(&out.stdout);
    roots.sort();
    assert_eq!(roots, vec![(-7, 6, 1), (-5, 6, 1), (-1, 1, 1)]);
}

#[test]
fn text_and_json_agree() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.json");
    for args in [&["conj", "5"][..], &["blowup", "4"], &["upper", "4"], &["opdam", "I2(7)"], &["local", "1", "1", "2", "2"]] {
        let text = bfun(&cache, args).stdout;
        let mut with_json = vec!["--json"];
        with_json.extend_from_slice(args);
        let json: FactoredBPoly = serde_json::from_str(&bfun(&cache, &with_json).stdout).unwrap();
        assert_eq!(text.trim_end(), json.to_string(), "{args:?}");
    }
}

#[test]
fn cache_hit_matches_miss() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.json");
    let miss = bfun(&cache, &["conj", "9"]);
    assert!(cache.exists());
    let stored = CacheFile::load(&cache).unwrap();
    assert!(stored.entries.contains_key(&9));
    let hit = bfun(&cache, &["conj", "9"]);
    assert_eq!(miss, hit);
    let fresh = bfun(&dir.path().join("other.json"), &["conj", "9"]);
    assert_eq!(miss.stdout, fresh.stdout);
}

#[test]
fn bad_cache_version_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.json");
    std::fs::write(&cache, r#"{"version":99,"entries":{}}"#).unwrap();
    let out = bfun(&cache, &["conj", "3"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stdout.is_empty());
}

#[test]
fn check_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = bfun(&dir.path().join("c.json"), &["check", "7"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(out.stdout.ends_with("all checks passed\n"));
    let json = bfun(&dir.path().join("c.json"), &["check", "4", "--json"]);
    let reports: Value = serde_json::from_str(&json.stdout).unwrap();
    assert_eq!(reports.as_array().unwrap().len(), 3);
    assert_eq!(reports[1]["kashiwara"], serde_json::json!([0, 4]));
}

#[test]
fn verify_lemmas_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = bfun(&dir.path().join("c.json"), &["verify-lemmas", "5"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.lines().any(|l| l.starts_with("theta") && l.contains("pass")));
    assert!(out.stdout.lines().any(|l| l.contains("alpha_congruence[k=2]") && l.contains("info")));
}

#[test]
fn oracle_verb() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.json");
    let out = bfun(&cache, &["oracle", "x1^2", "--order", "2", "--sdeg", "0", "--cdeg", "0"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.starts_with("b(s) = (s + 1/2) (s + 1)\n"), "{}", out.stdout);
    let out = bfun(&cache, &["oracle", "x1^2", "--order", "1"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.starts_with("inconclusive"));
    let out = bfun(&cache, &["oracle", "y1*y2*(y1+y2)", "--json"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["found"], Value::Bool(true));
    assert_eq!(v["b"]["roots"].as_array().unwrap().len(), 3);
}

#[test]
fn jump_verb() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(bfun(&dir.path().join("c.json"), &["jump", "6"]).stdout, "1/3\n");
}

#[test]
fn usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.json");
    for args in [
        &["conj", "41"][..],
        &["conj", "x"],
        &["check", "13"],
        &["local", "1/2", "3/0"],
        &["local", "abc"],
        &["opdam", "A0"],
        &["opdam", "Q3"],
        &["oracle", "x1 +"],
        &["oracle", "5"],
        &["jump", "1"],
        &[],
    ] {
        let out = bfun(&cache, args);
        assert_eq!(out.code, EXIT_USAGE, "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
    assert!(!cache.exists());
}

#[test]
fn negative_coordinates_need_flags_first() {
    let dir = tempfile::tempdir().unwrap();
    let out = bfun(&dir.path().join("c.json"), &["--json", "local", "-1/2", "-1/2", "-1/2"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(roots_of(&out.stdout), vec![(-2, 3, 1), (-1, 1, 2), (-4, 3, 1)]);
}

#[test]
fn help_is_not_an_error() {
    let out = run(["bfun", "--help"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("verify-lemmas"));
}
