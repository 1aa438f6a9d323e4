use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn arcs(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_arcs")).args(args).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v, String::from_utf8(out.stderr).unwrap())
}

fn claim(r: &Value, name: &str) -> bool {
    r["claims"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap()["passed"].as_bool().unwrap()
}

fn star_family(dir: &Path) -> String {
    let p = dir.join("star.json");
    let (code, _, _) = arcs(&["verify", "--thm", "1", "--m", "4", "--family-out", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    p.to_str().unwrap().to_string()
}

#[test]
fn verify_star_family() {
    let (code, r, _) = arcs(&["verify", "--thm", "1", "--m", "4", "--seed", "9"]);
    assert_eq!(code, 0);
    assert_eq!(r["body"]["arcs"].as_array().unwrap().len(), 12);
    assert!(claim(&r, "pairwise-at-most-1"));
    assert_eq!(r["seed"], 9);
    assert_eq!(r["config"]["m"], 4);
    assert_eq!(r["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn verify_doubled_polygon() {
    let (code, r, _) = arcs(&["verify", "--thm", "2", "--n", "5"]);
    assert_eq!(code, 0);
    assert_eq!(r["body"]["arcs"].as_array().unwrap().len(), 60);
    assert!(claim(&r, "pairwise-at-most-2"));
    let (code, r, _) = arcs(&["verify", "--thm", "2", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r["body"]["arcs"].as_array().unwrap().len(), 6);
}

#[test]
fn searches() {
    for (args, size) in [
        (vec!["--variant", "thm1", "--m", "3", "--k", "1", "--L", "6"], 6),
        (vec!["--variant", "thm2", "--m", "2", "--k", "2", "--L", "6"], 6),
        (vec!["--variant", "pp", "--m", "3", "--k", "1"], 3),
    ] {
        let mut a = vec!["search"];
        a.extend(args.iter());
        let (code, r, _) = arcs(&a);
        assert_eq!(code, 0, "{args:?}");
        assert_eq!(r["body"]["size"], size);
        assert_eq!(r["body"]["exhausted"], true);
        assert!(r["config"]["L"].is_u64());
    }
}

#[test]
fn budget_exhaustion_exits_2() {
    let (code, r, _) = arcs(&["search", "--variant", "thm2", "--m", "3", "--budget", "0.000000001"]);
    assert_eq!(code, 2);
    assert_eq!(r["body"]["exhausted"], false);
}

#[test]
fn fish_audits() {
    let dir = tempfile::tempdir().unwrap();
    let star = star_family(dir.path());
    let (code, r, _) = arcs(&["fish-audit", &star]);
    assert_eq!(code, 0);
    for q in 1..=4 {
        assert_eq!(r["body"]["classes"][q.to_string()]["c_q"], 3);
    }

    let best = dir.path().join("best.json");
    let (code, _, _) = arcs(&["search", "--variant", "thm1", "--m", "3", "--family-out", best.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (code, r, _) = arcs(&["fish-audit", best.to_str().unwrap()]);
    assert_eq!(code, 0);
    for ds in r["body"]["d"].as_object().unwrap().values() {
        assert_eq!(ds.as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).sum::<i64>(), 2);
    }

    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"format_version":1,"m":3,"arcs":[{"start":"q2","end":"p","word":[]},{"start":"q1","end":"p","word":[-3,-1]}]}"#,
    )
    .unwrap();
    let (code, r, _) = arcs(&["fish-audit", bad.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(!claim(&r, "hypotheses"));
}

#[test]
fn render_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let star = star_family(dir.path());
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for p in [&a, &b] {
        let (code, _, _) = arcs(&["render", &star, "--out", p.to_str().unwrap(), "--fish"]);
        assert_eq!(code, 0);
    }
    let sa = std::fs::read(&a).unwrap();
    assert_eq!(sa, std::fs::read(&b).unwrap());
    let text = String::from_utf8(sa).unwrap();
    // twelve arcs plus four walls
    assert_eq!(text.matches("<polyline").count(), 16);

    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, r#"{"format_version":1,"m":3,"arcs":[]}"#).unwrap();
    let out = dir.path().join("e.svg");
    let (code, _, _) = arcs(&["render", empty.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(out).unwrap();
    assert_eq!(text.matches("<polyline").count(), 3);
    assert_eq!(text.matches("<circle").count(), 3);
}

#[test]
fn family_files_are_stable() {
    let dir = tempfile::tempdir().unwrap();
    let first = star_family(dir.path());
    let bytes = std::fs::read(&first).unwrap();
    let again = dir.path().join("again.json");
    let (code, _, _) = arcs(&["verify", "--thm", "1", "--m", "4", "--family-out", again.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(bytes, std::fs::read(&again).unwrap());
    let f = arcs_core::FamilyFile::from_json(std::str::from_utf8(&bytes).unwrap()).unwrap();
    assert_eq!(f.to_json().as_bytes(), &bytes[..]);
}

#[test]
fn remove_puncture_command() {
    let dir = tempfile::tempdir().unwrap();
    let star = star_family(dir.path());
    let out = dir.path().join("small.json");
    let (code, r, _) = arcs(&["remove-puncture", &star, "--v", "2", "--family-out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(claim(&r, "no-new-crossings"));
    let f = arcs_core::FamilyFile::from_json(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(f.m, 3);
}

#[test]
fn usage_errors_exit_1() {
    let (code, _, err) = arcs(&["search", "--variant", "thm1"]);
    assert_eq!(code, 1);
    assert!(err.contains("--m"));
    assert_eq!(arcs(&["verify", "--thm", "1"]).0, 1);
    assert_eq!(arcs(&["search", "--variant", "thm1", "--m", "3", "--k", "3"]).0, 1);
    assert_eq!(arcs(&["fish-audit", "/nonexistent/file.json"]).0, 1);
    assert_eq!(arcs(&["--help"]).0, 0);
}
