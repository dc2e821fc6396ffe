use std::path::{Path, PathBuf};
use std::process::Command;

use silted::cli::run;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn trailer(out: &str) -> Vec<(String, String)> {
    out.lines()
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

fn value(out: &str, key: &str) -> Option<String> {
    trailer(out).into_iter().find(|(k, _)| k == key).map(|(_, v)| v)
}

#[test]
fn goldens_reverify() {
    let mut entries: Vec<PathBuf> = std::fs::read_dir(data("golden"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    entries.sort();
    assert!(entries.len() >= 10);
    for g in entries {
        let stem = g.file_name().unwrap().to_str().unwrap().strip_suffix(".trailer").unwrap();
        let (file, cmd) = stem.split_once('.').unwrap();
        let want = std::fs::read_to_string(&g).unwrap();
        let out = run(["silted", cmd, data(&format!("{file}.alg")).to_str().unwrap(), "--trailer-only"]);
        assert_eq!(out.stdout, want, "{stem}");
        let expected = if value(&want, "verdict").as_deref() == Some("false") { 1 } else { 0 };
        assert_eq!(out.code, expected, "{stem}");
    }
}

#[test]
fn worked_example_trailers() {
    let ct = run(["silted", "cluster-tilted", data("worked.alg").to_str().unwrap()]);
    assert_eq!(ct.code, 0);
    assert_eq!(value(&ct.stdout, "dimE").as_deref(), Some("2"));
    assert_eq!(value(&ct.stdout, "dimN").as_deref(), Some("1"));
    assert_eq!(value(&ct.stdout, "arrows").as_deref(), Some("5"));
    assert_eq!(value(&ct.stdout, "relations").as_deref(), Some("5"));
    let s = run(["silted", "silted", data("worked.alg").to_str().unwrap(), "--trailer-only"]);
    assert_eq!(s.stdout, "vertices=4\narrows=3\nrelations=2\ndim=7\ngldim=3\n");
}

#[test]
fn regular_pair_checks() {
    let out = run(["silted", "check-pair", data("a3.alg").to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert_eq!(value(&out.stdout, "verdict").as_deref(), Some("true"));
}

#[test]
fn false_verdict_prints_witness() {
    let out = run(["silted", "check-pair", data("not_rigid.alg").to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("witness:"));
}

#[test]
fn output_is_deterministic() {
    let file = data("worked.alg");
    for cmd in ["check-pair", "silted", "cluster-tilted", "compare", "enumerate"] {
        let args = ["silted", cmd, file.to_str().unwrap(), "--seed", "7"];
        assert_eq!(run(args), run(args), "{cmd}");
    }
}

#[test]
fn input_errors_exit_two() {
    let missing = run(["silted", "present", "/nonexistent/x.alg"]);
    assert_eq!(missing.code, 2);
    let not_dynkin = run(["silted", "enumerate", data("a3_zero_relation.alg").to_str().unwrap()]);
    assert_eq!(not_dynkin.code, 2);
    let no_pair = run(["silted", "silted", data("a2.alg").to_str().unwrap()]);
    assert_eq!(no_pair.code, 2);
    let high_gldim = run(["silted", "relation-extension", data("worked.alg").to_str().unwrap()]);
    assert_eq!(high_gldim.code, 0);

    let dir = std::env::temp_dir().join(format!("silted-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("dup.alg");
    std::fs::write(&bad, "[quiver]\nvertices = 1 2\na: 1 -> 2\na: 2 -> 1\n").unwrap();
    let out = run(["silted", "present", bad.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 4"), "{}", out.stderr);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_silted");
    let code = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = code(&["enumerate", data("a2.alg").to_str().unwrap(), "--trailer-only"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), "pairs=5\n");
    assert_eq!(code(&["check-pair", data("not_rigid.alg").to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(code(&["present", "/nonexistent.alg"]).status.code(), Some(2));
}
