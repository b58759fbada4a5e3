use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hatlab::RunReport;
use serde_json::{json, Value};

fn hatlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hatlab")).args(args).output().expect("spawn hatlab")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write(dir: &Path, name: &str, v: &Value) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn build_then_verify_path() {
    let dir = tempfile::tempdir().unwrap();
    let out = hatlab(&["build", "path", "s=2", "--out", s(dir.path())]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    for f in ["game.json", "strategy.json", "provenance.json", "report.json"] {
        assert!(dir.path().join(f).exists(), "{f} missing");
    }
    let strat = dir.path().join("strategy.json");
    let game = dir.path().join("game.json");
    let out = hatlab(&["verify", "--strategy", s(&strat), "--game", s(&game)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("winning-verified: 1296 placements checked"), "{}", stdout(&out));
}

#[test]
fn verify_sampled_reports_seed() {
    let dir = tempfile::tempdir().unwrap();
    let r = write(dir.path(), "petal.json", &json!({"kind": "petal", "s": 1}));
    let out = hatlab(&["--format", "json", "--seed", "9", "verify", "--strategy", s(&r), "--mode", "sampled", "--samples", "2000"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["outcome"], "sampled-clean");
    assert_eq!(v["seed"], 9);
}

#[test]
fn broken_lookup_is_disproved() {
    let dir = tempfile::tempdir().unwrap();
    // both vertices of a 2-color edge guess the color they see
    let r = write(
        dir.path(),
        "bad.json",
        &json!({
            "kind": "literal_lookup",
            "game": {"vertices": 2, "arcs": [[0, 1], [1, 0]], "h": [2, 2], "g": [1, 1], "hint": null},
            "tables": [[[0], [1]], [[0], [1]]],
        }),
    );
    let out = hatlab(&["--format", "json", "verify", "--strategy", s(&r)]);
    assert_eq!(code(&out), 1);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["outcome"], "disproved");
    assert_eq!(v["result"]["witness"], json!([0, 1]));
}

#[test]
fn oversized_exhaustive_is_undecided() {
    let dir = tempfile::tempdir().unwrap();
    let r = write(dir.path(), "p.json", &json!({"kind": "planar22", "k": 5}));
    let out = hatlab(&["verify", "--strategy", s(&r)]);
    assert_eq!(code(&out), 2, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn solve_small_and_oversized() {
    let dir = tempfile::tempdir().unwrap();
    let losing = write(
        dir.path(),
        "p2.json",
        &json!({"vertices": 2, "arcs": [[0, 1], [1, 0]], "h": [3, 3], "g": [1, 1], "hint": null}),
    );
    assert_eq!(code(&hatlab(&["solve", "--game", s(&losing)])), 1);

    let winning = write(
        dir.path(),
        "k2.json",
        &json!({"vertices": 2, "arcs": [[0, 1], [1, 0]], "h": [2, 2], "g": [1, 1], "hint": null}),
    );
    let table = dir.path().join("table.json");
    assert_eq!(code(&hatlab(&["solve", "--game", s(&winning), "--strategy-out", s(&table)])), 0);
    let out = hatlab(&["verify", "--strategy", s(&table)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));

    let arcs: Vec<[usize; 2]> = (0..9).flat_map(|i| [[i, i + 1], [i + 1, i]]).collect();
    let big = write(
        dir.path(),
        "p10.json",
        &json!({"vertices": 10, "arcs": arcs, "h": vec![6; 10], "g": vec![1; 10], "hint": null}),
    );
    assert_eq!(code(&hatlab(&["--budget", "100000", "solve", "--game", s(&big)])), 2);
}

#[test]
fn certify_builders_and_files() {
    let dir = tempfile::tempdir().unwrap();
    let emitted = dir.path().join("alon.json");
    assert_eq!(code(&hatlab(&["certify", "alon", "edges=3", "--emit", s(&emitted)])), 0);
    assert_eq!(code(&hatlab(&["certify", "--cert", s(&emitted)])), 0);
    assert_eq!(code(&hatlab(&["certify", "path-losing", "s=1", "n=6"])), 0);

    let broken = write(
        dir.path(),
        "broken.json",
        &json!({
            "game": {"vertices": 2, "arcs": [[0, 1], [1, 0]], "h": [2, 2], "g": [1, 1], "hint": null},
            "rule": {"kind": "clique_deficit"},
        }),
    );
    let out = hatlab(&["--format", "json", "certify", "--cert", s(&broken)]);
    assert_eq!(code(&out), 1);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["valid"], false);
}

#[test]
fn phf_commands() {
    assert_eq!(code(&hatlab(&["phf-verify", "--bundled", "phf-9-27-3-3"])), 0);
    assert_eq!(code(&hatlab(&["phf-search", "2", "4", "2", "2"])), 0);
    // two rows cannot separate three columns into three values
    assert_eq!(code(&hatlab(&["--budget", "1e6", "phf-search", "1", "4", "2", "2"])), 1);
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", &json!({"array": [[0, 0, 1]], "k": 3, "v": 2, "t": 2}));
    assert_eq!(code(&hatlab(&["phf-verify", s(&bad)])), 1);
}

#[test]
fn input_errors_exit_3() {
    assert_eq!(code(&hatlab(&["verify", "--strategy", "/nonexistent/strategy.json"])), 3);
    assert_eq!(code(&hatlab(&["build", "nosuchkind"])), 3);
    assert_eq!(code(&hatlab(&["--bogus-flag"])), 3);
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let r = write(dir.path(), "star.json", &json!({"kind": "star_scrapheap", "s": 1, "H": 3}));
    let mut reports = Vec::new();
    for threads in ["1", "4"] {
        let out = dir.path().join(format!("report-{threads}.json"));
        assert_eq!(code(&hatlab(&["--threads", threads, "--out", s(&out), "verify", "--strategy", s(&r)])), 0);
        let rep: RunReport = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
        assert!(rep.wall_time_secs.is_some());
        reports.push(rep.without_timing());
    }
    assert_eq!(reports[0], reports[1]);
    // the built recipe round-trips to the same game
    let built = dir.path().join("built");
    assert_eq!(code(&hatlab(&["build", "--recipe", s(&r), "--out", s(&built)])), 0);
    let again = dir.path().join("again");
    let out = hatlab(&["build", "--recipe", s(&built.join("strategy.json")), "--out", s(&again)]);
    assert_eq!(code(&out), 0);
    assert_eq!(fs::read(built.join("game.json")).unwrap(), fs::read(again.join("game.json")).unwrap());
}
