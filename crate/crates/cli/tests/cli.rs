use std::collections::BTreeSet;
use std::path::Path;

use randic_cli::run_with;
use randic_core::cactus::{enumerate_cacti, extremal_set};
use randic_core::{canonical_label, parse_digraph, parse_graph, CanonicalLabel, Exponent};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with(std::iter::once("randic").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const C4: &str = "4 4\n0 1\n1 2\n2 3\n0 3\n";
const G2: &str = "5 6\n0 1\n0 2\n1 2\n0 3\n0 4\n3 4\n";

#[test]
fn index_of_c4() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "c4.txt", C4);
    assert_eq!(run(&["index", "--graph", &g, "--a", "1"]), (0, "R = 16\n".into(), String::new()));
    // Alternating arcs: every vertex is a source or a sink.
    let d = write(dir.path(), "d.txt", "4 4\n0 1\n2 1\n2 3\n0 3\n");
    assert_eq!(run(&["index", "--graph", &d, "--directed", "--a", "1"]).1, "R = 8\n");
    assert_eq!(run(&["index", "--graph", &g, "--a", "1,2"]).1, "a = 1: R = 16\na = 2: R = 32\n");
}

#[test]
fn orient_max_on_g2() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g2.txt", G2);
    for search in ["exhaustive", "bnb"] {
        let (code, out, _) = run(&["orient-max", "--graph", &g, "--a", "1", "--search", search]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().next(), Some("max = 14, witnesses = 2"), "{search}");
    }
    let (_, out, _) = run(&["orient-max", "--graph", &g, "--a", "1", "--halve-reversal", "true", "--workers", "1"]);
    assert_eq!(out.lines().next(), Some("max = 14, witnesses = 2"));
}

fn labels_in(dir: &Path, directed: bool) -> BTreeSet<CanonicalLabel> {
    std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let text = std::fs::read_to_string(e.unwrap().path()).unwrap();
            if directed {
                canonical_label(&parse_digraph(&text).unwrap()).unwrap()
            } else {
                canonical_label(&parse_graph(&text).unwrap()).unwrap()
            }
        })
        .collect()
}

#[test]
fn written_digraphs_reparse_to_the_same_labels() {
    let dir = tempfile::tempdir().unwrap();
    let members = dir.path().join("members");
    let (code, _, _) = run(&["construct-extremal", "--n", "4", "--r", "1", "--a", "1", "--member-dir", members.to_str().unwrap()]);
    assert_eq!(code, 0);
    let want: BTreeSet<_> = extremal_set(4, 1, &Exponent::exact(1).unwrap())
        .unwrap()
        .labels()
        .unwrap()
        .into_iter()
        .collect();
    assert_eq!(labels_in(&members, true), want);

    let g = write(dir.path(), "g2.txt", G2);
    let witnesses = dir.path().join("witnesses");
    run(&["orient-max", "--graph", &g, "--a", "2", "--witness-dir", witnesses.to_str().unwrap()]);
    let want: BTreeSet<_> = extremal_set(5, 2, &Exponent::exact(2).unwrap())
        .unwrap()
        .labels()
        .unwrap()
        .into_iter()
        .collect();
    assert_eq!(labels_in(&witnesses, true), want);
}

#[test]
fn exported_cacti_reparse_to_the_same_labels() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = run(&["gen-cacti", "--n-max", "6", "--r-max", "2", "--export-dir", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("\n6 0 6\n"));
    let mut want = BTreeSet::new();
    for n in 1..=6 {
        for r in 0..=((n - 1) / 2).min(2) {
            for g in enumerate_cacti(n, r).unwrap() {
                want.insert(canonical_label(&g).unwrap());
            }
        }
    }
    assert_eq!(labels_in(dir.path(), false), want);
}

#[test]
fn theorem_run_passes() {
    let (code, out, _) = run(&["verify", "theorem", "--n-max", "7", "--r-max", "2", "--a", "1,2", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["violations"], serde_json::json!([]));
    assert_eq!(v["claim"], "theorem");
}

#[test]
fn theorem_csv_rows() {
    let (code, out, _) = run(&["verify", "theorem", "--n-max", "6", "--r-max", "2", "--a", "1", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "6,2,1,19,19,2,true"));
    assert!(out.lines().any(|l| l == "4,1,1,8,8,3,true"));
}

#[test]
fn violations_give_exit_one_with_the_report_written() {
    // The G1 catalog misses the cyclic triangle orientations.
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let (code, _, _) = run(&["verify", "catalogs", "--a", "1", "--format", "json", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert!(!v["violations"].as_array().unwrap().is_empty());
}

#[test]
fn deterministic_bytes() {
    let args = ["verify", "bound", "--n-max", "5", "--a", "1,2", "--format", "json", "--no-timing", "--workers", "1"];
    let first = run(&args);
    assert_eq!(first.0, 0);
    assert_eq!(first, run(&args));
    let seq = run(&["verify", "theorem", "--n-max", "6", "--r-max", "2", "--a", "1,2", "--format", "csv", "--workers", "1"]);
    let par = run(&["verify", "theorem", "--n-max", "6", "--r-max", "2", "--a", "1,2", "--format", "csv", "--workers", "4"]);
    assert_eq!(seq, par);
}

#[test]
fn usage_and_input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cases: Vec<(Vec<String>, &str)> = vec![
        (vec!["index".into(), "--graph".into(), "missing.txt".into()], "--graph"),
        (
            vec!["index".into(), "--graph".into(), write(dir.path(), "bad.txt", "3 2\n0 1\n0 5\n")],
            "line 3",
        ),
        (
            vec!["index".into(), "--graph".into(), write(dir.path(), "c4.txt", C4), "--a".into(), "1.5".into()],
            "--a",
        ),
        (
            vec!["construct-extremal".into(), "--n".into(), "4".into(), "--r".into(), "2".into()],
            "--n/--r",
        ),
        (vec!["verify".into(), "theorem".into(), "--n-max".into(), "12".into()], "--n-max"),
        (vec!["verify".into(), "appendix".into(), "--grid-points".into(), "10".into()], "--grid-points"),
        (vec!["frobnicate".into()], "frobnicate"),
    ];
    for (args, needle) in cases {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, _, err) = run(&refs);
        assert_eq!(code, 2, "{args:?}");
        assert!(err.contains(needle), "{args:?}: {err}");
    }
}

#[test]
fn float_mode_index() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "c4.txt", C4);
    let (code, out, _) = run(&["index", "--graph", &g, "--a", "1.5", "--mode", "float"]);
    assert_eq!(code, 0);
    // 4 * 2^2.5, trailing zero dropped
    assert_eq!(out, "R = 22.627416998\n");
}
