use std::path::PathBuf;
use std::process::{Command, Output};

use smatch_core::analysis::classify_worst_case;
use smatch_core::{fixtures, parse_instance, serialize_instance, ManId, WomanId};

fn smatch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_smatch"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture_path(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn solve_reference_fixture() {
    let o = smatch(&["solve", "--fixture", "paper-4x4", "--orientation", "men"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(&lines[..4], &["M1 -> W2", "M2 -> W1", "M3 -> W4", "M4 -> W3"]);
    assert!(lines[4].starts_with("proposals: "));
}

#[test]
fn solve_engines_agree() {
    let seq = stdout(&smatch(&["solve", "--fixture", "paper-4x4"]));
    let par = stdout(&smatch(&["solve", "--fixture", "paper-4x4", "--engine", "parallel"]));
    let pairs = |s: &str| s.lines().filter(|l| l.contains("->")).map(String::from).collect::<Vec<_>>();
    assert_eq!(pairs(&seq), pairs(&par));
    let women = stdout(&smatch(&["solve", "--fixture", "two-by-two", "--orientation", "women", "--engine", "parallel"]));
    assert!(women.starts_with("M1 -> W2\nM2 -> W1\n"), "{women}");
}

#[test]
fn solve_files_and_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let one = write_temp(&dir, "one.txt", "1\n1\n1\n");
    let o = smatch(&["solve", &one]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "M1 -> W1\nproposals: 1\n");

    let bad = write_temp(&dir, "bad.txt", "2\n1 2\n3 3\n1 2\n2 1\n");
    let o = smatch(&["solve", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a permutation"));

    let o = smatch(&["solve", &dir.path().join("missing.txt").to_string_lossy()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn mod_gsa_on_reference_fixture() {
    let o = smatch(&["mod-gsa", "--fixture", "paper-4x4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("baseline: score=8"));
    assert!(out.contains("(M3,W4) score=3"));
    assert!(out.contains("chosen: (M3,W4) score=3"));
    assert!(out.contains("final matching:\n  M1 -> W1\n  M2 -> W3\n  M4 -> W2\n"));
    assert!(!out.contains("WARNING"));
    // par-gsa is mod-gsa with the parallel engine
    let par = stdout(&smatch(&["par-gsa", "--fixture", "paper-4x4"]));
    let alias = stdout(&smatch(&["mod-gsa", "--fixture", "paper-4x4", "--engine", "parallel"]));
    assert_eq!(par, alias);
    assert!(par.contains("chosen: (M3,W4) score=3"));
}

#[test]
fn mod_gsa_warns_and_rejects_small() {
    let dir = tempfile::tempdir().unwrap();
    // a random instance whose two orientations disagree
    let text = (0..)
        .map(|seed| stdout(&smatch(&["gen", "5", "--seed", &seed.to_string()])))
        .find(|t| !classify_worst_case(&parse_instance(t).unwrap()).unique_stable)
        .unwrap();
    let path = write_temp(&dir, "random.txt", &text);
    let out = stdout(&smatch(&["mod-gsa", &path]));
    assert!(out.contains("WARNING: instance is not a worst-case scenario"));

    let o = smatch(&["mod-gsa", "--fixture", "singleton"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_verdicts() {
    let o = smatch(&["verify", "--fixture", "paper-4x4", &fixture_path("baseline_4x4.txt")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "STABLE\n");

    let o = smatch(&[
        "verify",
        &fixture_path("reduced_without_m4_w3.txt"),
        &fixture_path("claimed_relabelled.txt"),
    ]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(stdout(&o), "UNSTABLE: blocking pair (M2,W1)\n");

    let o = smatch(&[
        "verify",
        "--fixture",
        "paper-4x4",
        "--delete",
        "M4,W3",
        &fixture_path("claimed_original_ids.txt"),
    ]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(stdout(&o), "UNSTABLE: blocking pair (M2,W1)\n");

    let dir = tempfile::tempdir().unwrap();
    let single = write_temp(&dir, "m.txt", "1 1\n");
    let o = smatch(&["verify", "--fixture", "singleton", &single]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn reduced_fixture_file_is_the_serialized_deletion() {
    let text = std::fs::read_to_string(fixture_path("reduced_without_m4_w3.txt")).unwrap();
    let reduced = fixtures::paper_4x4().delete_pair(ManId(4), WomanId(3)).unwrap();
    assert_eq!(parse_instance(&text).unwrap(), parse_instance(&serialize_instance(&reduced)).unwrap());
}

#[test]
fn gen_is_deterministic() {
    let a = smatch(&["gen", "4", "--seed", "0", "--mode", "random"]);
    let b = smatch(&["gen", "4", "--seed", "0", "--mode", "random"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(serialize_instance(&parse_instance(&text).unwrap()), text);
}

#[test]
fn gen_worst_case() {
    for seed in ["0", "1", "2"] {
        let o = smatch(&["gen", "4", "--seed", seed, "--mode", "worst_case"]);
        assert_eq!(o.status.code(), Some(0));
        let r = classify_worst_case(&parse_instance(&stdout(&o)).unwrap());
        assert!(r.unique_stable && r.no_first_choice);
    }
    let o = smatch(&["gen", "12", "--seed", "9", "--mode", "planted"]);
    assert!(classify_worst_case(&parse_instance(&stdout(&o)).unwrap()).is_worst_case());

    assert_eq!(smatch(&["gen", "1", "--mode", "worst-case"]).status.code(), Some(3));
    assert_eq!(smatch(&["gen", "0"]).status.code(), Some(3));
    let o = smatch(&["gen", "2", "--mode", "worst-case", "--attempts", "50"]);
    assert_eq!(o.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&o.stderr).contains("50 attempts"));
}

#[test]
fn bench_output() {
    let o = smatch(&["bench", "3", "3"]);
    assert_eq!(stdout(&o), "n,gsa_steps,mod_gsa_steps,mod_pgsa_steps,band\n3,9,12,6,LOW\n");
    let o = smatch(&["bench", "3", "16", "--mode", "analytic"]);
    assert_eq!(stdout(&o).lines().count(), 15);
    assert_eq!(smatch(&["bench", "5", "4"]).status.code(), Some(2));

    let o = smatch(&["bench", "4", "6", "--mode", "both", "--seed", "1"]);
    let out = stdout(&o);
    assert!(out.starts_with(
        "n,gsa_steps,mod_gsa_steps,mod_pgsa_steps,band,gsa_empirical,mod_gsa_empirical,mod_pgsa_empirical\n"
    ));
    assert_eq!(out, stdout(&smatch(&["bench", "4", "6", "--mode", "both", "--seed", "1"])));
    for line in out.lines().skip(1) {
        let cells: Vec<u64> = line.split(',').filter_map(|c| c.parse().ok()).collect();
        // n, three analytic counts, three empirical counts
        assert_eq!(cells.len(), 7);
        assert!(cells[4] <= cells[1], "empirical proposals exceed n^2: {line}");
    }
}

#[test]
fn usage_errors() {
    assert_eq!(smatch(&["solve"]).status.code(), Some(2));
    assert_eq!(smatch(&["solve", "--fixture", "nope"]).status.code(), Some(2));
    assert_eq!(smatch(&["verify", "--fixture", "paper-4x4", "a", "b"]).status.code(), Some(2));
}
