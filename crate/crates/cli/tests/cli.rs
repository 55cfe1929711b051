use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn ltl2nba(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ltl2nba"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn until_stats() {
    let o = ltl2nba(&["-f", "a U b", "--format", "stats"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "states=2 transitions=3 accepting=1\n");
}

#[test]
fn always_two_untils_stats() {
    let o = ltl2nba(&["-f", "G(b U c & d U e)", "--format", "stats"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "states=4 transitions=16 accepting=1\n");
}

#[test]
fn parse_error_points_at_column() {
    let o = ltl2nba(&["-f", "a U ("]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("1:6"), "{err}");
    assert!(err.contains("  a U (\n       ^"), "{err}");
    assert!(stdout(&o).is_empty());
}

#[test]
fn mode_mismatch_exits_2() {
    let o = ltl2nba(&["-f", "G a", "--mode", "rf"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("release-free"));
    let o = ltl2nba(&["-f", "F a", "--mode", "until-free"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_do_not_collide_with_mode_mismatch() {
    assert_eq!(ltl2nba(&["--bogus"]).status.code(), Some(64));
    assert_eq!(ltl2nba(&[]).status.code(), Some(64));
    assert_eq!(
        ltl2nba(&["-f", "a", "--file", "x.ltl"]).status.code(),
        Some(64)
    );
    assert_eq!(ltl2nba(&["--sample", "3"]).status.code(), Some(64));
    assert_eq!(ltl2nba(&["--help"]).status.code(), Some(0));
}

#[test]
fn hoa_output_is_deterministic_and_valid() {
    let a = ltl2nba(&["-f", "G(b U c & d U e)"]);
    let b = ltl2nba(&["-f", "G(b U c & d U e)"]);
    assert_eq!(a.stdout, b.stdout);
    let doc = stdout(&a);
    ltl2nba::validate_hoa(&doc).unwrap();
    assert!(doc.contains("States: 4\n"));
    assert!(doc.contains("acc-name: Buchi\n"));
}

#[test]
fn dot_output() {
    let o = ltl2nba(&["-f", "a U b", "--format", "dot"]);
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("doublecircle").count(), 1);
}

#[test]
fn json_output() {
    let o = ltl2nba(&["-f", "a R b", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["version"], 1);
    assert_eq!(v["construction"], "until-free");
    assert_eq!(v["stats"]["states"], v["states"].as_array().unwrap().len());
    assert_eq!(v["ap"], serde_json::json!(["a", "b"]));
}

#[test]
fn optimization_flags_change_the_general_automaton() {
    let merged = ltl2nba(&["-f", "G(b U c & d U e)", "--format", "stats"]);
    let plain = ltl2nba(&["-f", "G(b U c & d U e)", "--format", "stats", "--no-merge"]);
    assert_ne!(merged.stdout, plain.stdout);
    for flag in [
        "--no-restrict-p",
        "--min-os",
        "--prune-dead",
        "--no-occurrence-tags",
    ] {
        let o = ltl2nba(&["-f", "G(b U c & d U e)", "--format", "stats", flag]);
        assert_eq!(o.status.code(), Some(0), "{flag}");
    }
}

#[test]
fn file_input_and_output() {
    let dir = std::env::temp_dir().join(format!("ltl2nba-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let input = dir.join("f.ltl");
    let output = dir.join("out.hoa");
    fs::write(&input, "F a & G (b -> X c)\n").unwrap();
    let o = ltl2nba(&[
        "--file",
        input.to_str().unwrap(),
        "-o",
        output.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    ltl2nba::validate_hoa(&fs::read_to_string(&output).unwrap()).unwrap();

    fs::write(&input, "a &\n  & b\n").unwrap();
    let o = ltl2nba(&["--file", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("2:3"), "{}", stderr(&o));

    let missing = dir.join("missing.ltl");
    assert_eq!(
        ltl2nba(&["--file", missing.to_str().unwrap()])
            .status
            .code(),
        Some(74)
    );
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_single_formula() {
    let o = ltl2nba(&[
        "--verify",
        "-f",
        "a U b",
        "--max-stem",
        "2",
        "--max-loop",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["version"], 1);
    let f = &v["formulas"][0];
    assert_eq!(f["pass"], true);
    assert_eq!(f["checks"]["oracle"]["lassos"], 420);
    assert_eq!(f["checks"]["oracle"]["mismatches"], 0);
    assert_eq!(f["checks"]["complement"]["pass"], true);
    let b = &f["checks"]["bounds"];
    assert_eq!(b["n"], 3);
    assert_eq!(b["special_bound"], 16);
    assert_eq!(b["general_bound"], 128);
    assert_eq!(b["states"], 2);
}

#[test]
fn verify_sampled_batch() {
    let args = [
        "--verify",
        "--sample",
        "50",
        "--seed",
        "7",
        "--max-size",
        "6",
        "--ap",
        "2",
    ];
    let o = ltl2nba(&args);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["summary"]["formulas"], 50);
    assert_eq!(v["summary"]["passed"], 50);
    assert_eq!(ltl2nba(&args).stdout, o.stdout);
}

#[test]
fn verify_general_mode_on_a_batch() {
    let o = ltl2nba(&[
        "--verify",
        "--mode",
        "general",
        "--sample",
        "40",
        "--seed",
        "3",
        "--max-size",
        "9",
        "--ap",
        "3",
        "--max-stem",
        "1",
        "--max-loop",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn verify_reports_skipped_formulas_in_special_modes() {
    let o = ltl2nba(&[
        "--verify",
        "--mode",
        "rf",
        "--sample",
        "30",
        "--seed",
        "2",
        "--max-size",
        "6",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let s = &v["summary"];
    assert!(s["skipped"].as_u64().unwrap() > 0);
    assert_eq!(s["failed"], 0);
    assert_eq!(
        s["passed"].as_u64().unwrap() + s["skipped"].as_u64().unwrap(),
        30
    );
}

#[test]
fn untagged_general_construction_is_caught_by_verify() {
    let o = ltl2nba(&[
        "--verify",
        "--mode",
        "general",
        "--no-occurrence-tags",
        "-f",
        "(b | c) U (!a R c)",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let oracle = &v["formulas"][0]["checks"]["oracle"];
    assert!(oracle["mismatches"].as_u64().unwrap() > 0);
    assert_eq!(oracle["counterexamples"][0]["expected"], false);
}

#[test]
fn verify_refuses_huge_grids() {
    let o = ltl2nba(&[
        "--verify",
        "-f",
        "a & b & c & d & e & f",
        "--max-stem",
        "3",
        "--max-loop",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(64));
}
