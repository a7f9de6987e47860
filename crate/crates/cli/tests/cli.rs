//! End-to-end tests for the `sgt` binary.

use std::process::{Command, Output};

fn sgt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sgt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_lines(out: &Output) -> Vec<String> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.to_string())
        .collect()
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn eval_machine_record() {
    let out = sgt(&["--machine", "eval", "{1|0|-1}"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(
        stdout_lines(&out),
        vec!["notation={1|0|-1} left_final=1 right_final=-1 class=N"]
    );
    let out = sgt(&["--machine", "eval", "0"]);
    assert_eq!(stdout_lines(&out), vec!["notation=0 left_final=0 right_final=0 class=ti"]);
    let out = sgt(&["--machine", "eval", "{3|4|2}"]);
    assert_eq!(
        stdout_lines(&out),
        vec!["notation={3|4|2} left_final=3 right_final=2 class=L"]
    );
}

#[test]
fn human_and_machine_agree() {
    let human = sgt(&["eval", "{3|4|2}"]);
    let text = String::from_utf8_lossy(&human.stdout).to_string();
    assert!(text.contains("left final:  3"));
    assert!(text.contains("right final: 2"));
    assert!(text.contains("class:       L"));
}

#[test]
fn every_run_prints_a_config_banner() {
    let out = sgt(&["--seed", "9", "eval", "0"]);
    let banner = String::from_utf8_lossy(&out.stdout)
        .lines()
        .next()
        .unwrap()
        .to_string();
    assert!(banner.starts_with("# sgt "));
    assert!(banner.contains("seed=9"));
}

#[test]
fn parse_errors_exit_2() {
    let out = sgt(&["eval", "{1|0|-1"]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));
}

#[test]
fn sum_and_neg() {
    let out = sgt(&["sum", "{1|0|.}", "{.|0|-1}"]);
    assert_eq!(stdout_lines(&out), vec!["{{.|1|0}|0|{0|-1|.}}"]);
    let out = sgt(&["neg", "{1|0|-2}"]);
    assert_eq!(stdout_lines(&out), vec!["{2|0|-1}"]);
}

#[test]
fn tame_witness() {
    let out = sgt(&["tame", "{-1|0|.}"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(
        stdout_lines(&out),
        vec!["not tame: path L->-1 ends at -1 with Left last"]
    );
}

#[test]
fn cmp_canon_number_require_membership() {
    let out = sgt(&["canon", "{2|0|-1}"]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a member"));

    let out = sgt(&["canon", "{1,{2|1|.}|0|.}"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout_lines(&out), vec!["{{2|1|.}|0|.}"]);

    let out = sgt(&["--machine", "cmp", "{1|0|.}", "0"]);
    assert_eq!(stdout_lines(&out), vec!["geq=true leq=false rel=gt"]);

    let out = sgt(&["--machine", "number", "{1|0|-1}"]);
    assert_eq!(stdout_lines(&out), vec!["number=false"]);
}

#[test]
fn surreal_day_two() {
    let out = sgt(&["--machine", "surreal", "2"]);
    let lines = stdout_lines(&out);
    assert_eq!(lines[0], "day=2 count=7");
    assert_eq!(lines.len(), 8);
}

#[test]
fn half_parameter_works() {
    let out = sgt(&["--machine", "--x", "1/2", "number", "{1/2|0|{0|-1/2|.}}"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout_lines(&out), vec!["number=true"]);
}

#[test]
fn verify_fixtures_is_clean() {
    let out = sgt(&["verify", "fixtures"]);
    assert_eq!(exit_code(&out), 0);
}

#[test]
fn verify_table2_small_budget_is_clean() {
    let out = sgt(&["--depth", "2", "--max-games", "60", "verify", "table2"]);
    assert_eq!(exit_code(&out), 0);
}

/// The tame outcome-table sweep finds genuine counterexamples even at tiny
/// budgets; the violation exit code is part of the interface.
#[test]
fn verify_table1_reports_violations_with_exit_1() {
    let out = sgt(&[
        "--depth",
        "1",
        "--branching",
        "1",
        "--scores",
        "-1,0,1",
        "--max-games",
        "600",
        "verify",
        "table1",
    ]);
    assert_eq!(exit_code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("violation"));
}

#[test]
fn distinguish_finds_context() {
    let out = sgt(&["--machine", "--depth", "1", "distinguish", "1", "0"]);
    assert_eq!(exit_code(&out), 0);
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 1);
    assert!(lines[0].starts_with("distinguished=true"));
}

#[test]
fn pirates_tree_and_solve() {
    let dir = std::env::temp_dir().join("sgt-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("reference-board.txt");
    std::fs::write(
        &path,
        "vertex a start\nvertex b 2\nvertex c start\nvertex d 1\nedge a b\nedge c d\nleft a\nright c\n",
    )
    .unwrap();
    let out = sgt(&["--machine", "pirates", path.to_str().unwrap(), "--tree"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout_lines(&out), vec!["notation={{.|2|1}|0|{1|-1|.}}"]);

    let out = sgt(&["--machine", "pirates", path.to_str().unwrap(), "--solve"]);
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 1);
    assert!(lines[0].ends_with("left_final=1 right_final=1 class=L"));
}

#[test]
fn pirates_missing_file_exits_2() {
    let out = sgt(&["pirates", "/nonexistent/board.txt"]);
    assert_eq!(exit_code(&out), 2);
}
