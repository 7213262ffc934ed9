use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn deming(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_deming"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&o.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn gen(args: &[&str]) -> String {
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    let o = deming(&full, "");
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

#[test]
fn ke_on_t_reports_an_obstruction() {
    let t = gen(&["named", "T"]);
    let o = deming(&["ke"], &t);
    assert_eq!(code(&o), 0);
    let v = &json_lines(&o)[0];
    assert_eq!(v["verdict"], "NOT_KE");
    assert_eq!(v["extended"], false);
    assert_eq!(v["obstruction"]["kind"], "T");
}

#[test]
fn edge_list_input_is_accepted() {
    let o = deming(&["alpha"], "n 6\n0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n2 3\n");
    assert_eq!(code(&o), 0);
    assert_eq!(json_lines(&o)[0]["alpha"], 2);
}

#[test]
fn gen_formats_agree() {
    let g6 = gen(&["weak-wheel", "3", "1", "1", "3"]);
    let el = gen(&["weak-wheel", "3", "1", "1", "3", "--edge-list"]);
    let a = json_lines(&deming(&["analyze"], &g6));
    let b = json_lines(&deming(&["analyze"], &el));
    assert_eq!(a, b);
    assert_eq!(a[0]["n"], 6);
}

#[test]
fn analyze_reads_files_and_many_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("in.g6");
    let text = format!("{}{}", gen(&["named", "k4"]), gen(&["named", "petersen"]));
    std::fs::write(&path, text).unwrap();
    let o = deming(&["analyze", "--in", path.to_str().unwrap()], "");
    assert_eq!(code(&o), 0);
    let recs = json_lines(&o);
    assert_eq!(recs.len(), 2);
    assert!(recs.iter().all(|r| r["schema"] == "deming.analysis/1"));
    assert!(recs.iter().all(|r| r.get("timings_ms").is_none_or(Value::is_null)));
    let timed = json_lines(&deming(&["analyze", "--timings", "--in", path.to_str().unwrap()], ""));
    assert!(timed[0]["timings_ms"].is_object());
}

#[test]
fn decompose_and_extend_handle_unmatchable_input() {
    let k4 = gen(&["named", "k4"]).replace('\n', "");
    assert_eq!(code(&deming(&["decompose"], &k4)), 0);
    let p3 = "n 3\n0 1\n1 2\n";
    let o = deming(&["decompose"], p3);
    assert_eq!(code(&o), 0);
    let v = &json_lines(&o)[0];
    assert_eq!(v["extended"], true);
    assert_eq!(v["valid"], true);
    let o = deming(&["extend"], p3);
    assert_eq!(code(&o), 0);
    assert!(!json_lines(&o)[0]["twins"].as_array().unwrap().is_empty());
}

#[test]
fn pretty_output_is_not_json() {
    let o = deming(&["--pretty", "egervary"], &gen(&["named", "T"]));
    assert_eq!(code(&o), 0);
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.starts_with("NotEgervary"), "{s}");
}

#[test]
fn exhausted_budget_exits_2() {
    let o = deming(&["alpha", "--oracle-nodes", "1"], &gen(&["named", "petersen"]));
    assert_eq!(code(&o), 2);
    assert_eq!(json_lines(&o)[0]["undecided"], true);
}

#[test]
fn errors_exit_1() {
    assert_eq!(code(&deming(&["frobnicate"], "")), 1);
    assert_eq!(code(&deming(&["ke"], "not a graph\n")), 1);
    assert_eq!(code(&deming(&["gen", "k4-subdivision", "1", "1"], "")), 1);
    assert_eq!(code(&deming(&["gen", "blossom-pair", "4", "3", "1"], "")), 1);
    assert_eq!(code(&deming(&["egervary"], "n 3\n0 1\n1 2\n")), 1);
    assert_eq!(code(&deming(&["conjectures", "--state", "/nonexistent/dir/s.json", "--random", "2:6:0.5:1:3"], "")), 1);
    assert_eq!(code(&deming(&["conjectures", "--state", "x.json", "--random", "2:6"], "")), 1);
    assert_eq!(code(&deming(&["--help"], "")), 0);
}

#[test]
fn conjectures_resume_to_the_same_state() {
    let dir = tempfile::tempdir().unwrap();
    let state = dir.path().join("s.json");
    let st = state.to_str().unwrap();
    let spec = "2:8:0.4:11:40";
    let first = json_lines(&deming(&["conjectures", "--random", spec, "--state", st, "--limit", "15"], ""));
    assert_eq!(first[0]["complete"], false);
    assert_eq!(first[0]["cursor"], 15);
    let o = deming(&["conjectures", "--random", spec, "--state", st], "");
    assert_ne!(code(&o), 1);
    let resumed = json_lines(&o);
    assert_eq!(resumed[0]["complete"], true);

    let other = dir.path().join("t.json");
    let o = deming(&["conjectures", "--random", spec, "--state", other.to_str().unwrap()], "");
    let fresh = json_lines(&o);
    assert_eq!(resumed[0]["tallies"], fresh[0]["tallies"]);
    assert_eq!(resumed[0]["unexplained"], 0);

    // a different corpus cannot resume this state
    let o = deming(&["conjectures", "--random", "2:8:0.4:12:40", "--state", st], "");
    assert_eq!(code(&o), 1);
}
