use std::io::Write as _;
use std::process::{Command, Output, Stdio};

use exact3::io::write_edge_list;
use exact3::*;
use serde_json::Value;
use tempfile::TempDir;

fn exe() -> Command {
    Command::new(env!("CARGO_BIN_EXE_exact3"))
}

fn run(args: &[&str]) -> Output {
    exe().args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = exe()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn graph_file(dir: &TempDir, name: &str, g: &Multigraph) -> String {
    write(dir, name, &write_edge_list(g))
}

#[test]
fn verify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let db = graph_file(&dir, "db", &families::dumbbell());
    let o = run(&["verify", &db]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "EXACT k=3\n");

    let c4 = graph_file(&dir, "c4", &families::cycle(4));
    let o = run(&["verify", &c4]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("= 2"));
    let v = json(&run(&["--json", "verify", &c4]));
    assert_eq!(v["result"]["witness"]["lambda"], 2);

    let bad = write(&dir, "bad", "2 1\na b\n");
    let o = run(&["verify", &bad]);
    assert_eq!(o.status.code(), Some(2));
    let v = json(&run(&["--json", "verify", &bad]));
    assert_eq!(v["error"]["kind"], "parse");
    assert_eq!(v["error"]["line"], 2);

    let o = run(&["verify", &c4, "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn decompose_k4_and_thick_path() {
    let dir = TempDir::new().unwrap();
    let k4 = graph_file(&dir, "k4", &families::complete(4));
    let script = stdout(&run(&["decompose", &k4]));
    let records: Vec<&str> = script.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(records.len(), 2);
    assert!(records[0].starts_with("DUMBBELL"));
    assert!(records[1].starts_with("EXPAND"));

    let path = graph_file(&dir, "path", &families::thick_path(3));
    let script = stdout(&run(&["decompose", &path]));
    assert!(script.lines().any(|l| l.starts_with("GLUE")));
    assert!(!script.contains("EXPAND"));

    let c4 = graph_file(&dir, "c4", &families::cycle(4));
    let o = run(&["decompose", &c4]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("lambda"));
}

#[test]
fn pipeline_roundtrips_the_corpus() {
    let dir = TempDir::new().unwrap();
    let corpus = enumerate(&EnumerationQuery::new(6).stream()).unwrap();
    for (i, g) in corpus.graphs.iter().enumerate().step_by(7) {
        let m = g.code.to_multigraph();
        let f = graph_file(&dir, &format!("g{i}"), &m);
        let script = run(&["decompose", &f]);
        assert_eq!(script.status.code(), Some(0));
        let rebuilt = run_stdin(&["replay", "-"], &stdout(&script));
        assert_eq!(rebuilt.status.code(), Some(0));
        let back = io::parse_edge_list(&stdout(&rebuilt)).unwrap();
        assert!(is_isomorphic(&back, &m));
        let verified = run_stdin(&["verify", "-"], &stdout(&rebuilt));
        assert_eq!(verified.status.code(), Some(0));
    }
}

#[test]
fn enumerate_counts_and_streams() {
    let o = run(&["enumerate", "--max-n", "4", "--simple", "--biconnected", "--count-only"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "4\t1"));

    let o = run(&["enumerate", "--max-n", "6", "--minimum"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(!text.is_empty());
    for line in text.lines() {
        let cols: Vec<&str> = line.split('\t').collect();
        assert_eq!(cols.len(), 3);
        let n: u32 = cols[0].parse().unwrap();
        let m: u32 = cols[2].split(',').map(|e| e.split(' ').nth(2).unwrap().parse::<u32>().unwrap()).sum();
        assert_eq!(m, (3 * n).div_ceil(2));
    }
    assert!(String::from_utf8_lossy(&o.stderr).contains("6\t"));
}

#[test]
fn enumerate_is_deterministic_across_jobs() {
    let a = run(&["enumerate", "--max-n", "7", "--jobs", "1"]);
    let b = run(&["enumerate", "--max-n", "7", "--jobs", "3"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stderr, b.stderr);
}

#[test]
fn budget_exit_status() {
    let o = run(&["enumerate", "--max-n", "10", "--max-classes", "20", "--count-only"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).starts_with("2\t1"));
    let v = json(&run(&["--json", "enumerate", "--max-n", "10", "--max-classes", "20"]));
    assert_eq!(v["exit_code"], 3);
    assert_eq!(v["result"]["complete"], false);
}

#[test]
fn glue_expand_export() {
    let dir = TempDir::new().unwrap();
    let k4 = graph_file(&dir, "k4", &families::complete(4));
    let v = json(&run(&["--json", "glue", &k4, &k4, "--u1", "0", "--u2", "1"]));
    assert_eq!(v["result"]["order"], 7);
    assert_eq!(v["result"]["exact"], true);

    let v = json(&run(&["--json", "glue", &k4, &k4, "--mode", "vertex", "--u1", "0", "--u2", "0"]));
    assert_eq!(v["result"]["order"], 6);
    assert_eq!(v["result"]["exact"], true);

    let v = json(&run(&["--json", "glue", &k4, "--mode", "bridge", "--u1", "2"]));
    assert_eq!(v["result"]["order"], 5);
    assert_eq!(v["result"]["exact"], true);

    let o = run(&["expand", &k4, "--vertex", "0", "--size", "3", "--assignment", "1,2,3"]);
    let g = io::parse_edge_list(&stdout(&o)).unwrap();
    assert_eq!(g.order(), 6);
    assert!(is_exactly_k(&g, 3).unwrap().exact);
    let o = run(&["expand", &k4, "--vertex", "0", "--size", "3", "--assignment", "1,2"]);
    assert_eq!(o.status.code(), Some(2));

    assert_eq!(stdout(&run(&["export", &k4, "--to", "graph6"])), "C~\n");
    let dot = stdout(&run(&["export", &k4, "--to", "dot"]));
    assert!(dot.starts_with("graph G {"));
    let g6 = write(&dir, "pet.g6", "IheA@GUAo\n");
    let o = run(&["verify", &g6]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn json_schema_is_uniform() {
    let dir = TempDir::new().unwrap();
    let k4 = graph_file(&dir, "k4", &families::complete(4));
    let script = write(&dir, "s", "DUMBBELL 0\nEXPAND 0 0 3 1,1,1\n");
    let cases: Vec<Vec<&str>> = vec![
        vec!["verify", &k4],
        vec!["decompose", &k4],
        vec!["replay", &script, "--embedding"],
        vec!["enumerate", "--max-n", "4"],
        vec!["expand", &k4, "--vertex", "1", "--size", "2", "--assignment", "0,2,3"],
        vec!["glue", &k4, &k4, "--u1", "0", "--u2", "0"],
        vec!["export", &k4],
        vec!["verify", "/nonexistent/file"],
    ];
    for args in cases {
        let mut full = vec!["--json"];
        full.extend(args.iter());
        let v = json(&run(&full));
        let obj = v.as_object().unwrap();
        let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        keys.sort();
        assert_eq!(keys, ["command", "error", "exit_code", "ok", "result"], "{args:?}");
        assert_eq!(v["command"], args[0]);
        assert_eq!(v["ok"], v["exit_code"] == 0);
        if v["ok"] == true {
            assert!(v["error"].is_null());
        }
    }
}

#[test]
fn replay_reports_bad_records() {
    let dir = TempDir::new().unwrap();
    let script = write(&dir, "s", "DUMBBELL 0\nEXPAND 0 0 2 1,2,1\n");
    let o = run(&["replay", &script]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("record 2"));

    let script = write(&dir, "p", "DUMBBELL 0\nEXPAND 0 0 3 1,1,1\nEXPAND 0 0 3 2,1,3\n");
    let o = run(&["replay", &script, "--embedding"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("record 3"));
}
