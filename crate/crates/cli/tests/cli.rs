use std::path::{Path, PathBuf};
use std::process::Command as Process;

use btugirth::btu::io::{read_alist, read_dimacs};
use btugirth::girth_bfs;
use btugirth_cli::{parse_args, run};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(name)
}

fn run_args(argv: &[&str]) -> anyhow::Result<String> {
    let cmd = parse_args(argv.iter().copied())?;
    let mut out = Vec::new();
    run(&cmd, &mut out)?;
    Ok(String::from_utf8(out)?)
}

fn bin() -> Process {
    let mut p = Process::new(env!("CARGO_BIN_EXE_btugirth"));
    p.env_remove("BTUGIRTH_JOBS");
    p
}

#[test]
fn bound_tables_match_goldens() {
    for n in 2..=5 {
        let golden = std::fs::read_to_string(fixture(&format!("golden/table_{n}.txt"))).unwrap();
        let first = run_args(&["bounds", "--table", &n.to_string()]).unwrap();
        assert_eq!(first, golden, "table {n}");
        assert_eq!(run_args(&["bounds", "--table", &n.to_string()]).unwrap(), first);
    }
}

#[test]
fn tables_command_prints_selected_tables() {
    let text = run_args(&["tables", "--which", "4,2"]).unwrap();
    let t2 = std::fs::read_to_string(fixture("golden/table_2.txt")).unwrap();
    let t4 = std::fs::read_to_string(fixture("golden/table_4.txt")).unwrap();
    assert_eq!(text, format!("table 2\n{t2}\ntable 4\n{t4}"));
}

#[test]
fn tables_command_recomputes_table_1() {
    let text = run_args(&["tables", "--which", "1", "--max-k", "6", "--jobs", "2"]).unwrap();
    assert_eq!(text, "table 1\nk  m   r  g\n5  25  3  8\n6  36  3  8\n");
}

#[test]
fn table_1_flags_rows_below_published() {
    let text = run_args(&["tables", "--which", "1", "--max-k", "5", "--strategy", "block", "--kv"]).unwrap();
    assert!(text.contains("g: 6\nnote: differs from published 8 (block)\n"), "{text}");
}

#[test]
fn search_reports_table_1_girth() {
    let text = run_args(&["search", "--k", "5", "--jobs", "1"]).unwrap();
    assert!(text.contains("best_girth: 8\n"), "{text}");
    let json = run_args(&["search", "--k", "5", "--jobs", "1", "--report", "json"]).unwrap();
    assert!(json.contains("\"best_girth\": 8"), "{json}");
}

#[test]
fn search_report_independent_of_jobs() {
    let strip = |s: String| s.lines().filter(|l| !l.starts_with("elapsed_ms")).collect::<Vec<_>>().join("\n");
    let one = strip(run_args(&["search", "--k", "6", "--jobs", "1"]).unwrap());
    let four = strip(run_args(&["search", "--k", "6", "--jobs", "4"]).unwrap());
    assert_eq!(one, four);
}

#[test]
fn search_writes_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("best.alist");
    run_args(&["search", "--k", "5", "--jobs", "1", "--out", path.to_str().unwrap()]).unwrap();
    let girth = run_args(&["girth", "--in", path.to_str().unwrap()]).unwrap();
    assert_eq!(girth, "girth: 8\n");
}

#[test]
fn girth_of_heawood_fixture() {
    let path = fixture("fixtures/heawood.alist");
    assert_eq!(run_args(&["girth", "--in", path.to_str().unwrap()]).unwrap(), "girth: 6\n");
}

#[test]
fn convert_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let src = fixture("fixtures/heawood.alist");
    let direct = girth_bfs(&read_alist(&std::fs::read_to_string(&src).unwrap()).unwrap().to_bipartite(), None);

    let dimacs = dir.path().join("h.dimacs");
    run_args(&["convert", "--in", src.to_str().unwrap(), "--out", dimacs.to_str().unwrap()]).unwrap();
    let g = read_dimacs(&std::fs::read_to_string(&dimacs).unwrap()).unwrap();
    assert_eq!(girth_bfs(&g, None).value, direct.value);

    let dense = dir.path().join("h.txt");
    run_args(&[
        "convert", "--in", dimacs.to_str().unwrap(), "--out", dense.to_str().unwrap(), "--to", "dense",
    ])
    .unwrap();
    let back = dir.path().join("back.alist");
    run_args(&[
        "convert", "--in", dense.to_str().unwrap(), "--from", "dense", "--out", back.to_str().unwrap(),
    ])
    .unwrap();
    assert_eq!(std::fs::read_to_string(back).unwrap(), std::fs::read_to_string(src).unwrap());
}

#[test]
fn binary_exit_codes() {
    let ok = bin().args(["bounds", "--table", "2"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(ok.stdout).unwrap(),
        std::fs::read_to_string(fixture("golden/table_2.txt")).unwrap()
    );

    let usage = bin().args(["search", "--k", "0"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&usage.stderr).contains("--k"));

    let missing = bin().args(["girth", "--in", "/definitely/not/here.alist"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(1));
    assert!(missing.stdout.is_empty());

    // m = 4 has no shift strictly between b·k and m - b·k
    let no_shift = bin().args(["search", "--k", "2", "--jobs", "1"]).output().unwrap();
    assert_eq!(no_shift.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&no_shift.stderr).contains("shift"));
}

#[test]
fn malformed_alist_is_a_runtime_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.alist");
    std::fs::write(&path, "3 3\n2 2\n2 2\n").unwrap();
    let out = bin().args(["girth", "--in", path.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("alist"));
}

#[test]
fn jobs_env_is_read() {
    let out = bin()
        .env("BTUGIRTH_JOBS", "0")
        .args(["search", "--k", "5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
