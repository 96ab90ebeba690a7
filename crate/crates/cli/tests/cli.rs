use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn grundy(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_grundy"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn one(out: &Output) -> Value {
    let mut v = lines(out);
    assert_eq!(v.len(), 1, "{}", String::from_utf8_lossy(&out.stdout));
    v.pop().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

/// Splits a command line produced by the tool (single-quoted words only).
fn split_words(s: &str) -> Vec<String> {
    let mut words = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    let mut any = false;
    for c in s.chars() {
        match c {
            '\'' => {
                quoted = !quoted;
                any = true;
            }
            ' ' if !quoted => {
                if any || !cur.is_empty() {
                    words.push(std::mem::take(&mut cur));
                }
                any = false;
            }
            _ => cur.push(c),
        }
    }
    if any || !cur.is_empty() {
        words.push(cur);
    }
    words
}

#[test]
fn solve_known_values() {
    let out = grundy(&["solve"], "Dhc\n");
    assert_eq!(code(&out), 0);
    let r = one(&out);
    assert_eq!(
        (r["gamma"].as_u64(), r["n"].as_u64(), r["exact"].as_bool()),
        (Some(4), Some(5), Some(true))
    );
    assert_eq!(r["variant"], "l");
    assert_eq!(r["graph6"], "Dhc");
    assert_eq!(one(&grundy(&["solve"], "Bw\n"))["gamma"], 2);
    assert_eq!(
        one(&grundy(&["solve", "--variant", "classic"], "Bw\n"))["gamma"],
        1
    );
    assert_eq!(
        one(&grundy(&["solve", "--variant", "total"], "Bw\n"))["gamma"],
        2
    );
}

#[test]
fn solve_mixed_stream_keeps_order_and_reports_bad_lines() {
    let out = grundy(
        &["solve", "--workers", "3"],
        "Bw\nnot-a-graph\n4 3\n0 1\n1 2\n2 3\nDhc\n",
    );
    assert_eq!(code(&out), 3);
    let recs = lines(&out);
    assert_eq!(recs.len(), 4);
    assert_eq!(recs[0]["gamma"], 2);
    assert_eq!(recs[1]["input"], "stdin:2");
    assert!(recs[1]["error"].as_str().unwrap().contains("graph6"));
    assert_eq!(
        (recs[2]["graph6"].as_str(), recs[2]["gamma"].as_u64()),
        (Some("Ch"), Some(4))
    );
    assert_eq!(recs[3]["gamma"], 4);
}

#[test]
fn solve_reads_files_and_writes_out() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    std::fs::write(&a, "# paths\n3 2\n0 1\n1 2\n").unwrap();
    std::fs::write(&b, "Bw\n").unwrap();
    let dest = dir.path().join("out.jsonl");
    let out = grundy(
        &[
            "solve",
            a.to_str().unwrap(),
            b.to_str().unwrap(),
            "--out",
            dest.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&dest).unwrap();
    let gammas: Vec<u64> = text
        .lines()
        .map(|l| {
            serde_json::from_str::<Value>(l).unwrap()["gamma"]
                .as_u64()
                .unwrap()
        })
        .collect();
    assert_eq!(gammas, vec![3, 2]);
}

#[test]
fn solve_budget_exhaustion_is_flagged() {
    let c9 = one(&grundy(&["generate", "--family", "cycle", "--n", "9"], ""));
    let g6 = c9["graph6"].as_str().unwrap().to_string();
    let out = grundy(&["solve", "--node-budget", "1"], &g6);
    assert_eq!(code(&out), 4);
    let r = one(&out);
    assert_eq!(r["exact"], false);
    assert!(r["gamma"].as_u64().unwrap() <= 8);
    let out = grundy(&["solve"], &g6);
    assert_eq!((code(&out), one(&out)["gamma"].as_u64()), (0, Some(8)));
}

#[test]
fn solve_csv_and_one_indexed() {
    let out = grundy(&["solve", "--format", "csv", "--one-indexed"], "Dhc\n");
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rows = text.lines();
    assert_eq!(
        rows.next(),
        Some("graph6,n,variant,gamma,witness,nodes_explored,elapsed_ms,exact")
    );
    let row: Vec<&str> = rows.next().unwrap().split(',').collect();
    assert_eq!(&row[..5], &["Dhc", "5", "l", "4", "1 2 4 3"]);
    assert_eq!(row[7], "true");
}

#[test]
fn solve_record_reruns_from_its_command() {
    let first = one(&grundy(
        &["solve", "--variant", "total", "--memo-cap", "10"],
        "Dhc\n",
    ));
    let words = split_words(first["command"].as_str().unwrap());
    assert_eq!(words[..2], ["grundy", "solve"]);
    let args: Vec<&str> = words[1..].iter().map(String::as_str).collect();
    let mut again = one(&grundy(&args, "Dhc\n"));
    let mut first = first;
    first["elapsed_ms"] = Value::Null;
    again["elapsed_ms"] = Value::Null;
    assert_eq!(first, again);
}

#[test]
fn verify_examples() {
    let out = grundy(&["verify", "Cx", "0 1 3 2"], "");
    assert_eq!(code(&out), 0);
    let r = one(&out);
    assert_eq!(
        (r["valid"].as_bool(), r["length"].as_u64()),
        (Some(true), Some(4))
    );
    assert_eq!(r["steps"][0]["footprinted"], serde_json::json!([0, 1, 2]));

    let out = grundy(&["verify", "Bw", "0", "1", "2"], "");
    assert_eq!(code(&out), 1);
    let r = one(&out);
    assert_eq!(r["valid"], false);
    assert_eq!(r["error"]["index"], 2);

    let out = grundy(&["verify", "Dhc", "0,0"], "");
    assert_eq!(code(&out), 1);
    assert!(one(&out)["error"]["reason"]
        .as_str()
        .unwrap()
        .contains("already"));

    let out = grundy(&["verify", "--one-indexed", "Cx", "1 2 4 3"], "");
    assert_eq!(code(&out), 0);
    assert_eq!(one(&out)["sequence"], serde_json::json!([1, 2, 4, 3]));
}

#[test]
fn verify_reads_edge_list_file_and_rejects_garbage() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("paw.txt");
    std::fs::write(&p, "4 4\n0 1\n0 2\n1 2\n2 3\n").unwrap();
    let out = grundy(
        &["verify", p.to_str().unwrap(), "0 1 3 2", "--format", "csv"],
        "",
    );
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("index,vertex,footprinted\n0,0,0 1 2\n"));
    assert!(text.ends_with("# valid, length 4\n"));
    assert_eq!(code(&grundy(&["verify", "B!", "0"], "")), 3);
    assert_eq!(code(&grundy(&["verify", "Bw", "x"], "")), 1);
}

#[test]
fn generate_examples() {
    for (family, flag, value, gamma, n) in [
        ("cycle-with-leaf", "--n", "5", 6, 6),
        ("clique-with-leaves", "--k", "4", 7, 7),
        ("double-cycle-bridge", "--n", "3", 5, 6),
        ("t-structure", "--k", "3", 6, 6),
    ] {
        let out = grundy(&["generate", "--family", family, flag, value], "");
        assert_eq!(code(&out), 0, "{family}");
        let r = one(&out);
        assert_eq!(r["expected_gamma"], gamma, "{family}");
        assert_eq!(r["n"], n, "{family}");
        assert_eq!(r["witness"].as_array().unwrap().len(), gamma, "{family}");
        let g6 = r["graph6"].as_str().unwrap();
        if family != "t-structure" {
            assert_eq!(one(&grundy(&["solve"], g6))["gamma"], gamma, "{family}");
        } else {
            assert_eq!(
                one(&grundy(&["solve", "--variant", "total"], g6))["gamma"],
                gamma
            );
        }
    }
    let r = one(&grundy(
        &["generate", "--family", "saturate", "--graph", "Dhc"],
        "",
    ));
    assert_eq!(r["expected_gamma"], 6);
    let r = one(&grundy(
        &["generate", "--family", "leaf-augment", "--graph", "C~"],
        "",
    ));
    assert_eq!(r["expected_gamma"], 8);
    assert_eq!(code(&grundy(&["generate", "--family", "cycle"], "")), 1);
    assert_eq!(
        code(&grundy(&["generate", "--family", "cycle", "--n", "2"], "")),
        1
    );
}

#[test]
fn check_exhaustive_five() {
    let dir = tempfile::tempdir().unwrap();
    let summary = dir.path().join("summary.csv");
    let out = grundy(
        &[
            "check",
            "--corpus",
            "exhaustive",
            "--n",
            "5",
            "--summary",
            summary.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(code(&out), 0);
    let csv = std::fs::read_to_string(&summary).unwrap();
    assert!(csv.starts_with("theorem_id,graphs_checked,passes,fails,inconclusive\n"));
    assert!(csv.contains("delta-bound,1024,1024,0,0\n"));
    assert!(csv.contains("edge-removal,1024,1024,0,0\n"));
    let reports = lines(&out);
    assert!(reports.iter().all(|r| r["verdict"] == "pass"));
    assert_eq!(
        reports
            .iter()
            .filter(|r| r["theorem_id"] == "vertex-removal")
            .count(),
        1024
    );
}

#[test]
fn check_random_edge_removal_csv() {
    let out = grundy(
        &[
            "check",
            "--corpus",
            "random",
            "--suite",
            "edge-removal",
            "--per-cell",
            "5",
            "--format",
            "csv",
        ],
        "",
    );
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text,
        "theorem_id,graphs_checked,passes,fails,inconclusive\nedge-removal,90,90,0,0\n"
    );
}

#[test]
fn check_examples_flags_only_the_prism_claim() {
    let out = grundy(&["check", "--corpus", "examples", "--keep-going"], "");
    assert_eq!(code(&out), 5);
    let fails: Vec<Value> = lines(&out)
        .into_iter()
        .filter(|r| r["verdict"] == "fail")
        .collect();
    assert_eq!(fails.len(), 1);
    assert_eq!(fails[0]["theorem_id"], "worked-example");
    assert_eq!(fails[0]["observed"]["name"], "K4 x K2");
    assert_eq!(fails[0]["observed"]["gamma"], 5);
}

#[test]
fn check_is_deterministic_across_workers() {
    let strip = |out: Output| -> Vec<Value> {
        lines(&out)
            .into_iter()
            .map(|mut r| {
                r["elapsed_ms"] = Value::Null;
                r
            })
            .collect()
    };
    let args = [
        "check",
        "--corpus",
        "random",
        "--per-cell",
        "2",
        "--n-max",
        "9",
        "--seed",
        "7",
    ];
    let a = strip(grundy(&[&args[..], &["--workers", "1"]].concat(), ""));
    let b = strip(grundy(&[&args[..], &["--workers", "4"]].concat(), ""));
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn search_is_reproducible_and_in_range() {
    let args = [
        "search",
        "--target",
        "edge-deltas",
        "--seed",
        "1",
        "--steps",
        "1000",
    ];
    let a = grundy(&args, "");
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, grundy(&args, "").stdout);
    let r = one(&a);
    assert_eq!(r["steps"], 1000);
    let observed: Vec<i64> = serde_json::from_value(r["observed"].clone()).unwrap();
    assert!(observed.iter().all(|d| (-1..=2).contains(d)));

    let words = split_words(r["command"].as_str().unwrap());
    let rerun: Vec<&str> = words[1..].iter().map(String::as_str).collect();
    assert_eq!(grundy(&rerun, "").stdout, a.stdout);

    let r = one(&grundy(
        &["search", "--target", "vertex-deltas", "--steps", "300"],
        "",
    ));
    let observed: Vec<i64> = serde_json::from_value(r["observed"].clone()).unwrap();
    assert!(observed.iter().all(|d| (-2..=0).contains(d)));
}

#[test]
fn search_from_seed_graph() {
    let g = one(&grundy(
        &["generate", "--family", "cycle-with-leaf", "--n", "5"],
        "",
    ));
    let g6 = g["graph6"].as_str().unwrap();
    let r = one(&grundy(
        &[
            "search",
            "--target",
            "vertex-deltas",
            "--seed-graph",
            g6,
            "--steps",
            "20",
        ],
        "",
    ));
    let seed: Vec<i64> = serde_json::from_value(r["seed_realized"].clone()).unwrap();
    assert!(seed.contains(&-2));
}

#[test]
fn logging_and_config_echo() {
    let out = Command::new(env!("CARGO_BIN_EXE_grundy"))
        .args(["check", "--n", "3", "--echo-config", "--seed", "9"])
        .env("GRUNDY_LOG", "info")
        .output()
        .unwrap();
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("--variant l --memo-cap 24 --seed 9 --workers 0 --format json"));
    assert!(err.contains("grundy check --corpus exhaustive"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&grundy(&["solve", "--variant", "bogus"], "")), 2);
    assert_eq!(code(&grundy(&["frobnicate"], "")), 2);
}
