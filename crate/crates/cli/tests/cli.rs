use std::path::Path;
use std::process::{Command, Output};

use finegrain::io;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finegrain"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_then_solve_planted() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("planted.ov");
    let o = run(&[
        "gen", "--family", "planted-orthogonal", "--n", "4", "--d", "4", "--seed", "7", "--out",
        path_str(&inst),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&inst).unwrap();
    assert!(text.starts_with("# finegrain gen family=planted-orthogonal n=4 d=4 seed=7"));
    assert!(text.lines().nth(1).unwrap() == "4 4 4");

    let o = run(&["solve", "ov", path_str(&inst)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("yes "), "{}", stdout(&o));

    let o = run(&["solve", "ov", path_str(&inst), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["orthogonal"], true);
}

#[test]
fn gen_is_deterministic() {
    let args = ["gen", "--family", "no-orthogonal", "--n", "6", "--d", "5", "--seed", "3"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn reduce_and_solve_agree() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("i.ov");
    std::fs::write(&inst, "2 2 3\n1 0 1\n1 1 0\n0 1 0\n1 1 1\n").unwrap();
    let prefix = dir.path().join("r");
    let p = path_str(&prefix);

    let o = run(&["reduce", "ov-to-bcp", path_str(&inst), "--out", p]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("tau_sq 3/1"));
    let o = run(&["solve", "bcp-euclid", &format!("{p}.P.points"), &format!("{p}.Q.points")]);
    assert_eq!(stdout(&o).trim(), "p=1 q=1 sq_value 3/1");

    let o = run(&["reduce", "ov-to-frechet", path_str(&inst), "--out", p]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let pi = io::load_curve(format!("{p}.pi.curve")).unwrap();
    let sigma = io::load_curve(format!("{p}.sigma.curve")).unwrap();
    assert_eq!(pi.len(), 2 * 5);
    assert_eq!(sigma.len(), 2 * 3 + 4);
    let o = run(&["solve", "frechet", &format!("{p}.pi.curve"), &format!("{p}.sigma.curve")]);
    let first = stdout(&o).lines().next().unwrap().to_string();
    let v: finegrain::Rat = first.strip_prefix("sq_value ").unwrap().parse().unwrap();
    assert!(v <= finegrain::Rat::one());

    let o = run(&["reduce", "frechet-embed", path_str(&inst), "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["solve", "bcp-frechet", &format!("{p}.P.curves"), &format!("{p}.Q.curves")]);
    assert_eq!(stdout(&o).trim(), "p=1 q=1 sq_value 1/1");
}

#[test]
fn reduce_needs_prefix() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("i.ov");
    std::fs::write(&inst, "1 1 1\n1\n0\n").unwrap();
    assert_eq!(run(&["reduce", "ov-to-bcp", path_str(&inst)]).status.code(), Some(2));
}

#[test]
fn nn_queries_linear_and_kdtree_match() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("data.points");
    let queries = dir.path().join("q.points");
    std::fs::write(&data, "3 2\n0/1 0/1\n1/1 0/1\n0/1 1/1\n").unwrap();
    std::fs::write(&queries, "2 2\n9/10 0/1\n1/2 1/2\n").unwrap();
    let a = run(&["solve", "nn", "--metric", "euclid-kdtree", path_str(&data), path_str(&queries)]);
    let b = run(&["solve", "nn", "--metric", "euclid-linear", path_str(&data), path_str(&queries)]);
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a).lines().next().unwrap(), "1 2 1/100");
}

#[test]
fn verify_small_sweep_passes() {
    let o = run(&["verify", "--trials", "40"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    for kind in ["euclid-embed", "frechet-embed", "ov-to-bcp", "ov-to-frechet", "unbalanced-nn"] {
        assert!(out.contains(kind), "{out}");
    }
}

#[test]
fn verify_corrupt_hook_exits_one() {
    let o = run(&["verify", "--kinds", "ov-to-bcp", "--trials", "30", "--corrupt"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("disagreement ov-to-bcp"));
}

#[test]
fn verify_empty_kinds_exits_zero_with_empty_table() {
    let o = run(&["verify", "--kinds", ""]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1, "only the header row");

    let o = run(&["verify", "--kinds", "", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kinds"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_refuses_bad_delta() {
    let o = run(&["verify", "--kinds", "ov-to-frechet", "--delta", "1/4", "--trials", "50"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("failed validation"));
}

#[test]
fn bench_header_only_and_rows() {
    let o = run(&["bench", "ov", "--sizes", "4,8", "--repeats", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "problem,n,d,seed,repeat,wall_ns,answer\n");

    let o = run(&["bench", "bcp-euclid", "--sizes", "2,4,8", "--repeats", "2", "--d", "5"]);
    let rows = finegrain::bench::read_csv(o.stdout.as_slice()).unwrap();
    assert_eq!(rows.len(), 6);
    for r in rows {
        let v: finegrain::Rat = r.answer.parse().unwrap();
        assert!(v == finegrain::Rat::from_int(5) || v >= finegrain::Rat::from_int(13));
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["bench", "ov", "--sizes", "8,4"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "ov", "/nonexistent/file"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "--family", "zipf", "--n", "2", "--d", "2"]).status.code(), Some(2));
}
