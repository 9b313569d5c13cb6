use std::path::Path;
use std::process::{Command, Output};

fn realgw(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_realgw"));
    cmd.args(args).env_remove("REALGW_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("REALGW_CACHE_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn run_ok(args: &[&str]) -> String {
    let o = realgw(args, None);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

#[test]
fn compute_prints_exact_values() {
    assert_eq!(run_ok(&["compute", "--M", "2", "--d", "3", "--phi", "tau", "--t", "3,3,3"]), "-1\n");
    assert_eq!(run_ok(&["compute", "--M", "2", "--d", "1", "--phi", "tau", "--t", "3"]), "1\n");
    assert_eq!(run_ok(&["compute", "--M", "2", "--d", "1", "--phi", "eta", "--t", "3"]), "-1\n");
    assert_eq!(run_ok(&["compute", "--M", "2", "--d", "2", "--phi", "tau", "--t", "1,5"]), "0\n");
    assert_eq!(run_ok(&["compute", "--M", "4", "--d", "1", "--phi", "tau", "--t", "7,1"]), "1\n");
    assert_eq!(
        run_ok(&["compute", "--M", "2", "--d", "1", "--phi", "tau", "--t", "3,1", "--reduced"]),
        "1\n"
    );
    assert_eq!(
        run_ok(&["--symbolic", "compute", "--M", "2", "--d", "1", "--phi", "tau", "--t", "1,1,3"]),
        "1\n"
    );
}

#[test]
fn dimension_mismatch_is_zero_with_a_note() {
    let o = realgw(&["compute", "--M", "2", "--d", "1", "--phi", "tau", "--t", "7"], None);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0\n");
    assert!(!o.stderr.is_empty());
}

#[test]
fn usage_errors_exit_with_two() {
    let odd_rank = realgw(&["compute", "--M", "3", "--d", "1", "--phi", "tau", "--t", "5"], None);
    assert_eq!(odd_rank.status.code(), Some(2));
    let too_few = realgw(&["--samples", "1", "compute", "--M", "2", "--d", "1", "--phi", "tau", "--t", "3"], None);
    assert_eq!(too_few.status.code(), Some(2));
    let bad_phi = realgw(&["compute", "--M", "2", "--d", "1", "--phi", "sigma", "--t", "3"], None);
    assert_eq!(bad_phi.status.code(), Some(2));
    let symbolic_large = realgw(&["--symbolic", "compute", "--M", "2", "--d", "5", "--phi", "tau", "--t", "3,3,3,3,3"], None);
    assert_eq!(symbolic_large.status.code(), Some(2));
}

#[test]
fn odd_rank_runs_with_general_parity() {
    assert_eq!(
        run_ok(&["--general-parity", "compute", "--M", "3", "--d", "1", "--phi", "tau", "--t", "5"]),
        "1\n"
    );
}

#[test]
fn compute_json_round_trips() {
    let out = run_ok(&["--json", "compute", "--M", "2", "--d", "3", "--phi", "tau", "--t", "3,3,3"]);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["value"], serde_json::json!({"num": "-1", "den": "1"}));
    let r: realgw::localizer::InvariantResult = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(serde_json::to_string(&r).unwrap(), out.trim());
    assert_eq!(r.points.len(), 3);
}

#[test]
fn output_is_reproducible() {
    let args = ["--json", "--seed", "17", "compute", "--M", "2", "--d", "3", "--phi", "eta", "--t", "1,3,5"];
    assert_eq!(run_ok(&args), run_ok(&args));
}

#[test]
fn table_lists_odd_insertions() {
    let out = run_ok(&["table", "--M", "2", "--phi", "tau", "--dmax", "1", "--lmax", "2"]);
    assert_eq!(out, "d,t,value\n1,\"1,3\",1\n1,\"3\",1\n1,\"3,1\",1\n");
    let empty = run_ok(&["table", "--M", "2", "--phi", "tau", "--dmax", "0", "--lmax", "2"]);
    assert_eq!(empty, "d,t,value\n");
}

#[test]
fn graphs_dump_the_census() {
    let args = ["graphs", "--M", "2", "--d", "1", "--l", "1", "--phi", "tau", "--c", "tau"];
    let plus: serde_json::Value = serde_json::from_str(&run_ok(&[&args[..], &["--plus-only"]].concat())).unwrap();
    assert_eq!(plus.as_array().unwrap().len(), 4);
    for g in plus.as_array().unwrap() {
        assert_eq!(g["d0"], 1);
        assert!(g["contribution"].is_null());
    }
    let all: serde_json::Value = serde_json::from_str(&run_ok(&args)).unwrap();
    assert_eq!(all.as_array().unwrap().len(), 8);
    let empty = run_ok(&["graphs", "--M", "1", "--d", "2", "--phi", "eta", "--c", "eta"]);
    assert_eq!(serde_json::from_str::<serde_json::Value>(&empty).unwrap(), serde_json::json!([]));
}

#[test]
fn graph_contributions_are_rationals() {
    let out = run_ok(&[
        "graphs", "--M", "2", "--d", "1", "--phi", "tau", "--c", "tau", "--t", "3", "--contributions",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for g in v.as_array().unwrap() {
        let c: realgw::exactmath::Rational = serde_json::from_value(g["contribution"].clone()).unwrap();
        assert!(!c.is_zero());
    }
}

#[test]
fn cached_census_output_is_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["graphs", "--M", "2", "--d", "3", "--l", "1", "--phi", "tau", "--c", "tau"];
    let first = realgw(&args, Some(dir.path()));
    assert!(first.status.success());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let second = realgw(&args, Some(dir.path()));
    assert!(second.status.success());
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stdout, realgw(&args, None).stdout);
}

#[test]
fn verify_reports_every_criterion() {
    let out = run_ok(&["--json", "verify", "--skip-slow"]);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    let records = v.as_array().unwrap();
    assert_eq!(records.len(), 13);
    for (i, r) in records.iter().enumerate() {
        assert_eq!(r["id"], i as u64 + 1);
        assert_ne!(r["outcome"], "fail", "{r}");
    }
}

#[test]
fn verify_catches_the_misread_edge_range() {
    let o = realgw(&["verify", "--skip-slow", "--edge-k-range", "exclude-conjugates"], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}
