use std::process::Command;

use charvar::config::{block_panel, LambdaPolicy, RunConfig};
use charvar::report::{Grade, Verdict};
use charvar::verify::{verify, Scope};
use charvar_core::CountEngine;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_charvar"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn verify_blocks_through_the_library() {
    let cfg = RunConfig {
        primes: block_panel(),
        ..RunConfig::default()
    };
    let report = verify(&cfg, Scope::Blocks, &mut CountEngine::default()).unwrap();
    let verdict = |id: &str| {
        report
            .targets
            .iter()
            .find(|t| t.id == id)
            .unwrap()
            .verdict
            .clone()
            .unwrap()
    };
    for id in [
        "size:W2",
        "size:W4(lambda)",
        "X0",
        "X1",
        "X2_bar",
        "X2",
        "derive:J+J+",
        "derive:xixi-equal",
    ] {
        assert_eq!(verdict(id), Verdict::Match, "{id}");
    }
    // The J- fiber and the diagonal fibers are not polynomial on this panel.
    for id in ["X3_bar", "X3", "X4", "X4_lambda_bar", "X4_lambda"] {
        assert_eq!(verdict(id), Verdict::Mismatch, "{id}");
    }
    assert!(report.identities.iter().all(|i| i.pass));
    assert!(
        report
            .targets
            .iter()
            .filter(|t| t.grade == Grade::MustMatch)
            .count()
            >= 20
    );
    assert_eq!(report.summary.exit_code, 1);
}

#[test]
fn reports_are_deterministic_across_runs_and_thread_counts() {
    let cfg = RunConfig {
        primes: vec![5, 7, 11, 13, 17, 19, 23],
        lambdas: LambdaPolicy::Explicit(vec![2, 3]),
        ..RunConfig::default()
    };
    let once = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| {
            verify(&cfg, Scope::Zbar, &mut CountEngine::default())
                .unwrap()
                .to_json()
        })
    };
    let a = once(1);
    assert_eq!(a, once(1));
    assert_eq!(a, once(4));
}

#[test]
fn cache_directory_is_used_and_harmless() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = [
        "count",
        "zbar22",
        "fiber:J-",
        "--primes",
        "5,7",
        "--format",
        "json",
        "--cache-dir",
        d,
    ];
    let (code, first, _) = run(&args);
    assert_eq!(code, 0);
    assert!(dir.path().join("classdist-p7.json").exists());
    let (_, second, _) = run(&args);
    assert_eq!(first, second);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["blocks"]).0, 0);
    assert_eq!(run(&["derive", "J+xi"]).0, 0);
    let (code, _, err) = run(&["derive", "nonsense"]);
    assert_eq!(code, 2, "{err}");
    assert_eq!(run(&["count", "fiber:J+", "--primes", "9"]).0, 2);
    assert_eq!(run(&["count", "fiber:Q", "--primes", "5"]).0, 2);
    assert_eq!(
        run(&["count", "fiber:J+", "--primes", "5", "--threads", "0"]).0,
        2
    );
    // too few primes for the fit, and p = 3 in a verification panel
    assert_eq!(run(&["verify", "blocks", "--primes", "5,7,11"]).0, 2);
    assert_eq!(run(&["verify", "blocks", "--primes", "3..31"]).0, 2);
    assert_eq!(run(&["no-such-command"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
    // must-match mismatches exit 1
    assert_eq!(run(&["verify", "blocks"]).0, 1);
}

#[test]
fn count_outputs() {
    let (code, out, _) = run(&[
        "count",
        "xstratum:W4(all)",
        "--primes",
        "3,5",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let recs = v["targets"][0]["records"].as_array().unwrap();
    assert_eq!(recs[0]["p"], 3);
    assert_eq!(recs[0]["count"], serde_json::Value::Null);
    assert!(recs[0]["skipped"].as_str().unwrap().contains("p=3"));
    assert_eq!(recs[1]["target"], "xstratum:W4(2)");

    let (code, out, _) = run(&[
        "count", "fiber:J+", "--primes", "5", "--method", "both", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        out.lines().nth(1).unwrap(),
        "fiber:J+,warning,5,fiber:J+,60,fast,,,"
    );
    assert_eq!(
        out.lines().nth(2).unwrap(),
        "fiber:J+,warning,5,fiber:J+,60,brute,,,"
    );
}

#[test]
fn hodge_and_probe() {
    let (code, out, _) = run(&["hodge", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["count"], 18);
    let (_, out, _) = run(&["hodge", "--no-weight-bound"]);
    assert!(out.contains("warning: weight bound"));
    let (code, _, _) = run(&["hodge", "--e", "q^4+", "--poincare", "1"]);
    assert_eq!(code, 2);

    let (code, out, _) = run(&["probe", "--primes", "5", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().nth(1).unwrap(), "5,128,128,316,true");
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("blocks.csv");
    let (code, out, _) = run(&[
        "blocks",
        "--format",
        "csv",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert!(std::fs::read_to_string(path)
        .unwrap()
        .starts_with("name,polynomial\n"));
}
