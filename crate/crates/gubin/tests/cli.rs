use std::fs;
use std::path::{Path, PathBuf};

use gubin::cli::{replay_report, run, EXIT_ERROR, EXIT_FIXTURE_FAILED, EXIT_OK, EXIT_SAT, EXIT_UNSAT};
use gubin::corpus::Corpus;
use gubin::dimacs::parse_dimacs;
use gubin::fixtures::golden_fixtures;
use gubin::trace::TraceDocument;
use serde_json::Value;
use tempfile::TempDir;

const COUNTEREXAMPLE: &str = "p cnf 3 4\n1 2 3 0\n-1 0\n-2 0\n-3 0\n";
const WALKTHROUGH: &str = "p cnf 2 4\n-1 2 0\n1 -2 0\n1 2 0\n-1 -2 0\n";
const SAMPLE_3SAT: &str = "p cnf 3 4\n1 2 3 0\n-1 2 -3 0\n1 -2 3 0\n-1 -2 -3 0\n";

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn gubin(args: &[&str]) -> Run {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(
        std::iter::once("gubin").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gubin_verdicts_and_exit_codes() {
    let d = tempfile::tempdir().unwrap();
    let ce = write(&d, "ce.cnf", COUNTEREXAMPLE);
    let w = write(&d, "w.cnf", WALKTHROUGH);
    let r = gubin(&["gubin", s(&ce)]);
    assert_eq!((r.code, r.out.as_str()), (EXIT_SAT, "SAT\n"));
    let r = gubin(&["gubin", s(&w), "--mode", "full"]);
    assert_eq!((r.code, r.out.as_str()), (EXIT_UNSAT, "UNSAT\n"));
}

#[test]
fn malformed_input_exits_2() {
    let d = tempfile::tempdir().unwrap();
    let bad = write(&d, "bad.cnf", "p cnf 2 1\n1 x 0\n");
    let r = gubin(&["gubin", s(&bad)]);
    assert_eq!(r.code, EXIT_ERROR);
    assert!(r.err.contains("invalid literal"), "{}", r.err);
    assert_eq!(gubin(&["gubin", "/no/such/file.cnf"]).code, EXIT_ERROR);
    assert_eq!(gubin(&["frobnicate"]).code, EXIT_ERROR);
    assert_eq!(gubin(&["gubin", s(&bad), "--mode", "sideways"]).code, EXIT_ERROR);
    assert_eq!(gubin(&["--help"]).code, EXIT_OK);
}

#[test]
fn trace_file_has_documented_fields() {
    let d = tempfile::tempdir().unwrap();
    let w = write(&d, "w.cnf", WALKTHROUGH);
    let t = d.path().join("trace.json");
    assert_eq!(gubin(&["gubin", s(&w), "--trace", s(&t)]).code, EXIT_UNSAT);
    let doc: TraceDocument = serde_json::from_str(&fs::read_to_string(&t).unwrap()).unwrap();
    assert_eq!(doc.row_order, "binary-msb-first");
    assert_eq!(doc.verdict, "UNSAT");
    assert_eq!(doc.first_zero_matrix, Some([3, 4]));
    assert_eq!(doc.clauses[0], vec![-1, 2]);
    assert_eq!(doc.rounds[0].depleting_clause, 1);
}

#[test]
fn oracle_prints_witness() {
    let d = tempfile::tempdir().unwrap();
    let unit = write(&d, "p.cnf", "p cnf 1 1\n1 0\n");
    let r = gubin(&["oracle", s(&unit), "--witness"]);
    assert_eq!((r.code, r.out.as_str()), (EXIT_SAT, "SAT\nv 1 0\n"));

    let f = write(&d, "s.cnf", SAMPLE_3SAT);
    for method in ["brute", "dpll"] {
        let r = gubin(&["oracle", s(&f), "--method", method, "--witness"]);
        assert_eq!(r.code, EXIT_SAT);
        let v = r.out.lines().nth(1).unwrap();
        let lits: Vec<i64> = v.split_whitespace().skip(1).map(|t| t.parse().unwrap()).collect();
        assert_eq!(lits.last(), Some(&0));
        let formula = parse_dimacs(SAMPLE_3SAT).unwrap();
        let a = gubin_core::Assignment::new(lits[..lits.len() - 1].iter().map(|&l| l > 0).collect());
        assert_eq!(formula.evaluate(&a), Ok(true));
    }

    let ce = write(&d, "ce.cnf", COUNTEREXAMPLE);
    let r = gubin(&["oracle", s(&ce), "--witness"]);
    assert_eq!((r.code, r.out.as_str()), (EXIT_UNSAT, "UNSAT\n"));
}

#[test]
fn oracle_cap_comes_from_environment() {
    let d = tempfile::tempdir().unwrap();
    let ce = write(&d, "ce.cnf", COUNTEREXAMPLE);
    let binary = |cap: Option<&str>| {
        let mut cmd = std::process::Command::new(env!("CARGO_BIN_EXE_gubin"));
        cmd.args(["oracle", s(&ce), "--method", "brute"]);
        match cap {
            Some(c) => cmd.env("GUBIN_ORACLE_CAP", c),
            None => cmd.env_remove("GUBIN_ORACLE_CAP"),
        };
        cmd.output().unwrap()
    };
    let capped = binary(Some("2"));
    assert_eq!(capped.status.code(), Some(EXIT_ERROR));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("capped at 2"));
    assert_eq!(binary(Some("3")).status.code(), Some(EXIT_UNSAT));
    assert_eq!(binary(None).status.code(), Some(EXIT_UNSAT));
    assert_eq!(binary(Some("lots")).status.code(), Some(EXIT_ERROR));
}

#[test]
fn diff_patterns_reduce() {
    let d = tempfile::tempdir().unwrap();
    let ce = write(&d, "ce.cnf", COUNTEREXAMPLE);
    let w = write(&d, "w.cnf", WALKTHROUGH);
    assert_eq!(gubin(&["diff", s(&ce)]).out, "MISMATCH gubin=SAT oracle=UNSAT\n");
    assert_eq!(gubin(&["diff", s(&w)]).out, "AGREE gubin=UNSAT oracle=UNSAT\n");

    let r = gubin(&["patterns", s(&w)]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.starts_with("pattern2 (x1,x2)\n"), "{}", r.out);
    assert!(gubin(&["patterns", s(&ce)]).out.starts_with("no pattern\n"));

    let out = d.path().join("one.cnf");
    let r = gubin(&["reduce", s(&ce), "--out", s(&out)]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.ends_with("reduction_sound=false\n"), "{}", r.out);
    assert_eq!(fs::read_to_string(&out).unwrap(), "p cnf 4 4\n1 0\n-2 0\n-3 0\n-4 0\n");
}

#[test]
fn minimize_and_perm() {
    let d = tempfile::tempdir().unwrap();
    let padded = write(&d, "pad.cnf", "p cnf 6 6\n4 5 0\n1 2 3 0\n-1 0\n-4 6 0\n-2 0\n-3 0\n");
    let r = gubin(&["minimize", s(&padded)]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert_eq!(parse_dimacs(&r.out).unwrap().clause_count(), 4);
    let w = write(&d, "w.cnf", WALKTHROUGH);
    assert_eq!(gubin(&["minimize", s(&w)]).code, EXIT_ERROR);

    let ce = write(&d, "ce.cnf", COUNTEREXAMPLE);
    let r = gubin(&["perm", s(&ce)]);
    assert_eq!(r.out.lines().count(), 25);
    assert!(r.out.starts_with("order=1,2,3,4 gubin=SAT correct=false\n"));
    let r = gubin(&["perm", s(&ce), "--sample", "5", "--seed", "3"]);
    assert_eq!(r.out.lines().count(), 6);
    assert_eq!(r.out, gubin(&["perm", s(&ce), "--sample", "5", "--seed", "3"]).out);
}

#[test]
fn mine_writes_corpus() {
    let d = tempfile::tempdir().unwrap();
    let dir = d.path().join("corpus");
    let args = [
        "mine", "--vars", "5", "--clauses", "6", "--count", "2000", "--minimize", "--corpus",
        s(&dir),
    ];
    let r = gubin(&args);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert!(r.out.contains("false_unsat=0"));
    let index = Corpus::read_index(&dir).unwrap();
    assert!(!index.is_empty());
    for e in &index {
        assert_eq!((e.gubin.as_str(), e.oracle.as_str()), ("SAT", "UNSAT"));
        assert!(dir.join(format!("{}.cnf", e.hash)).exists());
        let small = e.minimized_hash.as_ref().unwrap();
        let f = parse_dimacs(&fs::read_to_string(dir.join(format!("{small}.cnf"))).unwrap()).unwrap();
        assert!(gubin_core::harness::diff_check(&f).unwrap().is_some());
    }
    assert_eq!(gubin(&args).out, r.out);
}

#[test]
fn every_command_speaks_json() {
    let d = tempfile::tempdir().unwrap();
    let ce = write(&d, "ce.cnf", COUNTEREXAMPLE);
    let c = s(&ce);
    let commands: Vec<Vec<&str>> = vec![
        vec!["gubin", c, "--json"],
        vec!["oracle", c, "--json"],
        vec!["diff", c, "--json"],
        vec!["mine", "--count", "50", "--json"],
        vec!["minimize", c, "--json"],
        vec!["perm", c, "--json"],
        vec!["patterns", c, "--json"],
        vec!["reduce", c, "--json"],
        vec!["replay", "--json"],
        vec!["probe", "--sizes", "4,8", "--json"],
    ];
    for args in commands {
        let r = gubin(&args);
        assert!(r.code != EXIT_ERROR, "{args:?}: {}", r.err);
        let v: Value = serde_json::from_str(&r.out).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        assert!(v.is_object() || v.is_array());
    }
    let v: Value = serde_json::from_str(&gubin(&["reduce", c, "--json"]).out).unwrap();
    assert_eq!(v["units"], serde_json::json!([1, -2, -3, -4]));
    assert_eq!(v["reduction_sound"], Value::Bool(false));
}

#[test]
fn replay_passes_and_names_corruption() {
    let r = gubin(&["replay"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.out);
    assert!(r.out.lines().all(|l| !l.starts_with("FAIL")));

    let mut fx = golden_fixtures();
    let k = fx.iter().position(|f| f.name == "pair.C13").unwrap();
    fx[k].expected[0] = serde_json::json!("10000000");
    let mut out = Vec::new();
    assert_eq!(replay_report(&fx, false, &mut out).unwrap(), EXIT_FIXTURE_FAILED);
    let out = String::from_utf8(out).unwrap();
    let failing: Vec<&str> = out.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(failing.len(), 1);
    assert!(failing[0].starts_with("FAIL pair.C13 "));
}
