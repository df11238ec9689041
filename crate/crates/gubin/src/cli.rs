//! The `gubin` command-line tool.
//!
//! Exit codes: 10 SAT, 20 UNSAT (for `gubin` and `oracle`), 0 success for
//! every other command, 1 when `replay` finds a failing fixture, 2 on any
//! usage, IO or parse error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use gubin_core::harness::{
    self, complexity_probe, minimize, mine_with, permutation_experiment, DiffConfig, GenConfig,
    PlantedFamily, Strategy,
};
use gubin_core::hegerle::check_hegerle_claim;
use gubin_core::oracle::{brute_force_with_cap, DEFAULT_BRUTE_FORCE_CAP};
use gubin_core::reduction::reduction_refutation;
use gubin_core::{dpll, Formula, GubinVerdict, Mode, OracleVerdict};
use serde_json::{json, Value};

use crate::corpus::{content_hash, Corpus};
use crate::dimacs::{parse_dimacs, serialize_dimacs};
use crate::fixtures::{golden_fixtures, replay, Fixture};
use crate::trace::{mode_name, TraceDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FIXTURE_FAILED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_SAT: i32 = 10;
pub const EXIT_UNSAT: i32 = 20;

/// Environment variable overriding the brute-force variable cap.
pub const ORACLE_CAP_ENV: &str = "GUBIN_ORACLE_CAP";

#[derive(Debug, Parser)]
#[command(name = "gubin", version, about = "Gubin's 3-SAT matrix procedure and a harness that tests it")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Early,
    Full,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Early => Mode::EarlyExit,
            ModeArg::Full => Mode::Full,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Brute,
    Dpll,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the matrix procedure on a DIMACS file.
    Gubin {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "early")]
        mode: ModeArg,
        /// Write the JSON trace to this path.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Decide satisfiability exactly.
    Oracle {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "dpll")]
        method: Method,
        /// Print a satisfying assignment as a `v ... 0` line.
        #[arg(long)]
        witness: bool,
        #[arg(long)]
        json: bool,
    },
    /// Compare the procedure with the oracle on one file.
    Diff {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Generate random formulas and collect disagreements.
    Mine {
        #[arg(long, default_value_t = 6)]
        vars: u32,
        #[arg(long, default_value_t = 8)]
        clauses: usize,
        #[arg(long, default_value_t = 3)]
        width: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long)]
        no_duplicates: bool,
        /// Write mismatches (and index.json) into this directory.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Also minimize each mismatch.
        #[arg(long)]
        minimize: bool,
        #[arg(long)]
        json: bool,
    },
    /// Shrink a mismatch to a locally minimal one.
    Minimize {
        file: PathBuf,
        /// Write the minimized DIMACS here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Run the procedure under clause reorderings.
    Perm {
        file: PathBuf,
        /// Try N random orderings instead of all of them.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Look for the three full-cube patterns and test the iff claim.
    Patterns {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Emit the 1-SAT instance of the final bottom-right matrix.
    Reduce {
        file: PathBuf,
        /// Write the emitted DIMACS here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Rebuild every worked-example artifact and compare with the golden data.
    Replay {
        #[arg(long)]
        json: bool,
    },
    /// Count engine operations on a nested satisfiable family.
    Probe {
        #[arg(long, value_delimiter = ',', default_value = "8,16,32,64")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        vars: u32,
        #[arg(long, default_value_t = 3)]
        width: u32,
        #[arg(long)]
        json: bool,
    },
}

/// Parses `args` (including the program name), runs the command, and
/// returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_ERROR
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Gubin { file, mode, trace, json } => cmd_gubin(&file, mode.into(), trace.as_deref(), json, out),
        Command::Oracle { file, method, witness, json } => cmd_oracle(&file, method, witness, json, out),
        Command::Diff { file, json } => cmd_diff(&file, json, out),
        Command::Mine {
            vars,
            clauses,
            width,
            seed,
            count,
            no_duplicates,
            corpus,
            minimize,
            json,
        } => {
            let mut cfg = GenConfig::new(vars, clauses, width, seed);
            cfg.allow_duplicate_clauses = !no_duplicates;
            cmd_mine(&cfg, count, corpus.as_deref(), minimize, json, out)
        }
        Command::Minimize { file, out: dest, json } => cmd_minimize(&file, dest.as_deref(), json, out),
        Command::Perm { file, sample, seed, json } => cmd_perm(&file, sample, seed, json, out),
        Command::Patterns { file, json } => cmd_patterns(&file, json, out),
        Command::Reduce { file, out: dest, json } => cmd_reduce(&file, dest.as_deref(), json, out),
        Command::Replay { json } => replay_report(&golden_fixtures(), json, out),
        Command::Probe {
            sizes,
            seed,
            vars,
            width,
            json,
        } => cmd_probe(&sizes, seed, vars, width, json, out),
    }
}

fn read_formula(path: &Path) -> Result<Formula> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_dimacs(&text).with_context(|| format!("parsing {}", path.display()))
}

fn print_json(out: &mut dyn Write, v: &Value) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v)?)?;
    Ok(())
}

fn brute_force_cap() -> Result<u32> {
    match std::env::var(ORACLE_CAP_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .with_context(|| format!("{ORACLE_CAP_ENV}={s:?} is not a variable count")),
        Err(_) => Ok(DEFAULT_BRUTE_FORCE_CAP),
    }
}

fn verdict_code(sat: bool) -> i32 {
    if sat {
        EXIT_SAT
    } else {
        EXIT_UNSAT
    }
}

fn cmd_gubin(path: &Path, mode: Mode, trace: Option<&Path>, json: bool, out: &mut dyn Write) -> Result<i32> {
    let f = read_formula(path)?;
    let run = gubin_core::run(&f, mode)?;
    if let Some(dest) = trace {
        let doc = TraceDocument::new(&f, &run);
        fs::write(dest, doc.to_json() + "\n").with_context(|| format!("writing {}", dest.display()))?;
    }
    if json {
        print_json(
            out,
            &json!({
                "verdict": run.verdict.as_str(),
                "mode": mode_name(mode),
                "first_zero_matrix": run.trace.first_zero_matrix.map(|(i, j)| [i, j]),
                "counters": {
                    "column_pair_tests": run.counts.column_pair_tests,
                    "entry_eliminations": run.counts.entry_eliminations,
                },
            }),
        )?;
    } else {
        writeln!(out, "{}", run.verdict.as_str())?;
    }
    Ok(verdict_code(run.verdict == GubinVerdict::Sat))
}

fn witness_line(v: &OracleVerdict) -> Option<String> {
    let mut line = String::from("v");
    for lit in v.witness()?.to_dimacs() {
        line.push_str(&format!(" {lit}"));
    }
    line.push_str(" 0");
    Some(line)
}

fn cmd_oracle(path: &Path, method: Method, witness: bool, json: bool, out: &mut dyn Write) -> Result<i32> {
    let f = read_formula(path)?;
    let verdict = match method {
        Method::Brute => brute_force_with_cap(&f, brute_force_cap()?)?,
        Method::Dpll => dpll(&f),
    };
    if json {
        print_json(
            out,
            &json!({
                "verdict": verdict.as_str(),
                "method": match method { Method::Brute => "brute", Method::Dpll => "dpll" },
                "witness": verdict.witness().map(|a| a.to_dimacs()),
            }),
        )?;
    } else {
        writeln!(out, "{}", verdict.as_str())?;
        if witness {
            if let Some(line) = witness_line(&verdict) {
                writeln!(out, "{line}")?;
            }
        }
    }
    Ok(verdict_code(verdict.is_sat()))
}

fn cmd_diff(path: &Path, json: bool, out: &mut dyn Write) -> Result<i32> {
    let f = read_formula(path)?;
    let gubin = gubin_core::run(&f, Mode::EarlyExit)?.verdict;
    let oracle = dpll(&f);
    let agree = (gubin == GubinVerdict::Sat) == oracle.is_sat();
    if json {
        print_json(
            out,
            &json!({"mismatch": !agree, "gubin": gubin.as_str(), "oracle": oracle.as_str()}),
        )?;
    } else {
        let tag = if agree { "AGREE" } else { "MISMATCH" };
        writeln!(out, "{tag} gubin={} oracle={}", gubin.as_str(), oracle.as_str())?;
    }
    Ok(EXIT_OK)
}

/// Mines `count` formulas and builds the in-memory corpus.
/// Returns the JSON report.
pub fn mine_report(cfg: &GenConfig, count: usize, minimize_each: bool) -> Result<(Value, Corpus)> {
    let report = mine_with(cfg, count, &DiffConfig::default())?;
    let mut corpus = Corpus::new();
    for mm in &report.mismatches {
        let small = if minimize_each { Some(minimize(mm)?) } else { None };
        corpus.add(mm, small.as_ref());
    }
    let value = json!({
        "checked": report.checked,
        "mismatches": report.mismatches.len(),
        "unique_mismatches": corpus.entries.len(),
        "false_unsat": report.false_unsat,
        "interior_only_zero": report.interior_only_zero,
        "entries": serde_json::to_value(&corpus.entries)?,
    });
    Ok((value, corpus))
}

fn cmd_mine(
    cfg: &GenConfig,
    count: usize,
    dir: Option<&Path>,
    minimize_each: bool,
    json: bool,
    out: &mut dyn Write,
) -> Result<i32> {
    let (report, corpus) = mine_report(cfg, count, minimize_each)?;
    if let Some(dir) = dir {
        corpus.write(dir).with_context(|| format!("writing corpus to {}", dir.display()))?;
    }
    if json {
        print_json(out, &report)?;
    } else {
        writeln!(
            out,
            "checked={} mismatches={} unique={} false_unsat={} interior_only_zero={}",
            report["checked"],
            report["mismatches"],
            report["unique_mismatches"],
            report["false_unsat"],
            report["interior_only_zero"],
        )?;
        for e in &corpus.entries {
            let seed = e.seed.map_or_else(|| "-".to_string(), |s| s.to_string());
            write!(out, "mismatch seed={seed} hash={} gubin={} oracle={}", e.hash, e.gubin, e.oracle)?;
            if let Some(h) = &e.minimized_hash {
                write!(out, " minimized={h}")?;
            }
            writeln!(out)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_minimize(path: &Path, dest: Option<&Path>, json: bool, out: &mut dyn Write) -> Result<i32> {
    let f = read_formula(path)?;
    let Some(mm) = harness::diff_check(&f)? else {
        bail!("{} is not a mismatch: engine and oracle agree", path.display());
    };
    let small = minimize(&mm)?;
    let text = serialize_dimacs(&small.formula);
    if let Some(dest) = dest {
        fs::write(dest, &text).with_context(|| format!("writing {}", dest.display()))?;
    }
    if json {
        print_json(
            out,
            &json!({
                "original_clauses": f.clause_count(),
                "minimized_clauses": small.formula.clause_count(),
                "gubin": small.gubin_verdict.as_str(),
                "oracle": small.oracle_verdict.as_str(),
                "hash": content_hash(&small.formula),
                "clauses": small.formula.clauses().iter().map(|c| c.to_dimacs()).collect::<Vec<_>>(),
            }),
        )?;
    } else if dest.is_none() {
        write!(out, "{text}")?;
    } else {
        writeln!(
            out,
            "minimized {} -> {} clauses gubin={} oracle={}",
            f.clause_count(),
            small.formula.clause_count(),
            small.gubin_verdict.as_str(),
            small.oracle_verdict.as_str()
        )?;
    }
    Ok(EXIT_OK)
}

fn one_based(order: &[usize]) -> Vec<usize> {
    order.iter().map(|k| k + 1).collect()
}

fn cmd_perm(path: &Path, sample: Option<usize>, seed: u64, json: bool, out: &mut dyn Write) -> Result<i32> {
    let f = read_formula(path)?;
    let strategy = match sample {
        Some(n) => Strategy::Sample { n, seed },
        None => Strategy::All,
    };
    let stats = permutation_experiment(&f, strategy)?;
    let oracle = if stats.oracle_sat { "SAT" } else { "UNSAT" };
    if json {
        print_json(
            out,
            &json!({
                "oracle": oracle,
                "orderings_tested": stats.orderings_tested,
                "correct": stats.correct,
                "gubin_correct_fraction": stats.gubin_correct_fraction,
                "per_ordering": stats.per_ordering.iter().map(|o| json!({
                    "order": one_based(&o.order),
                    "gubin": o.gubin_verdict.as_str(),
                    "correct": o.correct,
                })).collect::<Vec<_>>(),
            }),
        )?;
    } else {
        for o in &stats.per_ordering {
            let order: Vec<String> = one_based(&o.order).iter().map(usize::to_string).collect();
            writeln!(
                out,
                "order={} gubin={} correct={}",
                order.join(","),
                o.gubin_verdict.as_str(),
                o.correct
            )?;
        }
        writeln!(
            out,
            "oracle={oracle} orderings={} correct={} fraction={:.4}",
            stats.orderings_tested, stats.correct, stats.gubin_correct_fraction
        )?;
    }
    Ok(EXIT_OK)
}

fn cmd_patterns(path: &Path, json: bool, out: &mut dyn Write) -> Result<i32> {
    let f = read_formula(path)?;
    let check = check_hegerle_claim(&f)?;
    let p = &check.patterns;
    if json {
        print_json(
            out,
            &json!({
                "pattern1": p.pattern1.map(|a| a.get()),
                "pattern2": p.pattern2.map(|(a, b)| [a.get(), b.get()]),
                "pattern3": p.pattern3.map(|(a, b, c)| [a.get(), b.get(), c.get()]),
                "any_pattern": check.any_pattern,
                "gubin": check.gubin_verdict.as_str(),
                "consistent_with_claim": check.consistent_with_claim,
            }),
        )?;
    } else {
        if let Some(a) = p.pattern1 {
            writeln!(out, "pattern1 ({a})")?;
        }
        if let Some((a, b)) = p.pattern2 {
            writeln!(out, "pattern2 ({a},{b})")?;
        }
        if let Some((a, b, c)) = p.pattern3 {
            writeln!(out, "pattern3 ({a},{b},{c})")?;
        }
        if !check.any_pattern {
            writeln!(out, "no pattern")?;
        }
        writeln!(
            out,
            "gubin={} consistent_with_claim={}",
            check.gubin_verdict.as_str(),
            check.consistent_with_claim
        )?;
    }
    Ok(EXIT_OK)
}

fn cmd_reduce(path: &Path, dest: Option<&Path>, json: bool, out: &mut dyn Write) -> Result<i32> {
    let f = read_formula(path)?;
    let r = reduction_refutation(&f)?;
    let emitted = r.emitted.to_formula();
    if let Some(dest) = dest {
        fs::write(dest, serialize_dimacs(&emitted)).with_context(|| format!("writing {}", dest.display()))?;
    }
    let (i, j) = r.bottom_right;
    if json {
        print_json(
            out,
            &json!({
                "gubin": r.gubin_verdict.as_str(),
                "oracle": r.oracle_verdict.as_str(),
                "bottom_right": [i, j],
                "bottom_right_zero": r.bottom_right_zero,
                "units": r.emitted.units().iter().map(|l| l.to_dimacs()).collect::<Vec<_>>(),
                "one_sat_satisfiable": r.one_sat_satisfiable,
                "reduction_sound": r.reduction_sound,
            }),
        )?;
    } else {
        writeln!(
            out,
            "gubin={} oracle={} bottom_right={i},{j} units={} one_sat_satisfiable={}",
            r.gubin_verdict.as_str(),
            r.oracle_verdict.as_str(),
            r.emitted.units().len(),
            r.one_sat_satisfiable
        )?;
        writeln!(out, "reduction_sound={}", r.reduction_sound)?;
    }
    Ok(EXIT_OK)
}

/// Replays `fixtures`, prints one line per fixture (or a JSON list), and
/// returns 0 when all pass, 1 otherwise.
pub fn replay_report(fixtures: &[Fixture], json: bool, out: &mut dyn Write) -> Result<i32> {
    let results = replay(fixtures);
    if json {
        print_json(out, &serde_json::to_value(&results)?)?;
    } else {
        for r in &results {
            let tag = if r.pass { "PASS" } else { "FAIL" };
            writeln!(out, "{tag} {} ({})", r.name, r.locus)?;
            if !r.pass {
                writeln!(out, "  expected {}", r.expected)?;
                writeln!(out, "  actual   {}", r.actual)?;
            }
        }
        let passed = results.iter().filter(|r| r.pass).count();
        writeln!(out, "{passed}/{} fixtures pass", results.len())?;
    }
    Ok(if results.iter().all(|r| r.pass) {
        EXIT_OK
    } else {
        EXIT_FIXTURE_FAILED
    })
}

fn cmd_probe(sizes: &[usize], seed: u64, vars: u32, width: u32, json: bool, out: &mut dyn Write) -> Result<i32> {
    if width == 0 || width > vars {
        bail!("--width must be in 1..=--vars");
    }
    let family = PlantedFamily::new(seed, vars, width);
    let rows = complexity_probe(|m| family.formula(m), sizes)?;
    let ratio = |k: usize| -> Option<f64> {
        let prev = rows[k.checked_sub(1)?].counts.column_pair_tests;
        (prev > 0).then(|| rows[k].counts.column_pair_tests as f64 / prev as f64)
    };
    if json {
        let list: Vec<Value> = rows
            .iter()
            .enumerate()
            .map(|(k, r)| {
                json!({
                    "m": r.m,
                    "matrices_depleted": r.counts.matrices_depleted,
                    "column_pair_tests": r.counts.column_pair_tests,
                    "entry_eliminations": r.counts.entry_eliminations,
                    "ratio_to_previous": ratio(k),
                })
            })
            .collect();
        print_json(out, &json!({"seed": seed, "vars": vars, "width": width, "rows": list}))?;
    } else {
        for (k, r) in rows.iter().enumerate() {
            write!(
                out,
                "m={} matrices_depleted={} column_pair_tests={} entry_eliminations={}",
                r.m, r.counts.matrices_depleted, r.counts.column_pair_tests, r.counts.entry_eliminations
            )?;
            if let Some(x) = ratio(k) {
                write!(out, " ratio={x:.3}")?;
            }
            writeln!(out)?;
        }
    }
    Ok(EXIT_OK)
}

