//! Golden data for the published worked examples, and the replay that
//! rebuilds each artifact and compares it.
//!
//! Three worked examples are covered:
//!
//! * the pair example: `c1 = p∨q∨r`, `c2 = ¬p∨q∨¬r`, `c3 = p∨¬q∨s` with
//!   p, q, r, s = x1..x4;
//! * the unsatisfiable 2-SAT walkthrough `(¬p∨q)(p∨¬q)(p∨q)(¬p∨¬q)`;
//! * the counterexample `(a∨b∨c)(¬a)(¬b)(¬c)`.
//!
//! The counterexample's published truth table for the 3-clause lists rows as
//! 000, 001, 010, 100, 011, 101, 110, 111 rather than in counting order. Its
//! golden data is stored in that published order together with
//! [`COUNTEREXAMPLE_ROW_ORDER`]; comparison rebuilds the table in that order.
//! Everything else compares exactly under the canonical order.

use gubin_core::engine::{run, Elimination, GubinVerdict, Mode, OperationCounts, TriangularArray};
use gubin_core::{dpll, Formula, TruthTable};
use serde::Serialize;
use serde_json::{json, Value};

/// Published row `k` of the counterexample's 3-clause holds the canonical
/// row `COUNTEREXAMPLE_ROW_ORDER[k]` (0-based).
pub const COUNTEREXAMPLE_ROW_ORDER: [usize; 8] = [0, 1, 2, 4, 3, 5, 6, 7];

const PAIR_C1_TABLE: [u8; 8] = [0, 1, 1, 1, 1, 1, 1, 1];
const PAIR_C2_TABLE: [u8; 8] = [1, 1, 1, 1, 1, 0, 1, 1];
const PAIR_C3_TABLE: [u8; 8] = [1, 1, 0, 1, 1, 1, 1, 1];

const PAIR_C23: [&str; 8] = [
    "11000000", "11000000", "00010000", "00010000", "00001100", "00000000", "00000011", "00000011",
];
const PAIR_C12: [&str; 8] = [
    "00000000", "01000000", "00100000", "00010000", "00001000", "00000000", "00000010", "00000001",
];
const PAIR_C13: [&str; 8] = [
    "00000000", "11000000", "00010000", "00010000", "00001100", "00001100", "00000011", "00000011",
];
const PAIR_C23_DEPLETED: [&str; 8] = [
    "00000000", "11000000", "00010000", "00010000", "00001100", "00000000", "00000011", "00000011",
];

const WALK_TABLES: [[u8; 4]; 4] = [[1, 1, 0, 1], [1, 0, 1, 1], [0, 1, 1, 1], [1, 1, 1, 0]];

type Array<'a> = [(&'a str, [&'a str; 4]); 6];

const WALK_INITIAL: Array = [
    ("1,2", ["1000", "0000", "0000", "0001"]),
    ("1,3", ["0000", "0100", "0000", "0001"]),
    ("1,4", ["1000", "0100", "0000", "0000"]),
    ("2,3", ["0000", "0000", "0010", "0001"]),
    ("2,4", ["1000", "0000", "0010", "0000"]),
    ("3,4", ["0000", "0100", "0010", "0000"]),
];
const WALK_ROUND1: Array = [
    ("1,2", ["1000", "0000", "0000", "0001"]),
    ("1,3", ["0000", "0100", "0000", "0001"]),
    ("1,4", ["1000", "0100", "0000", "0000"]),
    ("2,3", ["0000", "0000", "0000", "0001"]),
    ("2,4", ["1000", "0000", "0000", "0000"]),
    ("3,4", ["0000", "0100", "0000", "0000"]),
];
const WALK_ROUND2: Array = [
    ("1,2", ["1000", "0000", "0000", "0001"]),
    ("1,3", ["0000", "0100", "0000", "0001"]),
    ("1,4", ["1000", "0100", "0000", "0000"]),
    ("2,3", ["0000", "0000", "0000", "0001"]),
    ("2,4", ["1000", "0000", "0000", "0000"]),
    ("3,4", ["0000", "0000", "0000", "0000"]),
];

/// Published order (see [`COUNTEREXAMPLE_ROW_ORDER`]).
const CE_C1_TABLE: [u8; 8] = [0, 1, 1, 1, 1, 1, 1, 1];
const CE_UNIT_TABLE: [u8; 2] = [1, 0];
const CE_MATRICES: [(&str, &[&str]); 6] = [
    ("1,2", &["00", "10", "10", "00", "10", "00", "00", "00"]),
    ("1,3", &["00", "10", "00", "10", "00", "10", "00", "00"]),
    ("1,4", &["00", "00", "10", "10", "00", "00", "10", "00"]),
    ("2,3", &["10", "00"]),
    ("2,4", &["10", "00"]),
    ("3,4", &["10", "00"]),
];

pub fn pair_formula() -> Formula {
    Formula::from_dimacs(&[&[1, 2, 3], &[-1, 2, -3], &[1, -2, 4]]).expect("valid")
}

pub fn walkthrough_formula() -> Formula {
    Formula::from_dimacs(&[&[-1, 2], &[1, -2], &[1, 2], &[-1, -2]]).expect("valid")
}

pub fn counterexample_formula() -> Formula {
    Formula::from_dimacs(&[&[1, 2, 3], &[-1], &[-2], &[-3]]).expect("valid")
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    /// What the golden value is, in words.
    pub locus: &'static str,
    pub expected: Value,
    pub actual: fn() -> Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixtureResult {
    pub name: String,
    pub locus: String,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

fn table_json(t: &TruthTable) -> Value {
    json!(t.values().iter().map(|&v| u8::from(v)).collect::<Vec<_>>())
}

fn tables_json(f: &Formula) -> Value {
    Value::Array(
        f.clauses()
            .iter()
            .map(|c| table_json(&TruthTable::new(c).expect("narrow clause")))
            .collect(),
    )
}

fn array_json(a: &Array) -> Value {
    Value::Object(a.iter().map(|(k, rows)| (k.to_string(), json!(rows))).collect())
}

fn triangle_json(t: &TriangularArray) -> Value {
    Value::Object(crate::trace::matrices_json(t))
}

fn walkthrough_after(rounds: usize) -> Value {
    let mut t = TriangularArray::build(&walkthrough_formula()).expect("narrow");
    let mut counts = OperationCounts::default();
    for r in 1..=rounds {
        t.deplete_round(r, &mut counts).expect("round in range");
    }
    triangle_json(&t)
}

fn eliminations_json(e: &[Elimination]) -> Value {
    json!(e.iter().map(|e| [e.i, e.j, e.a, e.b]).collect::<Vec<_>>())
}

/// Counterexample triangle with the 3-clause's rows in published order.
fn counterexample_published_triangle() -> TriangularArray {
    let f = counterexample_formula();
    let mut tables: Vec<TruthTable> = f
        .clauses()
        .iter()
        .map(|c| TruthTable::new(c).expect("narrow"))
        .collect();
    tables[0] = tables[0]
        .permuted(&COUNTEREXAMPLE_ROW_ORDER)
        .expect("valid permutation");
    TriangularArray::from_tables(tables)
}

pub fn golden_fixtures() -> Vec<Fixture> {
    vec![
        Fixture {
            name: "pair.truth_table.c2",
            locus: "truth table of ¬p∨q∨¬r",
            expected: json!(PAIR_C2_TABLE),
            actual: || table_json(&TruthTable::new(&pair_formula().clauses()[1]).unwrap()),
        },
        Fixture {
            name: "pair.truth_table.c3",
            locus: "truth table of p∨¬q∨s",
            expected: json!(PAIR_C3_TABLE),
            actual: || table_json(&TruthTable::new(&pair_formula().clauses()[2]).unwrap()),
        },
        Fixture {
            name: "pair.truth_table.c1",
            locus: "truth table of the depleting clause p∨q∨r",
            expected: json!(PAIR_C1_TABLE),
            actual: || table_json(&TruthTable::new(&pair_formula().clauses()[0]).unwrap()),
        },
        Fixture {
            name: "pair.C23.initial",
            locus: "8x8 compatibility matrix of ¬p∨q∨¬r and p∨¬q∨s",
            expected: json!(PAIR_C23),
            actual: || json!(run(&pair_formula(), Mode::Full).unwrap().initial.get(2, 3).unwrap().row_strings()),
        },
        Fixture {
            name: "pair.C12",
            locus: "compatibility matrix of p∨q∨r with ¬p∨q∨¬r",
            expected: json!(PAIR_C12),
            actual: || json!(run(&pair_formula(), Mode::Full).unwrap().initial.get(1, 2).unwrap().row_strings()),
        },
        Fixture {
            name: "pair.C13",
            locus: "compatibility matrix of p∨q∨r with p∨¬q∨s",
            expected: json!(PAIR_C13),
            actual: || json!(run(&pair_formula(), Mode::Full).unwrap().initial.get(1, 3).unwrap().row_strings()),
        },
        Fixture {
            name: "pair.C23.depleted",
            locus: "C23 after depletion by p∨q∨r",
            expected: json!(PAIR_C23_DEPLETED),
            actual: || json!(run(&pair_formula(), Mode::Full).unwrap().depleted.get(2, 3).unwrap().row_strings()),
        },
        Fixture {
            name: "pair.depletion.eliminated",
            locus: "entries (1,1) and (1,2) of C23 eliminated",
            expected: json!([[2, 3, 1, 1], [2, 3, 1, 2]]),
            actual: || {
                let r = run(&pair_formula(), Mode::Full).unwrap();
                eliminations_json(&r.trace.rounds[0].eliminations)
            },
        },
        Fixture {
            name: "walkthrough.truth_tables",
            locus: "truth tables of ¬p∨q, p∨¬q, p∨q, ¬p∨¬q",
            expected: json!(WALK_TABLES),
            actual: || tables_json(&walkthrough_formula()),
        },
        Fixture {
            name: "walkthrough.initial",
            locus: "initial triangular array of six 4x4 matrices",
            expected: array_json(&WALK_INITIAL),
            actual: || walkthrough_after(0),
        },
        Fixture {
            name: "walkthrough.after_round1",
            locus: "array after depletion by c1",
            expected: array_json(&WALK_ROUND1),
            actual: || walkthrough_after(1),
        },
        Fixture {
            name: "walkthrough.after_round2",
            locus: "array after depletion by c2; C34 all zero",
            expected: array_json(&WALK_ROUND2),
            actual: || walkthrough_after(2),
        },
        Fixture {
            name: "walkthrough.verdict",
            locus: "verdict UNSAT at the bottom-right matrix",
            expected: json!({"verdict": "UNSAT", "first_zero_matrix": [3, 4]}),
            actual: || {
                let r = run(&walkthrough_formula(), Mode::EarlyExit).unwrap();
                json!({
                    "verdict": r.verdict.as_str(),
                    "first_zero_matrix": r.trace.first_zero_matrix.map(|(i, j)| [i, j]),
                })
            },
        },
        Fixture {
            name: "counterexample.truth_tables",
            locus: "truth tables of a∨b∨c (published row order), ¬a, ¬b, ¬c",
            expected: json!([CE_C1_TABLE, CE_UNIT_TABLE, CE_UNIT_TABLE, CE_UNIT_TABLE]),
            actual: || {
                let t = counterexample_published_triangle();
                Value::Array(t.tables().iter().map(table_json).collect())
            },
        },
        Fixture {
            name: "counterexample.matrices",
            locus: "six compatibility matrices (published row order for a∨b∨c)",
            expected: Value::Object(
                CE_MATRICES
                    .iter()
                    .map(|(k, rows)| (k.to_string(), json!(rows)))
                    .collect(),
            ),
            actual: || triangle_json(&counterexample_published_triangle()),
        },
        Fixture {
            name: "counterexample.unchanged",
            locus: "no entry eliminated in any depletion round",
            expected: json!({"eliminations": 0, "final_equals_initial": true}),
            actual: || {
                let r = run(&counterexample_formula(), Mode::Full).unwrap();
                json!({
                    "eliminations": r.trace.eliminations().count(),
                    "final_equals_initial": r.initial == r.depleted,
                })
            },
        },
        Fixture {
            name: "counterexample.verdict",
            locus: "engine verdict SAT on an unsatisfiable formula",
            expected: json!({"gubin": "SAT", "oracle": "UNSAT"}),
            actual: || {
                let f = counterexample_formula();
                json!({
                    "gubin": run(&f, Mode::EarlyExit).unwrap().verdict.as_str(),
                    "oracle": dpll(&f).as_str(),
                })
            },
        },
        Fixture {
            name: "counterexample.reordered",
            locus: "a∨b∨c moved last: verdict UNSAT",
            expected: json!(GubinVerdict::Unsat.as_str()),
            actual: || {
                let f = counterexample_formula().reordered(&[1, 2, 3, 0]);
                json!(run(&f, Mode::EarlyExit).unwrap().verdict.as_str())
            },
        },
    ]
}

pub fn replay(fixtures: &[Fixture]) -> Vec<FixtureResult> {
    fixtures
        .iter()
        .map(|fx| {
            let actual = (fx.actual)();
            FixtureResult {
                name: fx.name.to_string(),
                locus: fx.locus.to_string(),
                pass: actual == fx.expected,
                expected: fx.expected.clone(),
                actual,
            }
        })
        .collect()
}
