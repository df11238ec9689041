//! JSON trace of one engine run.
//!
//! ```json
//! {
//!   "clauses": [[1, 2, 3], [-1], [-2], [-3]],
//!   "row_order": "binary-msb-first",
//!   "mode": "early",
//!   "initial_matrices": { "1,2": ["00", "10", ...], ... },
//!   "rounds": [{ "depleting_clause": 1, "eliminated": [[2, 3, 1, 1], ...] }],
//!   "final_matrices": { ... },
//!   "verdict": "SAT",
//!   "first_zero_matrix": null,
//!   "counters": { "column_pair_tests": 12, "entry_eliminations": 0 }
//! }
//! ```

use gubin_core::{Formula, GubinRun, Mode, TriangularArray};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

pub const ROW_ORDER: &str = "binary-msb-first";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundDoc {
    pub depleting_clause: usize,
    /// `[i, j, a, b]`, 1-based.
    pub eliminated: Vec<[usize; 4]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountersDoc {
    pub column_pair_tests: u64,
    pub entry_eliminations: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceDocument {
    pub clauses: Vec<Vec<i64>>,
    pub row_order: String,
    pub mode: String,
    pub initial_matrices: Map<String, Value>,
    pub rounds: Vec<RoundDoc>,
    pub final_matrices: Map<String, Value>,
    pub verdict: String,
    pub first_zero_matrix: Option<[usize; 2]>,
    pub counters: CountersDoc,
}

pub fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::EarlyExit => "early",
        Mode::Full => "full",
    }
}

/// `"i,j"` → list of row bitstrings, in triangle order.
pub fn matrices_json(t: &TriangularArray) -> Map<String, Value> {
    t.matrices()
        .iter()
        .map(|c| {
            let (i, j) = c.index();
            (format!("{i},{j}"), Value::from(c.row_strings()))
        })
        .collect()
}

impl TraceDocument {
    pub fn new(f: &Formula, run: &GubinRun) -> Self {
        TraceDocument {
            clauses: f.clauses().iter().map(|c| c.to_dimacs()).collect(),
            row_order: ROW_ORDER.to_string(),
            mode: mode_name(run.mode).to_string(),
            initial_matrices: matrices_json(&run.initial),
            rounds: run
                .trace
                .rounds
                .iter()
                .map(|r| RoundDoc {
                    depleting_clause: r.depleting_clause,
                    eliminated: r.eliminations.iter().map(|e| [e.i, e.j, e.a, e.b]).collect(),
                })
                .collect(),
            final_matrices: matrices_json(&run.depleted),
            verdict: run.verdict.as_str().to_string(),
            first_zero_matrix: run.trace.first_zero_matrix.map(|(i, j)| [i, j]),
            counters: CountersDoc {
                column_pair_tests: run.counts.column_pair_tests,
                entry_eliminations: run.counts.entry_eliminations,
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }
}
