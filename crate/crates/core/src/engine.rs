//! The compatibility-matrix procedure under test.
//!
//! For an ordered formula `c_1 ∧ … ∧ c_m` every clause pair `i < j` gets a
//! matrix `C[i,j]` over (row of c_i's truth table) × (row of c_j's truth
//! table). An entry starts at 1 when both rows satisfy their clause and agree
//! on shared variables. Round `r` (for `r = 1..=m-2`) then *depletes* every
//! matrix `C[p,q]` with `r < p < q`: entry `(a, b)` is cleared when column `a`
//! of `C[r,p]` and column `b` of `C[r,q]` have no row in common. Any all-zero
//! matrix means "unsatisfiable"; otherwise the verdict is "satisfiable".
//!
//! The procedure is unsound. It only ever errs by answering SAT on an
//! unsatisfiable formula, which is what the harness is built to exhibit.
//!
//! All clause, row and column indices exposed by this module are 1-based.

use alloc::vec::Vec;

use thiserror::Error;

use crate::bits::{BitMatrix, BitSet};
use crate::cnf::Formula;
use crate::truth_table::{TruthTable, TruthTableError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    TruthTable(#[from] TruthTableError),
    #[error("depletion round {round} is out of range 1..={last}")]
    RoundOutOfRange { round: usize, last: usize },
    #[error("clause index pair ({i}, {j}) is not in the triangle of {m} clauses")]
    NoSuchMatrix { i: usize, j: usize, m: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GubinVerdict {
    Sat,
    Unsat,
}

impl GubinVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            GubinVerdict::Sat => "SAT",
            GubinVerdict::Unsat => "UNSAT",
        }
    }
}

impl core::fmt::Display for GubinVerdict {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// When to stop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    /// Answer UNSAT at the first all-zero matrix, including in the initial
    /// array.
    #[default]
    EarlyExit,
    /// Run every round, then answer UNSAT iff some matrix is all-zero.
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompatibilityMatrix {
    i: usize,
    j: usize,
    bits: BitMatrix,
}

impl CompatibilityMatrix {
    /// Builds `C[i,j]` from the two clauses' truth tables.
    pub fn build(i: usize, table_i: &TruthTable, j: usize, table_j: &TruthTable) -> Self {
        // Positions of the shared variables inside each clause.
        let (shared_i, shared_j): (Vec<usize>, Vec<usize>) = table_i
            .vars()
            .iter()
            .enumerate()
            .filter_map(|(ki, v)| table_j.vars().iter().position(|w| w == v).map(|kj| (ki, kj)))
            .unzip();
        let key_j: Vec<u32> = (0..table_j.rows()).map(|b| table_j.project(b, &shared_j)).collect();
        let mut bits = BitMatrix::zeros(table_i.rows(), table_j.rows());
        for a in 0..table_i.rows() {
            if !table_i.value(a) {
                continue;
            }
            let key = table_i.project(a, &shared_i);
            for (b, &kb) in key_j.iter().enumerate() {
                if table_j.value(b) && kb == key {
                    bits.set(a, b);
                }
            }
        }
        CompatibilityMatrix { i, j, bits }
    }

    pub fn from_bits(i: usize, j: usize, bits: BitMatrix) -> Self {
        CompatibilityMatrix { i, j, bits }
    }

    /// Clause indices `(i, j)`, 1-based.
    pub fn index(&self) -> (usize, usize) {
        (self.i, self.j)
    }

    /// Entry `e[a,b]`, 1-based.
    pub fn get(&self, a: usize, b: usize) -> bool {
        self.bits.get(a - 1, b - 1)
    }

    pub fn rows(&self) -> usize {
        self.bits.rows()
    }

    pub fn cols(&self) -> usize {
        self.bits.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_zero()
    }

    pub fn count_ones(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn bits(&self) -> &BitMatrix {
        &self.bits
    }

    pub fn row_strings(&self) -> Vec<alloc::string::String> {
        self.bits.row_strings()
    }
}

/// Free-function form of [`CompatibilityMatrix::build`] for two clauses of
/// a formula.
pub fn build_compatibility_matrix(
    f: &Formula,
    i: usize,
    j: usize,
) -> Result<CompatibilityMatrix, EngineError> {
    let m = f.clause_count();
    if i == 0 || i >= j || j > m {
        return Err(EngineError::NoSuchMatrix { i, j, m });
    }
    let ti = TruthTable::new(&f.clauses()[i - 1])?;
    let tj = TruthTable::new(&f.clauses()[j - 1])?;
    Ok(CompatibilityMatrix::build(i, &ti, j, &tj))
}

/// One cleared entry: matrix `(i, j)`, position `(a, b)`; all 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elimination {
    pub i: usize,
    pub j: usize,
    pub a: usize,
    pub b: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct OperationCounts {
    /// Matrices visited by a depletion round.
    pub matrices_depleted: u64,
    /// Column-pair intersection tests, one per nonzero entry examined.
    pub column_pair_tests: u64,
    pub entry_eliminations: u64,
}

/// All `C[i,j]` for `1 <= i < j <= m`, stored row by row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularArray {
    m: usize,
    tables: Vec<TruthTable>,
    matrices: Vec<CompatibilityMatrix>,
}

impl TriangularArray {
    pub fn build(f: &Formula) -> Result<Self, EngineError> {
        let tables = f
            .clauses()
            .iter()
            .map(TruthTable::new)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_tables(tables))
    }

    /// Builds from explicit truth tables, which may use non-canonical row
    /// orders.
    pub fn from_tables(tables: Vec<TruthTable>) -> Self {
        let m = tables.len();
        let mut matrices = Vec::with_capacity(m * m.saturating_sub(1) / 2);
        for i in 1..=m {
            for j in i + 1..=m {
                matrices.push(CompatibilityMatrix::build(i, &tables[i - 1], j, &tables[j - 1]));
            }
        }
        TriangularArray { m, tables, matrices }
    }

    pub fn clause_count(&self) -> usize {
        self.m
    }

    pub fn tables(&self) -> &[TruthTable] {
        &self.tables
    }

    /// Number of depletion rounds, `m - 2` (zero for `m < 3`).
    pub fn round_count(&self) -> usize {
        self.m.saturating_sub(2)
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        // Rows 1..i-1 hold (m-1) + (m-2) + … + (m-i+1) matrices.
        let before = (i - 1) * self.m - (i - 1) * i / 2;
        before + (j - i - 1)
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&CompatibilityMatrix> {
        if i == 0 || i >= j || j > self.m {
            return None;
        }
        Some(&self.matrices[self.slot(i, j)])
    }

    /// Matrices in row-major triangle order: (1,2), (1,3), …, (m-1,m).
    pub fn matrices(&self) -> &[CompatibilityMatrix] {
        &self.matrices
    }

    pub fn bottom_right(&self) -> Option<&CompatibilityMatrix> {
        self.matrices.last()
    }

    /// First all-zero matrix in triangle order.
    pub fn first_zero(&self) -> Option<(usize, usize)> {
        self.matrices.iter().find(|c| c.is_zero()).map(|c| c.index())
    }

    /// True when, for every pair `i < j`, the entry indexed by the rows that
    /// `assignment` selects in clauses `i` and `j` is set. A model of the
    /// formula always has this property, before and after depletion.
    pub fn supports(&self, assignment: &crate::cnf::Assignment) -> Option<bool> {
        let rows: Option<Vec<usize>> = self.tables.iter().map(|t| t.position_of(assignment)).collect();
        let rows = rows?;
        Some(self.matrices.iter().all(|c| {
            let (i, j) = c.index();
            c.bits.get(rows[i - 1], rows[j - 1])
        }))
    }

    /// Depletes every matrix in triangle rows `r+1..m` with clause `r`.
    ///
    /// The depleting matrices `C[r,·]` live in row `r`, which this round does
    /// not touch, so the result does not depend on the order in which the
    /// target matrices are visited.
    pub fn deplete_round(
        &mut self,
        r: usize,
        counts: &mut OperationCounts,
    ) -> Result<Vec<Elimination>, EngineError> {
        let last = self.round_count();
        if r == 0 || r > last {
            return Err(EngineError::RoundOutOfRange { round: r, last });
        }
        // columns[p] = columns of C[r,p], for p in r+1..=m.
        let columns: Vec<Vec<BitSet>> = (r + 1..=self.m)
            .map(|p| self.matrices[self.slot(r, p)].bits.columns())
            .collect();
        let col_of = |p: usize| &columns[p - r - 1];

        let mut eliminated = Vec::new();
        for p in r + 1..=self.m {
            for q in p + 1..=self.m {
                let slot = self.slot(p, q);
                let target = &mut self.matrices[slot].bits;
                counts.matrices_depleted += 1;
                let (cols_p, cols_q) = (col_of(p), col_of(q));
                for (a, col_a) in cols_p.iter().enumerate().take(target.rows()) {
                    let ones: Vec<usize> = target.row(a).ones().collect();
                    for b in ones {
                        counts.column_pair_tests += 1;
                        if !col_a.intersects(&cols_q[b]) {
                            target.clear(a, b);
                            counts.entry_eliminations += 1;
                            eliminated.push(Elimination {
                                i: p,
                                j: q,
                                a: a + 1,
                                b: b + 1,
                            });
                        }
                    }
                }
            }
        }
        Ok(eliminated)
    }
}

/// Free-function form of [`TriangularArray::build`].
pub fn build_triangle(f: &Formula) -> Result<TriangularArray, EngineError> {
    TriangularArray::build(f)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepletionRound {
    /// 1-based index of the clause doing the depleting.
    pub depleting_clause: usize,
    pub eliminations: Vec<Elimination>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepletionTrace {
    pub rounds: Vec<DepletionRound>,
    /// First all-zero matrix observed, checked after the initial build and
    /// after every round.
    pub first_zero_matrix: Option<(usize, usize)>,
    pub verdict: GubinVerdict,
}

impl DepletionTrace {
    pub fn eliminations(&self) -> impl Iterator<Item = &Elimination> {
        self.rounds.iter().flat_map(|r| r.eliminations.iter())
    }
}

/// Everything a run produced.
#[derive(Debug, Clone)]
pub struct GubinRun {
    pub mode: Mode,
    pub verdict: GubinVerdict,
    pub trace: DepletionTrace,
    pub counts: OperationCounts,
    pub initial: TriangularArray,
    pub depleted: TriangularArray,
}

impl GubinRun {
    /// Counters for the run.
    pub fn operation_counter(&self) -> OperationCounts {
        self.counts
    }
}

pub fn run(f: &Formula, mode: Mode) -> Result<GubinRun, EngineError> {
    Ok(run_triangle(TriangularArray::build(f)?, mode))
}

/// Runs on a prebuilt triangle (e.g. one built from permuted truth tables).
pub fn run_triangle(triangle: TriangularArray, mode: Mode) -> GubinRun {
    let initial = triangle.clone();
    let mut current = triangle;
    let mut counts = OperationCounts::default();
    let mut rounds = Vec::new();
    let mut first_zero = current.first_zero();

    if !(mode == Mode::EarlyExit && first_zero.is_some()) {
        for r in 1..=current.round_count() {
            let eliminations = current
                .deplete_round(r, &mut counts)
                .expect("round index within range");
            rounds.push(DepletionRound {
                depleting_clause: r,
                eliminations,
            });
            if first_zero.is_none() {
                first_zero = current.first_zero();
            }
            if mode == Mode::EarlyExit && first_zero.is_some() {
                break;
            }
        }
    }

    let verdict = match mode {
        Mode::EarlyExit if first_zero.is_some() => GubinVerdict::Unsat,
        Mode::EarlyExit => GubinVerdict::Sat,
        Mode::Full if current.first_zero().is_some() => GubinVerdict::Unsat,
        Mode::Full => GubinVerdict::Sat,
    };
    GubinRun {
        mode,
        verdict,
        trace: DepletionTrace {
            rounds,
            first_zero_matrix: first_zero,
            verdict,
        },
        counts,
        initial,
        depleted: current,
    }
}
