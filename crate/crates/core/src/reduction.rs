//! 1-SAT emission from the bottom-right matrix, and the report showing that
//! the emission maps unsatisfiable inputs to satisfiable outputs.
//!
//! Entries of the source matrix are enumerated row-major as `y_1 … y_{RC}`;
//! each becomes a unit clause over a fresh variable `b_i`: `(b_i)` when
//! `y_i = 1`, `(¬b_i)` otherwise. Fresh variables are numbered from 1 and are
//! unrelated to the source formula's variables.

use alloc::vec::Vec;

use crate::bits::BitMatrix;
use crate::cnf::{Assignment, Clause, Formula, Literal, VarId};
use crate::engine::{self, CompatibilityMatrix, EngineError, GubinVerdict, Mode};
use crate::oracle::{self, OracleVerdict};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneSatInstance {
    rows: usize,
    cols: usize,
    /// `units[k]` is the literal of `b_{k+1}`.
    units: Vec<Literal>,
}

impl OneSatInstance {
    pub fn units(&self) -> &[Literal] {
        &self.units
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn to_formula(&self) -> Formula {
        let clauses = self
            .units
            .iter()
            .map(|&l| Clause::new(alloc::vec![l]).expect("unit clause"))
            .collect();
        Formula::new(clauses)
    }

    /// Rebuilds the source matrix from a model of this instance.
    pub fn decode(&self, assignment: &Assignment) -> Option<BitMatrix> {
        let mut m = BitMatrix::zeros(self.rows, self.cols);
        for (k, lit) in self.units.iter().enumerate() {
            if assignment.get(lit.var)? {
                m.set(k / self.cols, k % self.cols);
            }
        }
        Some(m)
    }
}

pub fn emit_one_sat(matrix: &CompatibilityMatrix) -> OneSatInstance {
    let bits = matrix.bits();
    let (rows, cols) = (bits.rows(), bits.cols());
    let units = (0..rows * cols)
        .map(|k| {
            let var = VarId::from_index(k);
            if bits.get(k / cols, k % cols) {
                Literal::positive(var)
            } else {
                Literal::negative(var)
            }
        })
        .collect();
    OneSatInstance { rows, cols, units }
}

/// The forced model: `b_i = y_i`. Each variable occurs once, so this always
/// satisfies the instance.
pub fn one_sat_satisfy(instance: &OneSatInstance) -> Assignment {
    Assignment::new(instance.units.iter().map(|l| !l.negated).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionReport {
    pub gubin_verdict: GubinVerdict,
    pub oracle_verdict: OracleVerdict,
    pub bottom_right: (usize, usize),
    pub bottom_right_zero: bool,
    pub emitted: OneSatInstance,
    pub one_sat_satisfiable: bool,
    /// False when the input is unsatisfiable but the emitted instance is
    /// satisfiable and came from a nonzero matrix.
    pub reduction_sound: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReductionError {
    #[error("reduction needs at least two clauses, got {0}")]
    TooFewClauses(usize),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

pub fn reduction_refutation(f: &Formula) -> Result<ReductionReport, ReductionError> {
    if f.clause_count() < 2 {
        return Err(ReductionError::TooFewClauses(f.clause_count()));
    }
    let run = engine::run(f, Mode::Full)?;
    let matrix = run.depleted.bottom_right().expect("m >= 2");
    let emitted = emit_one_sat(matrix);
    let model = one_sat_satisfy(&emitted);
    let one_sat_satisfiable = emitted.to_formula().evaluate(&model) == Ok(true);
    let oracle_verdict = oracle::dpll(f);
    let bottom_right_zero = matrix.is_zero();
    let reduction_sound =
        !(oracle_verdict == OracleVerdict::Unsat && one_sat_satisfiable && !bottom_right_zero);
    Ok(ReductionReport {
        gubin_verdict: run.verdict,
        oracle_verdict,
        bottom_right: matrix.index(),
        bottom_right_zero,
        emitted,
        one_sat_satisfiable,
        reduction_sound,
    })
}
