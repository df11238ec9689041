//! Per-clause truth tables.
//!
//! Rows enumerate every assignment to the clause's distinct variables. In the
//! canonical order row position `a` (0-based) carries the bit pattern `a`,
//! with the clause's first variable as the most significant bit. External
//! interfaces report rows 1-based.

use alloc::vec::Vec;

use thiserror::Error;

use crate::cnf::{Assignment, Clause, VarId};

/// Widest clause accepted. A compatibility matrix between two such clauses
/// has 2^12 × 2^12 entries.
pub const MAX_CLAUSE_WIDTH: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TruthTableError {
    #[error("clause has {width} distinct variables; at most {MAX_CLAUSE_WIDTH} are supported")]
    TooWide { width: usize },
    #[error("row order is not a permutation of 0..{rows}")]
    NotAPermutation { rows: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    vars: Vec<VarId>,
    /// Pattern bits of the variables occurring positively / negatively.
    pos_mask: u32,
    neg_mask: u32,
    /// `patterns[a]` is the bit pattern of row position `a`.
    patterns: Vec<u32>,
    /// Inverse of `patterns`.
    positions: Vec<u32>,
    values: Vec<bool>,
}

impl TruthTable {
    /// Canonical table for `clause`. Repeated variables collapse; a clause
    /// containing x and ¬x has no false row.
    pub fn new(clause: &Clause) -> Result<Self, TruthTableError> {
        let vars = clause.vars();
        let w = vars.len();
        if w > MAX_CLAUSE_WIDTH {
            return Err(TruthTableError::TooWide { width: w });
        }
        let mut pos_mask = 0u32;
        let mut neg_mask = 0u32;
        for lit in clause.literals() {
            let k = vars.iter().position(|&v| v == lit.var).expect("var listed");
            let bit = 1u32 << (w - 1 - k);
            if lit.negated {
                neg_mask |= bit;
            } else {
                pos_mask |= bit;
            }
        }
        let rows = 1usize << w;
        let patterns: Vec<u32> = (0..rows as u32).collect();
        let values = patterns
            .iter()
            .map(|&p| Self::clause_value(pos_mask, neg_mask, p))
            .collect();
        Ok(TruthTable {
            vars,
            pos_mask,
            neg_mask,
            positions: patterns.clone(),
            patterns,
            values,
        })
    }

    #[inline]
    fn clause_value(pos_mask: u32, neg_mask: u32, pattern: u32) -> bool {
        // Satisfied iff some positive literal's bit is set or some negative
        // literal's bit is clear.
        pattern & pos_mask != 0 || !pattern & neg_mask != 0
    }

    /// Same clause, rows rearranged: new position `k` holds old position
    /// `order[k]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self, TruthTableError> {
        let rows = self.rows();
        let mut seen = alloc::vec![false; rows];
        if order.len() != rows {
            return Err(TruthTableError::NotAPermutation { rows });
        }
        for &k in order {
            if k >= rows || seen[k] {
                return Err(TruthTableError::NotAPermutation { rows });
            }
            seen[k] = true;
        }
        let patterns: Vec<u32> = order.iter().map(|&k| self.patterns[k]).collect();
        let mut positions = alloc::vec![0u32; rows];
        for (pos, &p) in patterns.iter().enumerate() {
            positions[p as usize] = pos as u32;
        }
        let values = order.iter().map(|&k| self.values[k]).collect();
        Ok(TruthTable {
            vars: self.vars.clone(),
            pos_mask: self.pos_mask,
            neg_mask: self.neg_mask,
            patterns,
            positions,
            values,
        })
    }

    pub fn vars(&self) -> &[VarId] {
        &self.vars
    }

    pub fn width(&self) -> usize {
        self.vars.len()
    }

    pub fn rows(&self) -> usize {
        self.patterns.len()
    }

    /// Value of the row at 0-based position `a`.
    #[inline]
    pub fn value(&self, a: usize) -> bool {
        self.values[a]
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    /// Bit pattern of position `a`; bit `w-1-k` holds variable `vars()[k]`.
    #[inline]
    pub fn pattern(&self, a: usize) -> u32 {
        self.patterns[a]
    }

    /// Value assigned to `vars()[k]` by the row at position `a`.
    #[inline]
    pub fn var_value(&self, a: usize, k: usize) -> bool {
        self.patterns[a] >> (self.width() - 1 - k) & 1 == 1
    }

    /// All variable values of the row at position `a`, in `vars()` order.
    pub fn row_bits(&self, a: usize) -> Vec<bool> {
        (0..self.width()).map(|k| self.var_value(a, k)).collect()
    }

    /// Position of the row whose bits match `assignment` on this clause's
    /// variables. `None` if the assignment misses one of them.
    pub fn position_of(&self, assignment: &Assignment) -> Option<usize> {
        let w = self.width();
        let mut pattern = 0u32;
        for (k, &v) in self.vars.iter().enumerate() {
            if assignment.get(v)? {
                pattern |= 1 << (w - 1 - k);
            }
        }
        Some(self.positions[pattern as usize] as usize)
    }

    /// Number of rows on which the clause is false.
    pub fn false_rows(&self) -> usize {
        self.values.iter().filter(|v| !**v).count()
    }

    /// Bits of row `a` restricted to the variables at `var_positions`,
    /// packed in that order. Keys rows on shared variables.
    pub(crate) fn project(&self, a: usize, var_positions: &[usize]) -> u32 {
        var_positions
            .iter()
            .fold(0u32, |acc, &k| acc << 1 | u32::from(self.var_value(a, k)))
    }
}

/// Free-function form of [`TruthTable::new`].
pub fn truth_table(clause: &Clause) -> Result<TruthTable, TruthTableError> {
    TruthTable::new(clause)
}
