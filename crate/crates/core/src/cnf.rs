//! Ordered CNF data model.
//!
//! Clause order inside a [`Formula`] is significant: the compatibility-matrix
//! engine pairs clauses by position, so nothing in this module ever reorders
//! clauses implicitly.

use alloc::vec::Vec;
use core::fmt;
use core::num::NonZeroU32;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CnfError {
    #[error("variable index must be at least 1")]
    ZeroVariable,
    #[error("clause must contain at least one literal")]
    EmptyClause,
    #[error("declared variable count {declared} is below the largest referenced variable {referenced}")]
    VarCountTooSmall { declared: u32, referenced: u32 },
    #[error("assignment has no value for variable {0}")]
    PartialAssignment(VarId),
}

/// 1-based variable index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(NonZeroU32);

impl VarId {
    pub fn new(id: u32) -> Result<Self, CnfError> {
        NonZeroU32::new(id).map(VarId).ok_or(CnfError::ZeroVariable)
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0.get()
    }

    /// Zero-based position, for indexing dense per-variable storage.
    #[inline]
    pub fn index(self) -> usize {
        (self.0.get() - 1) as usize
    }

    pub fn from_index(index: usize) -> Self {
        VarId(NonZeroU32::new(index as u32 + 1).expect("index + 1 is nonzero"))
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub var: VarId,
    pub negated: bool,
}

impl Literal {
    pub fn positive(var: VarId) -> Self {
        Literal { var, negated: false }
    }

    pub fn negative(var: VarId) -> Self {
        Literal { var, negated: true }
    }

    /// Signed DIMACS encoding: `3` is x3, `-3` is ¬x3. Zero is rejected.
    pub fn from_dimacs(lit: i32) -> Result<Self, CnfError> {
        let var = VarId::new(lit.unsigned_abs())?;
        Ok(Literal {
            var,
            negated: lit < 0,
        })
    }

    pub fn to_dimacs(self) -> i64 {
        let v = i64::from(self.var.get());
        if self.negated {
            -v
        } else {
            v
        }
    }

    /// Value of the literal when its variable takes `value`.
    #[inline]
    pub fn eval(self, value: bool) -> bool {
        value != self.negated
    }
}

impl core::ops::Not for Literal {
    type Output = Literal;

    fn not(self) -> Literal {
        Literal {
            var: self.var,
            negated: !self.negated,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// A nonempty disjunction, literals kept in the order given.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clause {
    literals: Vec<Literal>,
}

impl Clause {
    pub fn new(literals: Vec<Literal>) -> Result<Self, CnfError> {
        if literals.is_empty() {
            return Err(CnfError::EmptyClause);
        }
        Ok(Clause { literals })
    }

    pub fn from_dimacs(lits: &[i32]) -> Result<Self, CnfError> {
        let literals = lits
            .iter()
            .map(|&l| Literal::from_dimacs(l))
            .collect::<Result<Vec<_>, _>>()?;
        Clause::new(literals)
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Distinct variables in order of first appearance.
    pub fn vars(&self) -> Vec<VarId> {
        let mut out: Vec<VarId> = Vec::with_capacity(self.literals.len());
        for lit in &self.literals {
            if !out.contains(&lit.var) {
                out.push(lit.var);
            }
        }
        out
    }

    pub fn max_var(&self) -> VarId {
        self.literals
            .iter()
            .map(|l| l.var)
            .max()
            .expect("clause is nonempty")
    }

    /// True when the clause contains both x and ¬x for some x.
    pub fn is_tautology(&self) -> bool {
        self.literals
            .iter()
            .any(|l| self.literals.contains(&!*l))
    }

    pub fn eval(&self, assignment: &Assignment) -> Result<bool, CnfError> {
        let mut sat = false;
        for lit in &self.literals {
            let value = assignment
                .get(lit.var)
                .ok_or(CnfError::PartialAssignment(lit.var))?;
            sat |= lit.eval(value);
        }
        Ok(sat)
    }

    /// Returns a copy with the literal at `pos` removed, or `None` if that
    /// would leave the clause empty.
    pub fn without_literal(&self, pos: usize) -> Option<Clause> {
        if self.literals.len() <= 1 {
            return None;
        }
        let mut literals = self.literals.clone();
        literals.remove(pos);
        Some(Clause { literals })
    }

    pub fn map_vars(&self, mut f: impl FnMut(VarId) -> VarId) -> Clause {
        Clause {
            literals: self
                .literals
                .iter()
                .map(|l| Literal {
                    var: f(l.var),
                    negated: l.negated,
                })
                .collect(),
        }
    }

    pub fn to_dimacs(&self) -> Vec<i64> {
        self.literals.iter().map(|l| l.to_dimacs()).collect()
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, lit) in self.literals.iter().enumerate() {
            if k > 0 {
                write!(f, " ∨ ")?;
            }
            if lit.negated {
                write!(f, "¬")?;
            }
            write!(f, "{}", lit.var)?;
        }
        write!(f, ")")
    }
}

/// A conjunction of clauses in a fixed order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Formula {
    clauses: Vec<Clause>,
    var_count: u32,
}

impl Formula {
    /// `var_count` is the largest variable referenced.
    pub fn new(clauses: Vec<Clause>) -> Self {
        let var_count = clauses.iter().map(|c| c.max_var().get()).max().unwrap_or(0);
        Formula { clauses, var_count }
    }

    /// Like [`Formula::new`] but declares `var_count` variables, which may
    /// exceed the largest one referenced (DIMACS headers do this).
    pub fn with_var_count(clauses: Vec<Clause>, var_count: u32) -> Result<Self, CnfError> {
        let referenced = clauses.iter().map(|c| c.max_var().get()).max().unwrap_or(0);
        if var_count < referenced {
            return Err(CnfError::VarCountTooSmall {
                declared: var_count,
                referenced,
            });
        }
        Ok(Formula { clauses, var_count })
    }

    pub fn from_dimacs(clauses: &[&[i32]]) -> Result<Self, CnfError> {
        let clauses = clauses
            .iter()
            .map(|c| Clause::from_dimacs(c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Formula::new(clauses))
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    pub fn var_count(&self) -> u32 {
        self.var_count
    }

    pub fn evaluate(&self, assignment: &Assignment) -> Result<bool, CnfError> {
        if let Some(missing) = (assignment.len() as u32..self.var_count).next() {
            return Err(CnfError::PartialAssignment(VarId::from_index(missing as usize)));
        }
        for clause in &self.clauses {
            if !clause.eval(assignment)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Clauses rearranged so that position `k` holds the original clause
    /// `order[k]` (0-based). Panics if `order` is not a permutation.
    pub fn reordered(&self, order: &[usize]) -> Formula {
        assert_eq!(order.len(), self.clauses.len(), "ordering length mismatch");
        let mut seen = alloc::vec![false; order.len()];
        for &k in order {
            assert!(!seen[k], "ordering is not a permutation");
            seen[k] = true;
        }
        Formula {
            clauses: order.iter().map(|&k| self.clauses[k].clone()).collect(),
            var_count: self.var_count,
        }
    }

    pub fn without_clause(&self, pos: usize) -> Formula {
        let mut clauses = self.clauses.clone();
        clauses.remove(pos);
        Formula::new(clauses)
    }

    pub fn with_clause_replaced(&self, pos: usize, clause: Clause) -> Formula {
        let mut clauses = self.clauses.clone();
        clauses[pos] = clause;
        Formula::new(clauses)
    }

    /// Applies a variable renaming to every literal. `var_count` is
    /// recomputed from the result.
    pub fn rename(&self, mut f: impl FnMut(VarId) -> VarId) -> Formula {
        Formula::new(self.clauses.iter().map(|c| c.map_vars(&mut f)).collect())
    }

    /// Distinct variables in order of first appearance across all clauses.
    pub fn vars(&self) -> Vec<VarId> {
        let mut out = Vec::new();
        for lit in self.clauses.iter().flat_map(|c| c.literals()) {
            if !out.contains(&lit.var) {
                out.push(lit.var);
            }
        }
        out
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return write!(f, "⊤");
        }
        for (k, c) in self.clauses.iter().enumerate() {
            if k > 0 {
                write!(f, " ∧ ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Dense assignment: entry `k` is the value of variable `k + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment { values }
    }

    pub fn all_false(n: u32) -> Self {
        Assignment {
            values: alloc::vec![false; n as usize],
        }
    }

    pub fn get(&self, var: VarId) -> Option<bool> {
        self.values.get(var.index()).copied()
    }

    pub fn set(&mut self, var: VarId, value: bool) {
        if var.index() >= self.values.len() {
            self.values.resize(var.index() + 1, false);
        }
        self.values[var.index()] = value;
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    /// Signed DIMACS model, e.g. `[1, -2, 3]`.
    pub fn to_dimacs(&self) -> Vec<i64> {
        self.values
            .iter()
            .enumerate()
            .map(|(k, &v)| if v { k as i64 + 1 } else { -(k as i64 + 1) })
            .collect()
    }
}

/// Free-function form of [`Formula::evaluate`].
pub fn evaluate(f: &Formula, assignment: &Assignment) -> Result<bool, CnfError> {
    f.evaluate(assignment)
}
