//! Ground-truth satisfiability: exhaustive enumeration and a plain DPLL.
//!
//! Both procedures are deterministic so that mismatch corpora reproduce
//! exactly. Variables that end up unconstrained are set to false in
//! witnesses.

use alloc::vec::Vec;

use thiserror::Error;

use crate::cnf::{Assignment, Formula, Literal};

pub const DEFAULT_BRUTE_FORCE_CAP: u32 = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("formula has {vars} variables; brute force is capped at {cap} (use dpll instead)")]
    CapExceeded { vars: u32, cap: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OracleVerdict {
    Sat(Assignment),
    Unsat,
}

impl OracleVerdict {
    pub fn is_sat(&self) -> bool {
        matches!(self, OracleVerdict::Sat(_))
    }

    pub fn witness(&self) -> Option<&Assignment> {
        match self {
            OracleVerdict::Sat(a) => Some(a),
            OracleVerdict::Unsat => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            OracleVerdict::Sat(_) => "SAT",
            OracleVerdict::Unsat => "UNSAT",
        }
    }
}

/// Which ground-truth procedure to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Oracle {
    BruteForce { cap: u32 },
    #[default]
    Dpll,
}

impl Oracle {
    pub fn decide(self, f: &Formula) -> Result<OracleVerdict, OracleError> {
        match self {
            Oracle::BruteForce { cap } => brute_force_with_cap(f, cap),
            Oracle::Dpll => Ok(dpll(f)),
        }
    }
}

pub fn brute_force(f: &Formula) -> Result<OracleVerdict, OracleError> {
    brute_force_with_cap(f, DEFAULT_BRUTE_FORCE_CAP)
}

/// Tries assignments in counting order with variable 1 as the most
/// significant bit, returning the first model.
pub fn brute_force_with_cap(f: &Formula, cap: u32) -> Result<OracleVerdict, OracleError> {
    let n = f.var_count();
    if n > cap || n >= 64 {
        return Err(OracleError::CapExceeded { vars: n, cap });
    }
    // Per clause: (positive mask, negative mask) over the counting bits.
    let bit = |l: &Literal| 1u64 << (n - l.var.get());
    let masks: Vec<(u64, u64)> = f
        .clauses()
        .iter()
        .map(|c| {
            c.literals().iter().fold((0, 0), |(pos, neg), l| {
                if l.negated {
                    (pos, neg | bit(l))
                } else {
                    (pos | bit(l), neg)
                }
            })
        })
        .collect();
    for x in 0..1u64 << n {
        if masks.iter().all(|&(pos, neg)| x & pos != 0 || !x & neg != 0) {
            let values = (1..=n).map(|v| x >> (n - v) & 1 == 1).collect();
            return Ok(OracleVerdict::Sat(Assignment::new(values)));
        }
    }
    Ok(OracleVerdict::Unsat)
}

/// DPLL with unit propagation and pure-literal elimination. Branches on the
/// lowest-index unassigned variable of an open clause, false first.
pub fn dpll(f: &Formula) -> OracleVerdict {
    let clauses: Vec<&[Literal]> = f.clauses().iter().map(|c| c.literals()).collect();
    let mut values: Vec<Option<bool>> = alloc::vec![None; f.var_count() as usize];
    if search(&clauses, &mut values) {
        let witness = Assignment::new(values.into_iter().map(|v| v.unwrap_or(false)).collect());
        debug_assert_eq!(f.evaluate(&witness), Ok(true));
        OracleVerdict::Sat(witness)
    } else {
        OracleVerdict::Unsat
    }
}

enum ClauseState {
    Satisfied,
    Falsified,
    Unit(Literal),
    Open,
}

fn clause_state(clause: &[Literal], values: &[Option<bool>]) -> ClauseState {
    let mut free = None;
    let mut free_count = 0;
    for &lit in clause {
        match values[lit.var.index()] {
            Some(v) if lit.eval(v) => return ClauseState::Satisfied,
            Some(_) => {}
            None => {
                // x ∨ x counts once.
                if free != Some(lit) {
                    free_count += 1;
                    free = Some(lit);
                }
            }
        }
    }
    match (free_count, free) {
        (0, _) => ClauseState::Falsified,
        (1, Some(lit)) => ClauseState::Unit(lit),
        _ => ClauseState::Open,
    }
}

/// Unit propagation and pure-literal elimination to fixpoint. Returns false
/// on conflict.
fn simplify(clauses: &[&[Literal]], values: &mut [Option<bool>]) -> bool {
    loop {
        let mut changed = false;
        for clause in clauses {
            match clause_state(clause, values) {
                ClauseState::Falsified => return false,
                ClauseState::Unit(lit) => {
                    values[lit.var.index()] = Some(!lit.negated);
                    changed = true;
                }
                ClauseState::Satisfied | ClauseState::Open => {}
            }
        }
        if changed {
            continue;
        }
        // polarity[v]: bit 0 = seen positive, bit 1 = seen negative, among
        // open clauses.
        let mut polarity = alloc::vec![0u8; values.len()];
        for clause in clauses {
            if matches!(clause_state(clause, values), ClauseState::Satisfied) {
                continue;
            }
            for lit in clause.iter().filter(|l| values[l.var.index()].is_none()) {
                polarity[lit.var.index()] |= if lit.negated { 2 } else { 1 };
            }
        }
        for (v, &p) in polarity.iter().enumerate() {
            if p == 1 || p == 2 {
                values[v] = Some(p == 1);
                changed = true;
            }
        }
        if !changed {
            return true;
        }
    }
}

fn search(clauses: &[&[Literal]], values: &mut Vec<Option<bool>>) -> bool {
    if !simplify(clauses, values) {
        return false;
    }
    let branch = clauses
        .iter()
        .filter(|c| !matches!(clause_state(c, values), ClauseState::Satisfied))
        .flat_map(|c| c.iter())
        .filter(|l| values[l.var.index()].is_none())
        .map(|l| l.var)
        .min();
    let Some(var) = branch else {
        // Every clause satisfied.
        return true;
    };
    for choice in [false, true] {
        let mut trial = values.clone();
        trial[var.index()] = Some(choice);
        if search(clauses, &mut trial) {
            *values = trial;
            return true;
        }
    }
    false
}
