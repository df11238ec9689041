//! Greedy one-at-a-time reduction of a mismatching formula.
//!
//! Clauses are removed first, then literals within clauses, lowest index
//! first; both passes repeat until neither changes anything. The result is
//! 1-minimal: removing any single clause or literal makes the engine and
//! oracle agree again.

use super::{diff_check_with, DiffConfig, HarnessError, Mismatch};
use crate::cnf::Formula;

pub fn minimize(mm: &Mismatch) -> Result<Mismatch, HarnessError> {
    minimize_with(mm, &DiffConfig::default())
}

pub fn minimize_with(mm: &Mismatch, cfg: &DiffConfig) -> Result<Mismatch, HarnessError> {
    let mut current = diff_check_with(&mm.formula, cfg)?.ok_or(HarnessError::NotAMismatch)?;
    loop {
        let before = current.formula.clone();
        current = drop_clauses(current, cfg)?;
        current = drop_literals(current, cfg)?;
        if current.formula == before {
            break;
        }
    }
    current.origin = mm.origin;
    Ok(current)
}

fn still_mismatch(f: &Formula, cfg: &DiffConfig) -> Result<Option<Mismatch>, HarnessError> {
    diff_check_with(f, cfg)
}

fn drop_clauses(mut current: Mismatch, cfg: &DiffConfig) -> Result<Mismatch, HarnessError> {
    let mut k = 0;
    while k < current.formula.clause_count() {
        match still_mismatch(&current.formula.without_clause(k), cfg)? {
            Some(smaller) => current = smaller,
            None => k += 1,
        }
    }
    Ok(current)
}

fn drop_literals(mut current: Mismatch, cfg: &DiffConfig) -> Result<Mismatch, HarnessError> {
    let mut c = 0;
    while c < current.formula.clause_count() {
        let mut l = 0;
        while l < current.formula.clauses()[c].len() {
            let Some(shorter) = current.formula.clauses()[c].without_literal(l) else {
                break;
            };
            match still_mismatch(&current.formula.with_clause_replaced(c, shorter), cfg)? {
                Some(smaller) => current = smaller,
                None => l += 1,
            }
        }
        c += 1;
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{diff_check, is_isomorphic, known_bad_family};
    use crate::oracle::OracleVerdict;

    #[test]
    fn padded_known_bad_shrinks_to_core() {
        let mut clauses = known_bad_family(0).clauses().to_vec();
        clauses.push(crate::cnf::Clause::from_dimacs(&[4, 5]).unwrap());
        let padded = Formula::new(clauses);
        let mm = diff_check(&padded).unwrap().unwrap();
        let min = minimize(&mm).unwrap();
        assert_eq!(min.formula.clause_count(), 4);
        assert!(is_isomorphic(&min.formula, &known_bad_family(0)));
        assert_eq!(min.oracle_verdict, OracleVerdict::Unsat);
    }

    #[test]
    fn minimal_input_is_unchanged() {
        let f = known_bad_family(0);
        let mm = diff_check(&f).unwrap().unwrap();
        assert_eq!(minimize(&mm).unwrap().formula, f);
        for k in 0..4 {
            assert_eq!(diff_check(&f.without_clause(k)).unwrap(), None);
        }
    }

    #[test]
    fn agreeing_input_is_rejected() {
        let f = known_bad_family(0).reordered(&[1, 2, 3, 0]);
        let fake = Mismatch {
            trace: crate::engine::run(&f, Default::default()).unwrap().trace,
            formula: f,
            gubin_verdict: crate::engine::GubinVerdict::Sat,
            oracle_verdict: OracleVerdict::Unsat,
            origin: None,
        };
        assert_eq!(minimize(&fake), Err(HarnessError::NotAMismatch));
    }
}
