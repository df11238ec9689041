//! Detectors for three "full cube" unsatisfiability patterns, and a checker
//! for the conjecture that the engine answers UNSAT exactly when one of them
//! is present.
//!
//! * pattern 1: `{α}` and `{¬α}` are both clauses;
//! * pattern 2: all four 2-literal clauses over distinct `α, β`;
//! * pattern 3: all eight 3-literal clauses over distinct `α, β, γ`.
//!
//! Clauses are compared as literal sets; a clause only matches when its
//! variable set is exactly the pattern's variables. Duplicate clauses count
//! once.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::cnf::{Formula, Literal, VarId};
use crate::engine::{self, EngineError, GubinVerdict, Mode};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PatternReport {
    pub pattern1: Option<VarId>,
    pub pattern2: Option<(VarId, VarId)>,
    pub pattern3: Option<(VarId, VarId, VarId)>,
}

impl PatternReport {
    pub fn any_pattern(&self) -> bool {
        self.pattern1.is_some() || self.pattern2.is_some() || self.pattern3.is_some()
    }
}

/// Variable tuples (sorted) whose full `2^k` sign cube appears among the
/// clauses, smallest tuple first.
fn full_cubes(clause_sets: &BTreeSet<BTreeSet<Literal>>, k: usize) -> Vec<Vec<VarId>> {
    let mut signs: BTreeMap<Vec<VarId>, BTreeSet<u32>> = BTreeMap::new();
    for set in clause_sets.iter().filter(|s| s.len() == k) {
        let vars: Vec<VarId> = set.iter().map(|l| l.var).collect();
        // Sorted literal order puts x before ¬x, so distinctness is adjacent.
        if vars.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let sign = set
            .iter()
            .fold(0u32, |acc, l| acc << 1 | u32::from(l.negated));
        signs.entry(vars).or_default().insert(sign);
    }
    signs
        .into_iter()
        .filter(|(_, s)| s.len() == 1 << k)
        .map(|(v, _)| v)
        .collect()
}

pub fn detect_patterns(f: &Formula) -> PatternReport {
    let sets: BTreeSet<BTreeSet<Literal>> = f
        .clauses()
        .iter()
        .map(|c| c.literals().iter().copied().collect())
        .collect();
    let first = |k| full_cubes(&sets, k).into_iter().next();
    PatternReport {
        pattern1: first(1).map(|v| v[0]),
        pattern2: first(2).map(|v| (v[0], v[1])),
        pattern3: first(3).map(|v| (v[0], v[1], v[2])),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimCheck {
    pub gubin_verdict: GubinVerdict,
    pub patterns: PatternReport,
    pub any_pattern: bool,
    /// `gubin_verdict == Unsat` iff `any_pattern`. False means `f` refutes
    /// the conjecture.
    pub consistent_with_claim: bool,
}

pub fn check_hegerle_claim(f: &Formula) -> Result<ClaimCheck, EngineError> {
    let gubin_verdict = engine::run(f, Mode::EarlyExit)?.verdict;
    let patterns = detect_patterns(f);
    let any_pattern = patterns.any_pattern();
    Ok(ClaimCheck {
        gubin_verdict,
        consistent_with_claim: (gubin_verdict == GubinVerdict::Unsat) == any_pattern,
        any_pattern,
        patterns,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(clauses: &[&[i32]]) -> Formula {
        Formula::from_dimacs(clauses).unwrap()
    }

    fn v(k: u32) -> VarId {
        VarId::new(k).unwrap()
    }

    #[test]
    fn complementary_units() {
        let r = detect_patterns(&f(&[&[2, 3], &[1], &[-1]]));
        assert_eq!(r.pattern1, Some(v(1)));
        assert!(r.any_pattern());
    }

    #[test]
    fn walkthrough_is_full_square() {
        let r = detect_patterns(&f(&[&[-1, 2], &[1, -2], &[1, 2], &[-1, -2]]));
        assert_eq!(r.pattern2, Some((v(1), v(2))));
        assert_eq!(r.pattern1, None);
        assert_eq!(r.pattern3, None);
    }

    #[test]
    fn literal_order_inside_clauses_is_ignored() {
        let r = detect_patterns(&f(&[&[2, -1], &[-2, 1], &[2, 1], &[-2, -1]]));
        assert_eq!(r.pattern2, Some((v(1), v(2))));
    }

    #[test]
    fn counterexample_has_no_pattern() {
        assert!(!detect_patterns(&f(&[&[1, 2, 3], &[-1], &[-2], &[-3]])).any_pattern());
    }

    #[test]
    fn full_cube_of_three() {
        let mut clauses = Vec::new();
        for s in 0..8 {
            let sign = |bit: i32, var: i32| if s >> bit & 1 == 1 { -var } else { var };
            clauses.push([sign(2, 4), sign(1, 5), sign(0, 7)]);
        }
        let refs: Vec<&[i32]> = clauses.iter().map(|c| &c[..]).collect();
        let r = detect_patterns(&f(&refs));
        assert_eq!(r.pattern3, Some((v(4), v(5), v(7))));
        // Drop one corner: no longer full.
        let r = detect_patterns(&f(&refs[1..]));
        assert_eq!(r.pattern3, None);
    }

    #[test]
    fn extra_literals_do_not_match() {
        let r = detect_patterns(&f(&[&[1, 3], &[-1, 3]]));
        assert_eq!(r.pattern1, None);
        // x ∨ x is the literal set {x}.
        let r = detect_patterns(&f(&[&[1, 1], &[-1]]));
        assert_eq!(r.pattern1, Some(v(1)));
        // x ∨ ¬x is not a 2-variable clause.
        let r = detect_patterns(&f(&[&[1, -1], &[1, 2], &[-1, 2]]));
        assert_eq!(r.pattern2, None);
    }

    #[test]
    fn chain_refutes_the_claim() {
        // (p) ∧ (¬p ∨ q) ∧ (¬q)
        let c = check_hegerle_claim(&f(&[&[1], &[-1, 2], &[-2]])).unwrap();
        assert_eq!(c.gubin_verdict, GubinVerdict::Unsat);
        assert!(!c.any_pattern);
        assert!(!c.consistent_with_claim);
    }

    #[test]
    fn walkthrough_and_unit_are_consistent() {
        let c = check_hegerle_claim(&f(&[&[-1, 2], &[1, -2], &[1, 2], &[-1, -2]])).unwrap();
        assert!(c.consistent_with_claim);
        let c = check_hegerle_claim(&f(&[&[1]])).unwrap();
        assert_eq!(c.gubin_verdict, GubinVerdict::Sat);
        assert!(c.consistent_with_claim);
    }
}
