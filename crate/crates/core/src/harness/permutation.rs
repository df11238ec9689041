//! Clause-order sensitivity.
//!
//! The oracle verdict does not depend on clause order; the engine's does.
//! For each ordering tried we record whether the engine got it right.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::HarnessError;
use crate::cnf::Formula;
use crate::engine::{self, GubinVerdict, Mode};
use crate::oracle::Oracle;

/// Largest clause count accepted by [`Strategy::All`] (8! orderings).
pub const MAX_CLAUSES_FOR_ALL: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    All,
    Sample { n: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderingResult {
    /// `order[k]` is the 0-based original index of the clause placed at `k`.
    pub order: Vec<usize>,
    pub gubin_verdict: GubinVerdict,
    pub correct: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PermutationStats {
    pub oracle_sat: bool,
    pub orderings_tested: usize,
    pub correct: usize,
    pub gubin_correct_fraction: f64,
    pub per_ordering: Vec<OrderingResult>,
}

/// Calls `visit` with every permutation of `0..n` in lexicographic order
/// until it returns false.
pub fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        if !visit(&p) {
            return;
        }
        // Next lexicographic permutation.
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("pivot exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

pub fn permutation_experiment(
    f: &Formula,
    strategy: Strategy,
) -> Result<PermutationStats, HarnessError> {
    let m = f.clause_count();
    let orders: Vec<Vec<usize>> = match strategy {
        Strategy::All => {
            if m > MAX_CLAUSES_FOR_ALL {
                return Err(HarnessError::TooManyClausesForAll {
                    m,
                    max: MAX_CLAUSES_FOR_ALL,
                });
            }
            let mut all = Vec::new();
            for_each_permutation(m, |p| {
                all.push(p.to_vec());
                true
            });
            all
        }
        Strategy::Sample { n, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..n)
                .map(|_| {
                    let mut p: Vec<usize> = (0..m).collect();
                    p.shuffle(&mut rng);
                    p
                })
                .collect()
        }
    };

    let oracle_sat = Oracle::Dpll.decide(f)?.is_sat();
    let mut per_ordering = Vec::with_capacity(orders.len());
    for order in orders {
        let verdict = engine::run(&f.reordered(&order), Mode::EarlyExit)?.verdict;
        per_ordering.push(OrderingResult {
            correct: (verdict == GubinVerdict::Sat) == oracle_sat,
            gubin_verdict: verdict,
            order,
        });
    }
    let correct = per_ordering.iter().filter(|o| o.correct).count();
    let tested = per_ordering.len();
    Ok(PermutationStats {
        oracle_sat,
        orderings_tested: tested,
        correct,
        gubin_correct_fraction: if tested == 0 {
            1.0
        } else {
            correct as f64 / tested as f64
        },
        per_ordering,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::known_bad_family;

    #[test]
    fn permutations_enumerated_in_order() {
        let mut seen = Vec::new();
        for_each_permutation(3, |p| {
            seen.push(p.to_vec());
            true
        });
        assert_eq!(
            seen,
            [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
        );
        let mut n = 0;
        for_each_permutation(0, |_| {
            n += 1;
            true
        });
        assert_eq!(n, 1);
    }

    #[test]
    fn known_bad_ordering_table() {
        let stats = permutation_experiment(&known_bad_family(0), Strategy::All).unwrap();
        assert_eq!(stats.orderings_tested, 24);
        assert!(!stats.oracle_sat);
        for o in &stats.per_ordering {
            if o.order[0] == 0 {
                assert!(!o.correct, "3-clause first is wrong: {:?}", o.order);
            }
            if o.order[3] == 0 {
                assert!(o.correct, "3-clause last is right: {:?}", o.order);
            }
        }
        assert!(stats.correct > 0 && stats.correct < 24);
    }

    #[test]
    fn walkthrough_correct_in_every_order() {
        let f = Formula::from_dimacs(&[&[-1, 2], &[1, -2], &[1, 2], &[-1, -2]]).unwrap();
        let stats = permutation_experiment(&f, Strategy::All).unwrap();
        assert_eq!(stats.gubin_correct_fraction, 1.0);
    }

    #[test]
    fn single_clause_trivial() {
        let f = Formula::from_dimacs(&[&[1]]).unwrap();
        let stats = permutation_experiment(&f, Strategy::All).unwrap();
        assert_eq!(stats.orderings_tested, 1);
        assert_eq!(stats.gubin_correct_fraction, 1.0);
    }

    #[test]
    fn all_rejected_above_eight() {
        let clauses: Vec<&[i32]> = (0..9).map(|_| &[1][..]).collect();
        let f = Formula::from_dimacs(&clauses).unwrap();
        assert!(matches!(
            permutation_experiment(&f, Strategy::All),
            Err(HarnessError::TooManyClausesForAll { m: 9, .. })
        ));
        let s = permutation_experiment(&f, Strategy::Sample { n: 5, seed: 3 }).unwrap();
        assert_eq!(s.orderings_tested, 5);
    }

    #[test]
    fn sampling_is_seeded() {
        let f = known_bad_family(0);
        let a = permutation_experiment(&f, Strategy::Sample { n: 10, seed: 11 }).unwrap();
        let b = permutation_experiment(&f, Strategy::Sample { n: 10, seed: 11 }).unwrap();
        assert_eq!(a, b);
    }
}
