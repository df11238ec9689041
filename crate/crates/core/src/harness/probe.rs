//! Operation-count growth of the engine as the clause count grows.

use alloc::vec::Vec;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::HarnessError;
use crate::cnf::{Clause, Formula, Literal, VarId};
use crate::engine::{self, Mode, OperationCounts};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProbeRow {
    pub m: usize,
    pub counts: OperationCounts,
}

/// Nested satisfiable family: `formula(m)` is the first `m` clauses of one
/// seeded stream of fixed-width clauses, each containing at least one
/// positive literal, so the all-true assignment satisfies every member.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlantedFamily {
    pub seed: u64,
    pub n_vars: u32,
    pub width: u32,
}

impl PlantedFamily {
    pub fn new(seed: u64, n_vars: u32, width: u32) -> Self {
        assert!(width >= 1 && width <= n_vars, "width must be in 1..=n_vars");
        PlantedFamily {
            seed,
            n_vars,
            width,
        }
    }

    pub fn formula(&self, m: usize) -> Formula {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let clauses = (0..m)
            .map(|_| {
                let mut lits: Vec<Literal> =
                    index::sample(&mut rng, self.n_vars as usize, self.width as usize)
                        .into_iter()
                        .map(|k| Literal {
                            var: VarId::from_index(k),
                            negated: rng.random_bool(0.5),
                        })
                        .collect();
                if lits.iter().all(|l| l.negated) {
                    lits[0].negated = false;
                }
                Clause::new(lits).expect("width >= 1")
            })
            .collect();
        Formula::with_var_count(clauses, self.n_vars).expect("vars drawn below n_vars")
    }
}

/// Runs the engine in full mode on `family(m)` for each size.
pub fn complexity_probe(
    family: impl Fn(usize) -> Formula,
    sizes: &[usize],
) -> Result<Vec<ProbeRow>, HarnessError> {
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(HarnessError::SizesNotIncreasing);
    }
    sizes
        .iter()
        .map(|&m| {
            let run = engine::run(&family(m), Mode::Full)?;
            Ok(ProbeRow {
                m,
                counts: run.counts,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::Assignment;

    #[test]
    fn family_is_nested_and_satisfiable() {
        let fam = PlantedFamily::new(5, 12, 3);
        let big = fam.formula(20);
        let small = fam.formula(7);
        assert_eq!(&big.clauses()[..7], small.clauses());
        let all_true = Assignment::new(alloc::vec![true; 12]);
        assert_eq!(big.evaluate(&all_true), Ok(true));
    }

    #[test]
    fn two_clauses_cost_nothing() {
        let fam = PlantedFamily::new(1, 6, 3);
        let rows = complexity_probe(|m| fam.formula(m), &[2, 3, 6]).unwrap();
        assert_eq!(rows[0].counts.column_pair_tests, 0);
        assert!(rows.windows(2).all(|w| w[0].counts.column_pair_tests <= w[1].counts.column_pair_tests));
    }

    #[test]
    fn sizes_must_increase() {
        let fam = PlantedFamily::new(1, 6, 3);
        assert_eq!(
            complexity_probe(|m| fam.formula(m), &[4, 4]),
            Err(HarnessError::SizesNotIncreasing)
        );
    }
}
