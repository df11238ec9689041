//! Differential testing of the engine against the oracle.

mod minimize;
mod permutation;
mod probe;

pub use minimize::{minimize, minimize_with};
pub use permutation::{
    for_each_permutation, permutation_experiment, OrderingResult, PermutationStats, Strategy,
};
pub use probe::{complexity_probe, PlantedFamily, ProbeRow};

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cnf::{Clause, Formula, Literal, VarId};
use crate::engine::{self, DepletionTrace, EngineError, GubinVerdict, Mode};
use crate::oracle::{Oracle, OracleError, OracleVerdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("invalid generator config: {0}")]
    InvalidConfig(&'static str),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("formula is not a mismatch: engine and oracle agree")]
    NotAMismatch,
    #[error("exhaustive ordering needs at most {max} clauses, got {m}")]
    TooManyClausesForAll { m: usize, max: usize },
    #[error("probe sizes must be strictly increasing")]
    SizesNotIncreasing,
}

/// Random CNF generator settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GenConfig {
    pub n_vars: u32,
    pub n_clauses: usize,
    /// Largest clause width `k`; widths are uniform in `1..=k`.
    pub max_width: u32,
    pub seed: u64,
    pub allow_duplicate_clauses: bool,
}

impl GenConfig {
    pub fn new(n_vars: u32, n_clauses: usize, max_width: u32, seed: u64) -> Self {
        GenConfig {
            n_vars,
            n_clauses,
            max_width,
            seed,
            allow_duplicate_clauses: true,
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.n_vars == 0 {
            return Err(HarnessError::InvalidConfig("n_vars must be at least 1"));
        }
        if self.n_clauses == 0 {
            return Err(HarnessError::InvalidConfig("n_clauses must be at least 1"));
        }
        if self.max_width == 0 || self.max_width > self.n_vars {
            return Err(HarnessError::InvalidConfig("max_width must be in 1..=n_vars"));
        }
        Ok(())
    }

    pub fn with_seed(self, seed: u64) -> Self {
        GenConfig { seed, ..self }
    }
}

fn random_clause(rng: &mut ChaCha8Rng, n_vars: u32, max_width: u32) -> Clause {
    let width = rng.random_range(1..=max_width) as usize;
    let literals = index::sample(rng, n_vars as usize, width)
        .into_iter()
        .map(|k| Literal {
            var: VarId::from_index(k),
            negated: rng.random_bool(0.5),
        })
        .collect();
    Clause::new(literals).expect("width >= 1")
}

fn literal_set(c: &Clause) -> BTreeSet<Literal> {
    c.literals().iter().copied().collect()
}

/// Deterministic in `cfg`. Each clause draws a width uniformly from
/// `1..=max_width`, distinct variables, and uniform polarities.
pub fn random_formula(cfg: &GenConfig) -> Result<Formula, HarnessError> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut clauses = Vec::with_capacity(cfg.n_clauses);
    let mut seen = BTreeSet::new();
    for _ in 0..cfg.n_clauses {
        let mut clause = random_clause(&mut rng, cfg.n_vars, cfg.max_width);
        if !cfg.allow_duplicate_clauses {
            // Small configs can run out of distinct clauses; give up after a
            // bounded number of redraws and keep the duplicate.
            for _ in 0..64 {
                if !seen.contains(&literal_set(&clause)) {
                    break;
                }
                clause = random_clause(&mut rng, cfg.n_vars, cfg.max_width);
            }
            seen.insert(literal_set(&clause));
        }
        clauses.push(clause);
    }
    Ok(Formula::with_var_count(clauses, cfg.n_vars).expect("vars drawn below n_vars"))
}

/// Engine mode and oracle used by a differential check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct DiffConfig {
    pub mode: Mode,
    pub oracle: Oracle,
}

/// A formula on which the engine and the oracle disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub formula: Formula,
    pub gubin_verdict: GubinVerdict,
    pub oracle_verdict: OracleVerdict,
    pub trace: DepletionTrace,
    /// Generator config the formula came from, if mined.
    pub origin: Option<GenConfig>,
}

impl Mismatch {
    /// The engine can only err by answering SAT on an unsatisfiable formula.
    pub fn is_false_sat(&self) -> bool {
        self.gubin_verdict == GubinVerdict::Sat && !self.oracle_verdict.is_sat()
    }
}

pub fn diff_check(f: &Formula) -> Result<Option<Mismatch>, HarnessError> {
    diff_check_with(f, &DiffConfig::default())
}

pub fn diff_check_with(f: &Formula, cfg: &DiffConfig) -> Result<Option<Mismatch>, HarnessError> {
    let oracle_verdict = cfg.oracle.decide(f)?;
    let run = engine::run(f, cfg.mode)?;
    let agree = (run.verdict == GubinVerdict::Sat) == oracle_verdict.is_sat();
    Ok((!agree).then(|| Mismatch {
        formula: f.clone(),
        gubin_verdict: run.verdict,
        oracle_verdict,
        trace: run.trace,
        origin: None,
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MineReport {
    pub checked: usize,
    /// In seed order.
    pub mismatches: Vec<Mismatch>,
    /// Mismatches where the engine said UNSAT on a satisfiable formula.
    /// Always zero unless the engine is broken.
    pub false_unsat: usize,
    /// Formulas where a full run left some matrix all-zero but the
    /// bottom-right matrix nonzero.
    pub interior_only_zero: usize,
}

/// Generates `count` formulas with seeds `cfg.seed, cfg.seed + 1, …` and
/// diff-checks each.
pub fn mine(cfg: &GenConfig, count: usize) -> Result<MineReport, HarnessError> {
    mine_with(cfg, count, &DiffConfig::default())
}

pub fn mine_with(
    cfg: &GenConfig,
    count: usize,
    diff: &DiffConfig,
) -> Result<MineReport, HarnessError> {
    let mut report = MineReport::default();
    for k in 0..count {
        let this = cfg.with_seed(cfg.seed.wrapping_add(k as u64));
        let f = random_formula(&this)?;
        report.checked += 1;
        let full = engine::run(&f, Mode::Full)?;
        if full.depleted.first_zero().is_some()
            && full.depleted.bottom_right().is_some_and(|c| !c.is_zero())
        {
            report.interior_only_zero += 1;
        }
        if let Some(mut mm) = diff_check_with(&f, diff)? {
            if !mm.is_false_sat() {
                report.false_unsat += 1;
            }
            mm.origin = Some(this);
            report.mismatches.push(mm);
        }
    }
    Ok(report)
}

/// `(x₁₊ₒ ∨ x₂₊ₒ ∨ x₃₊ₒ) ∧ ¬x₁₊ₒ ∧ ¬x₂₊ₒ ∧ ¬x₃₊ₒ`, the smallest false SAT.
pub fn known_bad_family(var_offset: u32) -> Formula {
    let v = |k: u32| VarId::new(k + var_offset).expect("k >= 1");
    let clause = |lits: Vec<Literal>| Clause::new(lits).expect("nonempty");
    Formula::new(alloc::vec![
        clause(alloc::vec![Literal::positive(v(1)), Literal::positive(v(2)), Literal::positive(v(3))]),
        clause(alloc::vec![Literal::negative(v(1))]),
        clause(alloc::vec![Literal::negative(v(2))]),
        clause(alloc::vec![Literal::negative(v(3))]),
    ])
}

fn canonical_clauses(f: &Formula) -> Vec<BTreeSet<Literal>> {
    let mut out: Vec<BTreeSet<Literal>> = f.clauses().iter().map(literal_set).collect();
    out.sort();
    out
}

/// Largest number of distinct variables [`is_isomorphic`] will search over.
pub const ISOMORPHISM_VAR_LIMIT: usize = 8;

/// True when some bijective renaming of `f`'s variables turns its clause
/// multiset (clauses as literal sets) into `g`'s. Polarity is not flipped.
/// Returns false when either formula has more than
/// [`ISOMORPHISM_VAR_LIMIT`] distinct variables.
pub fn is_isomorphic(f: &Formula, g: &Formula) -> bool {
    let (vf, vg) = (f.vars(), g.vars());
    if f.clause_count() != g.clause_count()
        || vf.len() != vg.len()
        || vf.len() > ISOMORPHISM_VAR_LIMIT
    {
        return false;
    }
    let target = canonical_clauses(g);
    let mut found = false;
    for_each_permutation(vf.len(), |perm| {
        let renamed = f.rename(|v| {
            let k = vf.iter().position(|&w| w == v).expect("var of f");
            vg[perm[k]]
        });
        found = canonical_clauses(&renamed) == target;
        !found
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    fn walkthrough() -> Formula {
        Formula::from_dimacs(&[&[-1, 2], &[1, -2], &[1, 2], &[-1, -2]]).unwrap()
    }

    #[test]
    fn generator_is_deterministic() {
        let cfg = GenConfig::new(3, 4, 3, 42);
        let a = random_formula(&cfg).unwrap();
        assert_eq!(a, random_formula(&cfg).unwrap());
        assert_eq!(a.clause_count(), 4);
        assert_eq!(a.var_count(), 3);
        for c in a.clauses() {
            assert!((1..=3).contains(&c.len()));
            assert_eq!(c.vars().len(), c.len(), "variables sampled without replacement");
        }
    }

    #[test]
    fn generator_degenerate_shape() {
        let f = random_formula(&GenConfig::new(1, 2, 1, 7)).unwrap();
        assert_eq!(f.clause_count(), 2);
        for c in f.clauses() {
            assert_eq!(c.len(), 1);
            assert_eq!(c.literals()[0].var.get(), 1);
        }
    }

    #[test]
    fn different_seeds_differ() {
        let a = random_formula(&GenConfig::new(10, 20, 3, 1)).unwrap();
        let b = random_formula(&GenConfig::new(10, 20, 3, 2)).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn invalid_configs() {
        assert!(random_formula(&GenConfig::new(0, 1, 1, 0)).is_err());
        assert!(random_formula(&GenConfig::new(2, 0, 1, 0)).is_err());
        assert!(random_formula(&GenConfig::new(2, 1, 3, 0)).is_err());
        assert!(random_formula(&GenConfig::new(2, 1, 0, 0)).is_err());
    }

    #[test]
    fn no_duplicates_when_disallowed() {
        let mut cfg = GenConfig::new(6, 30, 3, 9);
        cfg.allow_duplicate_clauses = false;
        let f = random_formula(&cfg).unwrap();
        let sets: BTreeSet<_> = f.clauses().iter().map(literal_set).collect();
        assert_eq!(sets.len(), 30);
    }

    #[test]
    fn known_bad_family_mismatches_at_any_offset() {
        for offset in [0, 1, 7, 100] {
            let mm = diff_check(&known_bad_family(offset)).unwrap().expect("mismatch");
            assert!(mm.is_false_sat());
        }
        let units_first = known_bad_family(0).reordered(&[1, 2, 3, 0]);
        assert_eq!(diff_check(&units_first).unwrap(), None);
    }

    #[test]
    fn agreeing_formulas_are_not_mismatches() {
        assert_eq!(diff_check(&walkthrough()).unwrap(), None);
        let sample_3sat = Formula::from_dimacs(&[&[2, 1, 3], &[-2, 1, -3], &[2, -1, 3], &[-2, -1, -3]])
            .unwrap();
        assert_eq!(diff_check(&sample_3sat).unwrap(), None);
    }

    #[test]
    fn brute_force_cap_propagates() {
        let f = Formula::from_dimacs(&[&[1, 40]]).unwrap();
        let cfg = DiffConfig {
            mode: Mode::EarlyExit,
            oracle: Oracle::BruteForce { cap: 24 },
        };
        assert!(matches!(diff_check_with(&f, &cfg), Err(HarnessError::Oracle(_))));
    }

    #[test]
    fn mining_is_reproducible() {
        let cfg = GenConfig::new(5, 8, 3, 1000);
        let a = mine(&cfg, 300).unwrap();
        let b = mine(&cfg, 300).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.checked, 300);
        assert_eq!(a.false_unsat, 0);
        for mm in &a.mismatches {
            assert!(mm.is_false_sat());
            assert_eq!(random_formula(&mm.origin.unwrap()).unwrap(), mm.formula);
        }
    }

    #[test]
    fn mining_three_clause_formulas_finds_nothing() {
        let report = mine(&GenConfig::new(4, 3, 3, 5), 500).unwrap();
        assert!(report.mismatches.is_empty());
    }

    #[test]
    fn isomorphism_up_to_renaming() {
        let f = known_bad_family(0);
        let g = known_bad_family(4).reordered(&[2, 0, 3, 1]);
        assert!(is_isomorphic(&f, &g));
        assert!(!is_isomorphic(&f, &walkthrough()));
        // Polarity flips are not renamings.
        let flipped = Formula::from_dimacs(&[&[-1, -2, -3], &[1], &[2], &[3]]).unwrap();
        assert!(!is_isomorphic(&f, &flipped));
    }
}
