//! Compatibility-matrix satisfiability engine and the tools to falsify it.
//!
//! * [`cnf`] and [`truth_table`]: the ordered CNF model and per-clause truth
//!   tables.
//! * [`engine`]: pairwise compatibility matrices, triangular depletion and
//!   the resulting verdict, with a full trace.
//! * [`oracle`]: brute force and DPLL ground truth.
//! * [`hegerle`]: the three full-cube patterns and the iff-claim check.
//! * [`reduction`]: 1-SAT emission from the bottom-right matrix.
//! * [`harness`]: random generation, differential checks, mining,
//!   minimization, clause-order experiments and the operation-count probe.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bits;
pub mod cnf;
pub mod engine;
pub mod harness;
pub mod hegerle;
pub mod oracle;
pub mod reduction;
pub mod truth_table;

pub use cnf::{evaluate, Assignment, Clause, CnfError, Formula, Literal, VarId};
pub use engine::{
    build_compatibility_matrix, build_triangle, run, CompatibilityMatrix, DepletionTrace,
    EngineError, GubinRun, GubinVerdict, Mode, OperationCounts, TriangularArray,
};
pub use oracle::{brute_force, dpll, Oracle, OracleError, OracleVerdict};
pub use truth_table::{truth_table, TruthTable};
