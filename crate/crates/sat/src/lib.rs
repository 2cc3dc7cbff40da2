//! A self-contained CDCL SAT solver.
//!
//! Runs are deterministic for a fixed [`SolverConfig`]. Unsatisfiable runs
//! return a [`Refutation`]: the input clauses and learned clauses reachable
//! from the final conflict, plus how often each variable occurs in them.

mod cnf;
mod dimacs;
mod heap;
mod solver;

pub use cnf::{Cnf, Lit, Var};
pub use dimacs::{parse_dimacs, write_dimacs};
pub use solver::{
    solve, solve_incremental, ClauseId, Model, Outcome, Refutation, Solver, SolverConfig, Stats,
};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SatError {
    #[error("clause {clause} references variable {var} but the formula has {num_vars}")]
    VariableOutOfRange {
        clause: usize,
        var: u32,
        num_vars: usize,
    },
    #[error("DIMACS line {line}: {message}")]
    Dimacs { line: usize, message: String },
}
