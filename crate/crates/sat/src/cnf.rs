use std::fmt;
use std::ops::Not;

use crate::SatError;

/// A propositional variable, 0-based. DIMACS numbering is `index + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub u32);

impl Var {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn positive(self) -> Lit {
        Lit::new(self, true)
    }

    #[inline]
    pub fn negative(self) -> Lit {
        Lit::new(self, false)
    }

    pub fn from_dimacs(v: u32) -> Var {
        debug_assert!(v > 0);
        Var(v - 1)
    }

    pub fn to_dimacs(self) -> u32 {
        self.0 + 1
    }
}

/// A literal packed as `var << 1 | negated`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(u32);

impl Lit {
    #[inline]
    pub fn new(var: Var, positive: bool) -> Lit {
        Lit(var.0 << 1 | (!positive) as u32)
    }

    #[inline]
    pub fn var(self) -> Var {
        Var(self.0 >> 1)
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    #[inline]
    pub(crate) fn code(self) -> usize {
        self.0 as usize
    }

    /// Builds a literal from a non-zero DIMACS integer.
    pub fn from_dimacs(lit: i32) -> Lit {
        assert!(lit != 0, "0 is the DIMACS clause terminator, not a literal");
        Lit::new(Var::from_dimacs(lit.unsigned_abs()), lit > 0)
    }

    pub fn to_dimacs(self) -> i32 {
        let v = self.var().to_dimacs() as i32;
        if self.is_positive() {
            v
        } else {
            -v
        }
    }
}

impl Not for Lit {
    type Output = Lit;

    #[inline]
    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// A formula in conjunctive normal form.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Cnf {
    num_vars: usize,
    clauses: Vec<Vec<Lit>>,
}

impl Cnf {
    pub fn new(num_vars: usize) -> Cnf {
        Cnf {
            num_vars,
            clauses: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Vec<Lit>] {
        &self.clauses
    }

    pub fn clause(&self, id: usize) -> &[Lit] {
        &self.clauses[id]
    }

    /// Appends a clause and returns its index.
    pub fn add_clause(&mut self, lits: impl Into<Vec<Lit>>) -> usize {
        self.clauses.push(lits.into());
        self.clauses.len() - 1
    }

    pub fn add_dimacs_clause(&mut self, lits: &[i32]) -> usize {
        self.add_clause(
            lits.iter()
                .map(|&l| Lit::from_dimacs(l))
                .collect::<Vec<_>>(),
        )
    }

    /// Grows the variable count; never shrinks it.
    pub fn ensure_vars(&mut self, n: usize) {
        self.num_vars = self.num_vars.max(n);
    }

    pub fn validate(&self) -> Result<(), SatError> {
        for (id, clause) in self.clauses.iter().enumerate() {
            check_clause(id, clause, self.num_vars)?;
        }
        Ok(())
    }

    /// Plain clause-by-clause evaluation, kept apart from the solver on purpose.
    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| {
            c.iter()
                .any(|l| assignment.get(l.var().index()).copied() == Some(l.is_positive()))
        })
    }
}

pub(crate) fn check_clause(id: usize, clause: &[Lit], num_vars: usize) -> Result<(), SatError> {
    for lit in clause {
        if lit.var().index() >= num_vars {
            return Err(SatError::VariableOutOfRange {
                clause: id,
                var: lit.var().to_dimacs(),
                num_vars,
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimacs_literal_round_trip() {
        for l in [1, -1, 7, -42] {
            assert_eq!(Lit::from_dimacs(l).to_dimacs(), l);
        }
        let x = Var(3).positive();
        assert_eq!(!x, Var(3).negative());
        assert_eq!(!!x, x);
    }

    #[test]
    fn evaluator_reads_every_clause() {
        let mut f = Cnf::new(2);
        f.add_dimacs_clause(&[1, 2]);
        f.add_dimacs_clause(&[-1]);
        assert!(f.is_satisfied_by(&[false, true]));
        assert!(!f.is_satisfied_by(&[true, true]));
        assert!(!f.is_satisfied_by(&[false, false]));
    }

    #[test]
    fn validate_rejects_out_of_range_vars() {
        let mut f = Cnf::new(1);
        f.add_dimacs_clause(&[1, -2]);
        assert!(matches!(
            f.validate(),
            Err(SatError::VariableOutOfRange {
                clause: 0,
                var: 2,
                ..
            })
        ));
    }
}
