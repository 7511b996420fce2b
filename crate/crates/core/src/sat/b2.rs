use std::fmt;

use thiserror::Error;

use super::CnfFormula;

/// Where a variable occurs: the two clauses with its positive literal and the
/// two with its negative literal, each pair in ascending clause order
/// (0-based indices).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VariableOccurrences {
    pub pos: (usize, usize),
    pub neg: (usize, usize),
}

/// A CNF formula in the (3,B2) discipline: every clause has three literals
/// over pairwise distinct variables, and every variable occurs exactly twice
/// positively and twice negatively.
///
/// Counting literal slots gives `3m = 4n`, so the clause count is always
/// `4n / 3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct B2Formula {
    formula: CnfFormula,
    occurrences: Vec<VariableOccurrences>,
}

/// Violations are reported with 1-based clause and variable numbers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum B2Violation {
    #[error("formula has no variables")]
    EmptyFormula,
    #[error("clause {clause}: has {len} literals, expected 3")]
    ClauseArity { clause: usize, len: usize },
    #[error("clause {clause}: variable {variable} repeats")]
    RepeatedVariable { clause: usize, variable: usize },
    #[error(
        "variable {variable}: occurs {positive}x positive / {negative}x negative, expected 2/2"
    )]
    OccurrenceCount {
        variable: usize,
        positive: usize,
        negative: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct B2Error {
    violations: Vec<B2Violation>,
}

impl B2Error {
    pub fn violations(&self) -> &[B2Violation] {
        &self.violations
    }
}

impl fmt::Display for B2Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not a (3,B2) formula:")?;
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

/// Checks the (3,B2) discipline and, on success, indexes every variable's
/// occurrences for use by the covering reduction.
pub fn validate_b2(formula: CnfFormula) -> Result<B2Formula, B2Error> {
    let n = formula.num_variables();
    let mut violations = Vec::new();
    if n == 0 {
        violations.push(B2Violation::EmptyFormula);
    }
    let mut pos: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut neg: Vec<Vec<usize>> = vec![Vec::new(); n];

    for (j, clause) in formula.clauses().iter().enumerate() {
        if clause.len() != 3 {
            violations.push(B2Violation::ClauseArity {
                clause: j + 1,
                len: clause.len(),
            });
        }
        let mut seen: Vec<usize> = Vec::with_capacity(3);
        for lit in clause.literals() {
            if seen.contains(&lit.variable()) {
                violations.push(B2Violation::RepeatedVariable {
                    clause: j + 1,
                    variable: lit.variable(),
                });
            }
            seen.push(lit.variable());
            let side = if lit.is_positive() {
                &mut pos
            } else {
                &mut neg
            };
            side[lit.variable() - 1].push(j);
        }
    }

    let mut occurrences = Vec::with_capacity(n);
    for v in 0..n {
        if pos[v].len() != 2 || neg[v].len() != 2 {
            violations.push(B2Violation::OccurrenceCount {
                variable: v + 1,
                positive: pos[v].len(),
                negative: neg[v].len(),
            });
        } else {
            occurrences.push(VariableOccurrences {
                pos: (pos[v][0], pos[v][1]),
                neg: (neg[v][0], neg[v][1]),
            });
        }
    }

    if violations.is_empty() {
        Ok(B2Formula {
            formula,
            occurrences,
        })
    } else {
        Err(B2Error { violations })
    }
}

impl B2Formula {
    pub fn formula(&self) -> &CnfFormula {
        &self.formula
    }

    pub fn num_variables(&self) -> usize {
        self.formula.num_variables()
    }

    pub fn num_clauses(&self) -> usize {
        self.formula.num_clauses()
    }

    /// Occurrence index of a 1-based variable.
    pub fn occurrences(&self, variable: usize) -> VariableOccurrences {
        self.occurrences[variable - 1]
    }

    pub fn occurrence_table(&self) -> &[VariableOccurrences] {
        &self.occurrences
    }
}
