use std::fmt;

use thiserror::Error;

/// A propositional variable (1-based index) or its negation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    variable: usize,
    negated: bool,
}

impl Literal {
    /// Panics if `variable` is 0; variables are numbered from 1.
    pub fn new(variable: usize, negated: bool) -> Self {
        assert!(variable >= 1, "variables are numbered from 1");
        Literal { variable, negated }
    }

    pub fn positive(variable: usize) -> Self {
        Literal::new(variable, false)
    }

    pub fn negative(variable: usize) -> Self {
        Literal::new(variable, true)
    }

    pub fn variable(&self) -> usize {
        self.variable
    }

    pub fn is_positive(&self) -> bool {
        !self.negated
    }

    pub fn negate(&self) -> Self {
        Literal {
            variable: self.variable,
            negated: !self.negated,
        }
    }

    /// Signed integer form: `v` for a positive literal, `-v` for a negative one.
    pub fn to_signed(self) -> i64 {
        let v = self.variable as i64;
        if self.negated {
            -v
        } else {
            v
        }
    }

    pub fn from_signed(value: i64) -> Option<Self> {
        if value == 0 {
            return None;
        }
        Some(Literal {
            variable: value.unsigned_abs() as usize,
            negated: value < 0,
        })
    }

    /// Whether the valuation makes this literal true.
    pub fn satisfied_by(&self, valuation: &Valuation) -> bool {
        valuation.value(self.variable) != self.negated
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_signed())
    }
}

/// A disjunction of literals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    literals: Vec<Literal>,
}

impl Clause {
    pub fn new(literals: Vec<Literal>) -> Self {
        Clause { literals }
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }
}

impl FromIterator<Literal> for Clause {
    fn from_iter<T: IntoIterator<Item = Literal>>(iter: T) -> Self {
        Clause::new(iter.into_iter().collect())
    }
}

/// A CNF formula over variables `1..=num_variables`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    num_variables: usize,
    clauses: Vec<Clause>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CnfError {
    #[error("clause {clause}: variable {variable} exceeds the declared count {num_variables}")]
    VariableOutOfRange {
        clause: usize,
        variable: usize,
        num_variables: usize,
    },
}

/// A total assignment over variables `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Valuation {
    values: Vec<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("valuation assigns {got} variables but the formula has {expected}")]
pub struct ArityMismatch {
    pub expected: usize,
    pub got: usize,
}

impl CnfFormula {
    pub fn new(num_variables: usize, clauses: Vec<Clause>) -> Result<Self, CnfError> {
        for (j, clause) in clauses.iter().enumerate() {
            for lit in clause.literals() {
                if lit.variable() > num_variables {
                    return Err(CnfError::VariableOutOfRange {
                        clause: j + 1,
                        variable: lit.variable(),
                        num_variables,
                    });
                }
            }
        }
        Ok(CnfFormula {
            num_variables,
            clauses,
        })
    }

    pub fn num_variables(&self) -> usize {
        self.num_variables
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// Standard CNF semantics: every clause must contain a true literal.
    /// The valuation must assign exactly the formula's variables.
    pub fn evaluate(&self, valuation: &Valuation) -> Result<bool, ArityMismatch> {
        if valuation.num_variables() != self.num_variables {
            return Err(ArityMismatch {
                expected: self.num_variables,
                got: valuation.num_variables(),
            });
        }
        Ok(self.clauses.iter().all(|clause| {
            clause
                .literals()
                .iter()
                .any(|lit| lit.satisfied_by(valuation))
        }))
    }
}

impl Valuation {
    pub fn new(values: Vec<bool>) -> Self {
        Valuation { values }
    }

    pub fn num_variables(&self) -> usize {
        self.values.len()
    }

    /// Value of a 1-based variable. Panics if out of range.
    pub fn value(&self, variable: usize) -> bool {
        self.values[variable - 1]
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }
}
