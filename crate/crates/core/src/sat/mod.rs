//! CNF formulas, a DPLL satisfiability engine, an exhaustive oracle, and
//! validation of the (3,B2) occurrence discipline.

mod b2;
mod cnf;
mod dpll;

pub use b2::{validate_b2, B2Error, B2Formula, B2Violation, VariableOccurrences};
pub use cnf::{ArityMismatch, Clause, CnfError, CnfFormula, Literal, Valuation};
pub use dpll::{brute_force_sat, dpll_solve, TooManyVariables, BRUTE_FORCE_VARIABLE_LIMIT};
