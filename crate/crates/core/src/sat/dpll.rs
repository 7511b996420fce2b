//! A complete DPLL engine with unit propagation and pure-literal
//! elimination, plus an exhaustive oracle for cross-checking.

use thiserror::Error;

use super::{Clause, CnfFormula, Valuation};

/// Variable count above which [`brute_force_sat`] refuses to run.
pub const BRUTE_FORCE_VARIABLE_LIMIT: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("formula has {got} variables, exhaustive search is capped at {limit}")]
pub struct TooManyVariables {
    pub got: usize,
    pub limit: usize,
}

/// Complete satisfiability search. Returns a total satisfying valuation iff
/// one exists.
///
/// The search is deterministic: units are applied in clause order, pure
/// literals in ascending variable order, and branching picks the lowest
/// unassigned variable occurring in an unresolved clause, positive side
/// first. Variables left unconstrained when the search succeeds are set to
/// false.
pub fn dpll_solve(formula: &CnfFormula) -> Option<Valuation> {
    let mut assignment: Vec<Option<bool>> = vec![None; formula.num_variables()];
    if search(formula.clauses(), &mut assignment) {
        Some(Valuation::new(
            assignment.into_iter().map(|v| v.unwrap_or(false)).collect(),
        ))
    } else {
        None
    }
}

#[derive(PartialEq, Eq)]
enum ClauseState {
    Satisfied,
    Conflict,
    Unit(usize, bool),
    Open,
}

fn clause_state(clause: &Clause, assignment: &[Option<bool>]) -> ClauseState {
    let mut unassigned = None;
    let mut unassigned_count = 0;
    for lit in clause.literals() {
        match assignment[lit.variable() - 1] {
            Some(value) if value == lit.is_positive() => return ClauseState::Satisfied,
            Some(_) => {}
            None => {
                unassigned_count += 1;
                if unassigned.is_none() {
                    unassigned = Some((lit.variable(), lit.is_positive()));
                }
            }
        }
    }
    match (unassigned_count, unassigned) {
        (0, _) => ClauseState::Conflict,
        (1, Some((var, value))) => ClauseState::Unit(var, value),
        _ => ClauseState::Open,
    }
}

/// Applies unit propagation to a fixpoint. Returns false on conflict.
fn propagate(clauses: &[Clause], assignment: &mut [Option<bool>]) -> bool {
    loop {
        let mut changed = false;
        for clause in clauses {
            match clause_state(clause, assignment) {
                ClauseState::Conflict => return false,
                ClauseState::Unit(var, value) => {
                    assignment[var - 1] = Some(value);
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            return true;
        }
    }
}

/// Assigns every literal that occurs with a single polarity among unresolved
/// clauses. Returns whether anything was assigned.
fn assign_pure_literals(clauses: &[Clause], assignment: &mut [Option<bool>]) -> bool {
    let n = assignment.len();
    let mut seen_positive = vec![false; n];
    let mut seen_negative = vec![false; n];
    for clause in clauses {
        if clause_state(clause, assignment) == ClauseState::Satisfied {
            continue;
        }
        for lit in clause.literals() {
            if assignment[lit.variable() - 1].is_none() {
                if lit.is_positive() {
                    seen_positive[lit.variable() - 1] = true;
                } else {
                    seen_negative[lit.variable() - 1] = true;
                }
            }
        }
    }
    let mut changed = false;
    for v in 0..n {
        if assignment[v].is_none() && seen_positive[v] != seen_negative[v] {
            assignment[v] = Some(seen_positive[v]);
            changed = true;
        }
    }
    changed
}

fn search(clauses: &[Clause], assignment: &mut Vec<Option<bool>>) -> bool {
    loop {
        if !propagate(clauses, assignment) {
            return false;
        }
        if !assign_pure_literals(clauses, assignment) {
            break;
        }
    }

    // Branch on the lowest unassigned variable of the first unresolved clause
    // set; if everything is satisfied we are done.
    let mut branch_var = None;
    for clause in clauses {
        if clause_state(clause, assignment) != ClauseState::Satisfied {
            let lowest = clause
                .literals()
                .iter()
                .filter(|lit| assignment[lit.variable() - 1].is_none())
                .map(|lit| lit.variable())
                .min()
                .expect("unresolved clause must have an unassigned literal");
            branch_var = Some(branch_var.map_or(lowest, |v: usize| v.min(lowest)));
        }
    }
    let Some(var) = branch_var else {
        return true;
    };

    for value in [true, false] {
        let mut trail = assignment.clone();
        trail[var - 1] = Some(value);
        if search(clauses, &mut trail) {
            *assignment = trail;
            return true;
        }
    }
    false
}

/// Exhaustive oracle: tries all assignments in lexicographic order over
/// `(v1, ..., vn)` with false before true, returning the first satisfying
/// one. Refuses formulas above [`BRUTE_FORCE_VARIABLE_LIMIT`].
pub fn brute_force_sat(formula: &CnfFormula) -> Result<Option<Valuation>, TooManyVariables> {
    let n = formula.num_variables();
    if n > BRUTE_FORCE_VARIABLE_LIMIT {
        return Err(TooManyVariables {
            got: n,
            limit: BRUTE_FORCE_VARIABLE_LIMIT,
        });
    }
    for bits in 0u64..(1u64 << n) {
        let valuation = Valuation::new((0..n).map(|i| bits >> (n - 1 - i) & 1 == 1).collect());
        if formula
            .evaluate(&valuation)
            .expect("valuation constructed with matching arity")
        {
            return Ok(Some(valuation));
        }
    }
    Ok(None)
}
