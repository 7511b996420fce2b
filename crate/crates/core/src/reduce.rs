//! Polynomial reduction from (3,B2) formulas to packed interval covering,
//! with witness translation in both directions.
//!
//! For a formula with `n` variables and `m` clauses the target bound is
//! `N = 4n + m`. The block `[1, 4n]` carries truth values: variable `i` owns
//! the four points `4i-3 .. 4i`, its *variable pack* offering the true
//! interval `[4i-3, 4i-2]` and the false interval `[4i-1, 4i]`. Each point of
//! `[4n+1, 4n+m]` is a token witnessing that one clause is satisfied. Every
//! variable also contributes four *clause packs*, one per occurrence: each
//! pairs one of the variable's own points with the token of the clause
//! containing that occurrence, so the token can be selected exactly when the
//! literal is true and the variable-side point is already covered.

use thiserror::Error;

use crate::pic::{Interval, Pack, PicInstance, Selection, SelectionError};
use crate::sat::{B2Formula, Valuation, VariableOccurrences};

/// Bookkeeping linking formula variables and clauses to pack indices and
/// singleton positions. Together with `n` and `m` this determines the reduced
/// instance completely, so witnesses can be translated in both directions
/// without the formula at hand.
///
/// Pack layout: the `n` variable packs come first, then the clause packs
/// grouped by variable in occurrence order (first positive, second positive,
/// first negative, second negative).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionMap {
    num_variables: usize,
    num_clauses: usize,
    occurrences: Vec<VariableOccurrences>,
}

/// A reduced instance together with its translation map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub instance: PicInstance,
    pub map: ReductionMap,
}

/// Position of a clause pack within its variable's group of four.
const SLOT_COUNT: usize = 4;

impl ReductionMap {
    pub(crate) fn new(
        num_variables: usize,
        num_clauses: usize,
        occurrences: Vec<VariableOccurrences>,
    ) -> Self {
        debug_assert_eq!(occurrences.len(), num_variables);
        ReductionMap {
            num_variables,
            num_clauses,
            occurrences,
        }
    }

    pub fn num_variables(&self) -> usize {
        self.num_variables
    }

    pub fn num_clauses(&self) -> usize {
        self.num_clauses
    }

    /// Target bound of the reduced instance: `4n + m`.
    pub fn n_bound(&self) -> u64 {
        4 * self.num_variables as u64 + self.num_clauses as u64
    }

    /// Total pack count: `5n`.
    pub fn num_packs(&self) -> usize {
        5 * self.num_variables
    }

    /// Occurrence index of a 1-based variable.
    pub fn occurrences(&self, variable: usize) -> VariableOccurrences {
        self.occurrences[variable - 1]
    }

    /// 0-based pack index of a variable's two-interval pack.
    pub fn variable_pack(&self, variable: usize) -> usize {
        variable - 1
    }

    /// 0-based pack indices of a variable's four clause packs, in slot order.
    pub fn clause_packs(&self, variable: usize) -> [usize; SLOT_COUNT] {
        let base = self.num_variables + SLOT_COUNT * (variable - 1);
        [base, base + 1, base + 2, base + 3]
    }

    /// Interval selected in the variable pack when the variable is true.
    pub fn true_interval(&self, variable: usize) -> Interval {
        let v = variable as u64;
        Interval::new(4 * v - 3, 4 * v - 2)
    }

    /// Interval selected in the variable pack when the variable is false.
    pub fn false_interval(&self, variable: usize) -> Interval {
        let v = variable as u64;
        Interval::new(4 * v - 1, 4 * v)
    }

    /// The variable-side point paired into the clause pack at `slot`.
    fn slot_point(&self, variable: usize, slot: usize) -> u64 {
        4 * (variable as u64 - 1) + slot as u64 + 1
    }

    /// The 0-based clause whose token sits in the clause pack at `slot`.
    fn slot_clause(&self, variable: usize, slot: usize) -> usize {
        let occ = self.occurrences(variable);
        match slot {
            0 => occ.pos.0,
            1 => occ.pos.1,
            2 => occ.neg.0,
            _ => occ.neg.1,
        }
    }

    /// The token point of a 0-based clause: `4n + x` for clause number `x`.
    pub fn token_point(&self, clause: usize) -> u64 {
        4 * self.num_variables as u64 + clause as u64 + 1
    }

    /// Rebuilds the reduced instance this map describes.
    pub fn instance(&self) -> PicInstance {
        let n = self.num_variables;
        let mut packs = Vec::with_capacity(self.num_packs());
        for variable in 1..=n {
            packs.push(Pack::new(vec![
                self.true_interval(variable),
                self.false_interval(variable),
            ]));
        }
        for variable in 1..=n {
            for slot in 0..SLOT_COUNT {
                packs.push(Pack::new(vec![
                    Interval::point(self.slot_point(variable, slot)),
                    Interval::point(self.token_point(self.slot_clause(variable, slot))),
                ]));
            }
        }
        PicInstance::new(self.n_bound(), packs)
    }

    /// Translates a total valuation into a selection.
    ///
    /// A true variable selects its true interval and the tokens of its two
    /// positive occurrences; its negative clause packs fall back to their
    /// variable-side points, which the false interval no longer covers. A
    /// false variable does the opposite. Whenever the valuation satisfies the
    /// formula, every clause token gets selected by some occurrence and the
    /// result is a cover.
    pub fn lift_valuation(&self, valuation: &Valuation) -> Result<Selection, LiftError> {
        if valuation.num_variables() != self.num_variables {
            return Err(LiftError::ArityMismatch {
                expected: self.num_variables,
                got: valuation.num_variables(),
            });
        }
        let mut choices = vec![0usize; self.num_packs()];
        for variable in 1..=self.num_variables {
            let value = valuation.value(variable);
            choices[self.variable_pack(variable)] = if value { 0 } else { 1 };
            let packs = self.clause_packs(variable);
            for (slot, &pack) in packs.iter().enumerate() {
                let positive_slot = slot < 2;
                // Token when the literal in this slot is true, point otherwise.
                choices[pack] = if positive_slot == value { 1 } else { 0 };
            }
        }
        Ok(Selection::new(choices))
    }

    /// Rewrites a covering selection so that every point of `[1, 4n]` is
    /// covered exactly once, leaving variable-pack choices untouched.
    ///
    /// A clause pack switches to its token exactly when its variable-side
    /// point is already covered by the selected variable-pack interval. Token
    /// choices only ever grow, so the result still covers; the operation is
    /// idempotent.
    pub fn normalize_selection(&self, selection: &Selection) -> Result<Selection, NormalizeError> {
        let instance = self.instance();
        if !instance.verify_cover(selection)? {
            return Err(NormalizeError::NotACover);
        }
        let mut choices = selection.choices().to_vec();
        for variable in 1..=self.num_variables {
            let chosen = if choices[self.variable_pack(variable)] == 0 {
                self.true_interval(variable)
            } else {
                self.false_interval(variable)
            };
            for (slot, &pack) in self.clause_packs(variable).iter().enumerate() {
                let point = self.slot_point(variable, slot);
                choices[pack] = if chosen.contains(point) { 1 } else { 0 };
            }
        }
        Ok(Selection::new(choices))
    }

    /// Reads a valuation off a normalized covering selection: a variable is
    /// true iff its variable pack selected the true interval.
    ///
    /// Requires the selection to cover and to cover `[1, 4n]` exactly once;
    /// under those conditions every clause token is selected by an occurrence
    /// whose literal the derived valuation makes true, so the valuation
    /// satisfies the source formula.
    pub fn extract_valuation(&self, selection: &Selection) -> Result<Valuation, ExtractError> {
        let instance = self.instance();
        if !instance.verify_cover(selection)? {
            return Err(ExtractError::NotACover);
        }
        if !self.variable_region_covered_once(&instance, selection) {
            return Err(ExtractError::NotNormalized);
        }
        Ok(Valuation::new(
            (1..=self.num_variables)
                .map(|variable| selection.choices()[self.variable_pack(variable)] == 0)
                .collect(),
        ))
    }

    /// Endpoint sweep checking that `[1, 4n]` is covered exactly once: the
    /// chosen intervals clipped to the variable region must tile it with
    /// neither gap nor overlap.
    fn variable_region_covered_once(&self, instance: &PicInstance, selection: &Selection) -> bool {
        let bound = 4 * self.num_variables as u64;
        let mut clipped: Vec<Interval> = instance
            .chosen_intervals(selection)
            .expect("selection validated by verify_cover")
            .into_iter()
            .filter(|iv| iv.lo() <= bound)
            .map(|iv| Interval::new(iv.lo(), iv.hi().min(bound)))
            .collect();
        clipped.sort_unstable();
        let mut next = 1u64;
        for iv in clipped {
            if iv.lo() != next {
                return false;
            }
            next = iv.hi() + 1;
        }
        next == bound + 1
    }
}

/// Builds the covering instance for a validated (3,B2) formula.
///
/// The output has bound `4n + m` and `5n` packs in the canonical layout
/// described on [`ReductionMap`].
pub fn reduce(formula: &B2Formula) -> Reduction {
    let map = ReductionMap::new(
        formula.num_variables(),
        formula.num_clauses(),
        formula.occurrence_table().to_vec(),
    );
    let instance = map.instance();
    debug_assert!(instance.validate().is_ok());
    Reduction { instance, map }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("valuation assigns {got} variables but the map expects {expected}")]
    ArityMismatch { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error(transparent)]
    Selection(#[from] SelectionError),
    #[error("selection does not cover the target interval")]
    NotACover,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error(transparent)]
    Selection(#[from] SelectionError),
    #[error("selection does not cover the target interval")]
    NotACover,
    #[error("selection covers the variable region more than once; normalize it first")]
    NotNormalized,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::example_b2_cnf;
    use crate::sat::validate_b2;

    fn example_reduction() -> Reduction {
        reduce(&validate_b2(example_b2_cnf()).unwrap())
    }

    #[test]
    fn worked_example_layout() {
        let Reduction { instance, map } = example_reduction();
        assert_eq!(instance.n_bound(), 16);
        assert_eq!(instance.num_packs(), 15);
        assert_eq!(map.n_bound(), 16);

        let iv = Interval::new;
        let pt = Interval::point;
        let expected: Vec<Vec<Interval>> = vec![
            // Variable packs.
            vec![iv(1, 2), iv(3, 4)],
            vec![iv(5, 6), iv(7, 8)],
            vec![iv(9, 10), iv(11, 12)],
            // Clause packs for variable 1.
            vec![pt(1), pt(13)],
            vec![pt(2), pt(14)],
            vec![pt(3), pt(15)],
            vec![pt(4), pt(16)],
            // Variable 2.
            vec![pt(5), pt(13)],
            vec![pt(6), pt(16)],
            vec![pt(7), pt(14)],
            vec![pt(8), pt(15)],
            // Variable 3.
            vec![pt(9), pt(13)],
            vec![pt(10), pt(16)],
            vec![pt(11), pt(14)],
            vec![pt(12), pt(15)],
        ];
        let actual: Vec<Vec<Interval>> = instance
            .packs()
            .iter()
            .map(|p| p.intervals().to_vec())
            .collect();
        assert_eq!(actual, expected);
        assert!(instance.validate().is_ok());
    }

    #[test]
    fn pack_arithmetic() {
        let map = example_reduction().map;
        assert_eq!(map.variable_pack(1), 0);
        assert_eq!(map.clause_packs(1), [3, 4, 5, 6]);
        assert_eq!(map.clause_packs(3), [11, 12, 13, 14]);
        assert_eq!(map.token_point(0), 13);
        assert_eq!(map.token_point(3), 16);
    }

    #[test]
    fn variable_intervals_are_disjoint() {
        let map = example_reduction().map;
        let mut intervals = Vec::new();
        for v in 1..=map.num_variables() {
            intervals.push(map.true_interval(v));
            intervals.push(map.false_interval(v));
        }
        for (a, &ia) in intervals.iter().enumerate() {
            for &ib in &intervals[a + 1..] {
                assert!(ia.hi() < ib.lo() || ib.hi() < ia.lo());
            }
        }
    }

    #[test]
    fn each_token_appears_in_three_clause_packs() {
        let Reduction { instance, map } = example_reduction();
        for clause in 0..map.num_clauses() {
            let token = map.token_point(clause);
            let count = instance.packs()[map.num_variables()..]
                .iter()
                .filter(|pack| pack.intervals().iter().any(|iv| iv.contains(token)))
                .count();
            assert_eq!(count, 3);
        }
    }

    #[test]
    fn lift_of_satisfying_valuation_covers() {
        let Reduction { instance, map } = example_reduction();
        let valuation = Valuation::new(vec![true, true, false]);
        let selection = map.lift_valuation(&valuation).unwrap();
        // Variable packs: T, T, F; per-variable clause packs as token/point.
        assert_eq!(
            selection.choices(),
            &[0, 0, 1, 1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 1, 1]
        );
        assert_eq!(instance.verify_cover(&selection), Ok(true));
    }

    #[test]
    fn lift_of_falsifying_valuation_leaves_a_token_uncovered() {
        let Reduction { instance, map } = example_reduction();
        // All-false falsifies the first clause (three positive literals).
        let valuation = Valuation::new(vec![false, false, false]);
        let selection = map.lift_valuation(&valuation).unwrap();
        assert_eq!(instance.verify_cover(&selection), Ok(false));
        // The uncovered point is precisely the first clause's token.
        let chosen = instance.chosen_intervals(&selection).unwrap();
        let token = map.token_point(0);
        assert!(chosen.iter().all(|iv| !iv.contains(token)));
    }

    #[test]
    fn lift_rejects_partial_valuations() {
        let map = example_reduction().map;
        assert_eq!(
            map.lift_valuation(&Valuation::new(vec![true])),
            Err(LiftError::ArityMismatch {
                expected: 3,
                got: 1
            })
        );
    }

    #[test]
    fn normalization_undoes_a_double_cover() {
        let map = example_reduction().map;
        let lifted = map
            .lift_valuation(&Valuation::new(vec![true, true, false]))
            .unwrap();
        // Flip variable 1's first clause pack to its variable-side point {1},
        // doubly covering point 1 (the true interval [1,2] already has it).
        let mut tampered = lifted.choices().to_vec();
        tampered[map.clause_packs(1)[0]] = 0;
        let tampered = Selection::new(tampered);
        assert_eq!(map.instance().verify_cover(&tampered), Ok(true));

        let normalized = map.normalize_selection(&tampered).unwrap();
        assert_eq!(normalized, lifted);
    }

    #[test]
    fn normalization_is_idempotent_and_preserves_variable_choices() {
        let map = example_reduction().map;
        let lifted = map
            .lift_valuation(&Valuation::new(vec![true, true, false]))
            .unwrap();
        let once = map.normalize_selection(&lifted).unwrap();
        assert_eq!(once, lifted);
        let twice = map.normalize_selection(&once).unwrap();
        assert_eq!(twice, once);
    }

    #[test]
    fn normalization_rejects_non_covers() {
        let map = example_reduction().map;
        let bad = map
            .lift_valuation(&Valuation::new(vec![false, false, false]))
            .unwrap();
        assert_eq!(
            map.normalize_selection(&bad),
            Err(NormalizeError::NotACover)
        );
    }

    #[test]
    fn extraction_roundtrips_the_lift() {
        let map = example_reduction().map;
        let valuation = Valuation::new(vec![true, true, false]);
        let lifted = map.lift_valuation(&valuation).unwrap();
        let normalized = map.normalize_selection(&lifted).unwrap();
        let extracted = map.extract_valuation(&normalized).unwrap();
        assert_eq!(extracted, valuation);
    }

    #[test]
    fn extraction_reads_variable_packs() {
        let map = example_reduction().map;
        // All-true: every variable pack picks its true interval.
        let lifted = map
            .lift_valuation(&Valuation::new(vec![true, true, true]))
            .unwrap();
        for v in 1..=3 {
            assert_eq!(lifted.choices()[map.variable_pack(v)], 0);
        }
    }

    #[test]
    fn reduced_example_is_coverable_by_every_solver() {
        let instance = example_reduction().instance;
        // 15 packs of size 2: well within the oracle guard.
        assert!(crate::solve::solve_brute_force(&instance)
            .unwrap()
            .is_some());
        assert!(crate::solve::solve_backtracking(&instance).is_some());
        assert!(crate::solve::solve_via_sat(&instance).unwrap().is_some());
    }

    #[test]
    fn no_cover_selects_every_false_interval() {
        // The first clause has three positive literals, so with all variable
        // packs on their false interval no clause pack can supply its token:
        // exhaustively, no such selection covers.
        let Reduction { instance, map } = example_reduction();
        let sizes: Vec<usize> = instance.packs().iter().map(|p| p.len()).collect();
        let mut choices = vec![0usize; sizes.len()];
        loop {
            let all_false = (1..=3).all(|v| choices[map.variable_pack(v)] == 1);
            if all_false {
                let selection = Selection::new(choices.clone());
                assert_eq!(instance.verify_cover(&selection), Ok(false));
            }
            let mut pos = choices.len();
            loop {
                if pos == 0 {
                    return;
                }
                pos -= 1;
                choices[pos] += 1;
                if choices[pos] < sizes[pos] {
                    break;
                }
                choices[pos] = 0;
            }
        }
    }

    #[test]
    fn extraction_rejects_unnormalized_covers() {
        let map = example_reduction().map;
        let lifted = map
            .lift_valuation(&Valuation::new(vec![true, true, false]))
            .unwrap();
        let mut tampered = lifted.choices().to_vec();
        tampered[map.clause_packs(1)[0]] = 0;
        let tampered = Selection::new(tampered);
        assert_eq!(
            map.extract_valuation(&tampered),
            Err(ExtractError::NotNormalized)
        );
    }
}
