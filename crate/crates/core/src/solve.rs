//! Three exact decision procedures for covering instances.
//!
//! [`solve_brute_force`] is the trusted oracle: plain Cartesian enumeration
//! behind a size guard. [`solve_backtracking`] searches compressed
//! coordinates, branching on the leftmost uncovered segment.
//! [`solve_via_sat`] encodes pack selection into CNF and runs the DPLL
//! engine. All three return witnesses that pass the cover verifier, and all
//! three agree on solvability.

use thiserror::Error;

use crate::pic::{PicInstance, Selection};
use crate::sat::{dpll_solve, Clause, CnfFormula, Literal, Valuation};

/// Cartesian-product bound above which [`solve_brute_force`] refuses to run.
pub const BRUTE_FORCE_PRODUCT_LIMIT: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("search space of {product} selections exceeds the cap of {limit}")]
pub struct SearchSpaceTooLarge {
    pub product: u128,
    pub limit: u128,
}

/// Enumerates the full Cartesian product of pack choices in lexicographic
/// witness order and returns the first selection that covers.
///
/// An instance containing an empty pack is immediately negative. Beyond the
/// product guard the oracle refuses rather than run unbounded.
pub fn solve_brute_force(instance: &PicInstance) -> Result<Option<Selection>, SearchSpaceTooLarge> {
    if instance.packs().iter().any(|p| p.is_empty()) {
        return Ok(None);
    }
    let mut product: u128 = 1;
    for pack in instance.packs() {
        product = product.saturating_mul(pack.len() as u128);
    }
    if product > BRUTE_FORCE_PRODUCT_LIMIT {
        return Err(SearchSpaceTooLarge {
            product,
            limit: BRUTE_FORCE_PRODUCT_LIMIT,
        });
    }

    let mut choices = vec![0usize; instance.num_packs()];
    loop {
        let selection = Selection::new(choices.clone());
        if instance
            .verify_cover(&selection)
            .expect("odometer indices are in range")
        {
            return Ok(Some(selection));
        }
        // Advance the odometer, last pack fastest.
        let mut pos = choices.len();
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            choices[pos] += 1;
            if choices[pos] < instance.packs()[pos].len() {
                break;
            }
            choices[pos] = 0;
        }
    }
}

/// Complete backtracking search over compressed segments.
///
/// Branches on the leftmost uncovered segment, trying every still-unused pack
/// and every one of its intervals covering that segment, packs in ascending
/// index and intervals in pack order. Once everything is covered, packs that
/// were never needed take their first interval. Deterministic, and its cost
/// is independent of the magnitude of `N`.
pub fn solve_backtracking(instance: &PicInstance) -> Option<Selection> {
    if instance.packs().iter().any(|p| p.is_empty()) {
        return None;
    }
    let compressed = instance.compress();
    let remapped = compressed.instance();
    let num_segments = compressed.num_segments();

    // Segments each pack can reach with at least one of its intervals,
    // deduplicated. Used for forward checking: a branch is dead as soon as
    // some uncovered segment has no unused pack left that could reach it.
    let pack_spans: Vec<Vec<u64>> = remapped
        .packs()
        .iter()
        .map(|pack| {
            let mut reachable = vec![false; num_segments + 1];
            for iv in pack.intervals() {
                for s in iv.lo()..=iv.hi() {
                    reachable[s as usize] = true;
                }
            }
            (1..=num_segments as u64)
                .filter(|&s| reachable[s as usize])
                .collect()
        })
        .collect();
    let mut candidates = vec![0u32; num_segments + 1];
    for span in &pack_spans {
        for &s in span {
            candidates[s as usize] += 1;
        }
    }
    if candidates[1..].contains(&0) {
        return None;
    }

    let mut state = Backtracker {
        instance: remapped,
        pack_spans,
        assigned: vec![None; instance.num_packs()],
        cover_count: vec![0u32; num_segments + 1],
        candidates,
    };
    if !state.search(1) {
        return None;
    }
    let selection = Selection::new(
        state
            .assigned
            .iter()
            .map(|choice| choice.unwrap_or(0))
            .collect(),
    );
    debug_assert_eq!(instance.verify_cover(&selection), Ok(true));
    Some(selection)
}

struct Backtracker<'a> {
    instance: &'a PicInstance,
    pack_spans: Vec<Vec<u64>>,
    assigned: Vec<Option<usize>>,
    /// Per-segment count of chosen intervals covering it (1-based segments).
    cover_count: Vec<u32>,
    /// Per-segment count of unused packs able to cover it.
    candidates: Vec<u32>,
}

impl Backtracker<'_> {
    fn search(&mut self, from_segment: u64) -> bool {
        let bound = self.instance.n_bound();
        let mut segment = from_segment;
        while segment <= bound && self.cover_count[segment as usize] > 0 {
            segment += 1;
        }
        if segment > bound {
            return true;
        }
        for pack_index in 0..self.instance.num_packs() {
            if self.assigned[pack_index].is_some() {
                continue;
            }
            let pack = &self.instance.packs()[pack_index];
            let mut any_interval_fits = false;
            for (t, iv) in pack.intervals().iter().enumerate() {
                if !iv.contains(segment) {
                    continue;
                }
                if !any_interval_fits {
                    // Consume the pack once, before its first fitting interval.
                    any_interval_fits = true;
                    for &s in &self.pack_spans[pack_index] {
                        self.candidates[s as usize] -= 1;
                    }
                }
                self.assigned[pack_index] = Some(t);
                for s in iv.lo()..=iv.hi() {
                    self.cover_count[s as usize] += 1;
                }
                if self.feasible(pack_index) && self.search(segment) {
                    return true;
                }
                for s in iv.lo()..=iv.hi() {
                    self.cover_count[s as usize] -= 1;
                }
                self.assigned[pack_index] = None;
            }
            if any_interval_fits {
                for &s in &self.pack_spans[pack_index] {
                    self.candidates[s as usize] += 1;
                }
            }
        }
        false
    }

    /// After consuming `pack_index`, only segments it could have reached can
    /// newly run out of candidates.
    fn feasible(&self, pack_index: usize) -> bool {
        self.pack_spans[pack_index]
            .iter()
            .all(|&s| self.cover_count[s as usize] > 0 || self.candidates[s as usize] > 0)
    }
}

/// CNF encoding of pack selection: one selector variable per (pack, interval)
/// pair, an exactly-one constraint per pack, and one coverage clause per
/// compressed segment.
#[derive(Debug, Clone)]
pub struct CnfEncoding {
    formula: CnfFormula,
    /// Selector variables of each pack, in interval order. Variable ids are
    /// consecutive, so variable `v` belongs to the pack whose range contains
    /// it.
    pack_selectors: Vec<Vec<usize>>,
    num_segments: usize,
}

impl CnfEncoding {
    pub fn formula(&self) -> &CnfFormula {
        &self.formula
    }

    pub fn pack_selectors(&self) -> &[Vec<usize>] {
        &self.pack_selectors
    }

    pub fn num_segments(&self) -> usize {
        self.num_segments
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("model arity {got} does not match the encoding's {expected} selectors")]
    ArityMismatch { expected: usize, got: usize },
    #[error("pack {pack}: model sets {count} selectors true, expected exactly 1")]
    SelectorCount { pack: usize, count: usize },
    #[error("decoded selection fails the cover verifier")]
    NotACover,
}

/// Encodes a well-formed instance into an equisatisfiable CNF formula.
///
/// An empty pack contributes an empty at-least-one clause, making the
/// formula trivially unsatisfiable, which matches the instance having no
/// selection at all.
pub fn encode_to_cnf(instance: &PicInstance) -> CnfEncoding {
    let compressed = instance.compress();
    let mut pack_selectors = Vec::with_capacity(instance.num_packs());
    let mut next_var = 1usize;
    for pack in instance.packs() {
        let vars: Vec<usize> = (next_var..next_var + pack.len()).collect();
        next_var += pack.len();
        pack_selectors.push(vars);
    }
    let num_variables = next_var - 1;

    let mut clauses = Vec::new();
    for vars in &pack_selectors {
        clauses.push(Clause::new(
            vars.iter().map(|&v| Literal::positive(v)).collect(),
        ));
        for (a, &va) in vars.iter().enumerate() {
            for &vb in &vars[a + 1..] {
                clauses.push(Clause::new(vec![
                    Literal::negative(va),
                    Literal::negative(vb),
                ]));
            }
        }
    }

    let remapped = compressed.instance();
    let num_segments = compressed.num_segments();
    for segment in 1..=num_segments as u64 {
        let mut cover = Vec::new();
        for (pack_index, pack) in remapped.packs().iter().enumerate() {
            for (t, iv) in pack.intervals().iter().enumerate() {
                if iv.contains(segment) {
                    cover.push(Literal::positive(pack_selectors[pack_index][t]));
                }
            }
        }
        clauses.push(Clause::new(cover));
    }

    let formula = CnfFormula::new(num_variables, clauses)
        .expect("selector variables are numbered consecutively");
    CnfEncoding {
        formula,
        pack_selectors,
        num_segments,
    }
}

/// Reads the selection out of a model of the encoding: the unique true
/// selector of each pack names the chosen interval.
pub fn decode_cnf_model(
    encoding: &CnfEncoding,
    valuation: &Valuation,
) -> Result<Selection, DecodeError> {
    if valuation.num_variables() != encoding.formula.num_variables() {
        return Err(DecodeError::ArityMismatch {
            expected: encoding.formula.num_variables(),
            got: valuation.num_variables(),
        });
    }
    let mut choices = Vec::with_capacity(encoding.pack_selectors.len());
    for (pack_index, vars) in encoding.pack_selectors.iter().enumerate() {
        let mut truthy = vars.iter().enumerate().filter(|(_, &v)| valuation.value(v));
        match (truthy.next(), truthy.count()) {
            (Some((t, _)), 0) => choices.push(t),
            (first, extra) => {
                return Err(DecodeError::SelectorCount {
                    pack: pack_index + 1,
                    count: extra + usize::from(first.is_some()),
                })
            }
        }
    }
    Ok(Selection::new(choices))
}

/// Decides an instance by encoding, solving with DPLL, and decoding.
///
/// A decode failure or an unverifiable witness signals an encoder bug, never
/// a property of the instance.
pub fn solve_via_sat(instance: &PicInstance) -> Result<Option<Selection>, DecodeError> {
    let encoding = encode_to_cnf(instance);
    match dpll_solve(encoding.formula()) {
        None => Ok(None),
        Some(model) => {
            let selection = decode_cnf_model(&encoding, &model)?;
            match instance.verify_cover(&selection) {
                Ok(true) => Ok(Some(selection)),
                _ => Err(DecodeError::NotACover),
            }
        }
    }
}
