//! Seeded random generators for covering instances and (3,B2) formulas.
//!
//! Reproducibility is part of the format guarantee: generation runs on a
//! ChaCha8 stream seeded with the configured 64-bit value, so the same
//! configuration yields byte-identical documents across runs and machines.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::pic::{Interval, Pack, PicInstance};
use crate::sat::{validate_b2, B2Formula, CnfFormula, Literal};

/// Parameters for random instance generation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PicGenConfig {
    pub seed: u64,
    pub n_bound: u64,
    pub num_packs: usize,
    pub max_pack_size: usize,
}

/// Parameters for random (3,B2) formula generation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct B2GenConfig {
    pub seed: u64,
    pub num_variables: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("variable count {got} must be a positive multiple of 3 (clause count is 4n/3)")]
pub struct InvalidVariableCount {
    pub got: usize,
}

/// Generates a well-formed instance: pack sizes uniform in
/// `[1, max_pack_size]`, endpoints uniform with `lo <= hi <= N`, duplicates
/// within a pack resampled.
///
/// A pack size is silently capped at the number of distinct intervals
/// available, which only matters for tiny bounds (at `N = 1` every pack is
/// the single interval `[1,1]`).
pub fn random_instance(config: &PicGenConfig) -> PicInstance {
    assert!(config.n_bound >= 1, "bound must be at least 1");
    assert!(config.num_packs >= 1, "at least one pack");
    assert!(
        config.max_pack_size >= 1,
        "packs need room for one interval"
    );

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let distinct = distinct_interval_count(config.n_bound);
    let packs = (0..config.num_packs)
        .map(|_| {
            let size = rng.gen_range(1..=config.max_pack_size);
            let size = (size as u128).min(distinct) as usize;
            let mut intervals: Vec<Interval> = Vec::with_capacity(size);
            while intervals.len() < size {
                let lo = rng.gen_range(1..=config.n_bound);
                let hi = rng.gen_range(lo..=config.n_bound);
                let iv = Interval::new(lo, hi);
                if !intervals.contains(&iv) {
                    intervals.push(iv);
                }
            }
            Pack::new(intervals)
        })
        .collect();
    let instance = PicInstance::new(config.n_bound, packs);
    debug_assert!(instance.validate().is_ok());
    instance
}

fn distinct_interval_count(n: u64) -> u128 {
    let n = n as u128;
    n * (n + 1) / 2
}

/// Generates a formula satisfying the (3,B2) discipline.
///
/// The multiset holding every variable twice positively and twice negatively
/// is shuffled into clause triples; a triple repeating a variable gets a
/// bounded number of repair swaps against later positions, and if the deck
/// cannot be repaired it is reshuffled wholesale.
pub fn random_b2_formula(config: &B2GenConfig) -> Result<B2Formula, InvalidVariableCount> {
    let n = config.num_variables;
    if n == 0 || !n.is_multiple_of(3) {
        return Err(InvalidVariableCount { got: n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let mut deck: Vec<Literal> = Vec::with_capacity(4 * n);
    for v in 1..=n {
        deck.push(Literal::positive(v));
        deck.push(Literal::positive(v));
        deck.push(Literal::negative(v));
        deck.push(Literal::negative(v));
    }

    loop {
        shuffle(&mut deck, &mut rng);
        if repair_triples(&mut deck, &mut rng) {
            let clauses = deck
                .chunks_exact(3)
                .map(|c| c.iter().copied().collect())
                .collect();
            let formula = CnfFormula::new(n, clauses).expect("deck literals stay within 1..=n");
            return Ok(validate_b2(formula)
                .expect("distinct triples over an exact 2+/2- multiset satisfy the discipline"));
        }
    }
}

/// Fisher-Yates with explicit index draws, keeping the byte stream stable.
fn shuffle(deck: &mut [Literal], rng: &mut ChaCha8Rng) {
    for i in (1..deck.len()).rev() {
        let j = rng.gen_range(0..=i);
        deck.swap(i, j);
    }
}

/// Makes every triple variable-distinct by swapping offenders with random
/// positions outside the triple. Gives up (for a full reshuffle) after a
/// bounded number of attempts per triple.
fn repair_triples(deck: &mut [Literal], rng: &mut ChaCha8Rng) -> bool {
    const ATTEMPTS: usize = 64;
    let len = deck.len();
    for triple in 0..len / 3 {
        let start = 3 * triple;
        let mut attempts = 0;
        while let Some(offender) = repeated_slot(&deck[start..start + 3]) {
            attempts += 1;
            if attempts > ATTEMPTS {
                return false;
            }
            let other = rng.gen_range(0..len - 3);
            let other = if other >= start { other + 3 } else { other };
            deck.swap(start + offender, other);
        }
    }
    // Swaps may have disturbed earlier triples; accept only a clean deck.
    (0..len / 3).all(|t| repeated_slot(&deck[3 * t..3 * t + 3]).is_none())
}

fn repeated_slot(triple: &[Literal]) -> Option<usize> {
    if triple[1].variable() == triple[0].variable() {
        Some(1)
    } else if triple[2].variable() == triple[0].variable()
        || triple[2].variable() == triple[1].variable()
    {
        Some(2)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances_are_reproducible() {
        let config = PicGenConfig {
            seed: 1,
            n_bound: 9,
            num_packs: 3,
            max_pack_size: 3,
        };
        let a = random_instance(&config);
        let b = random_instance(&config);
        assert_eq!(a, b);
        assert!(a.validate().is_ok());
    }

    #[test]
    fn different_seeds_differ() {
        let mut config = PicGenConfig {
            seed: 1,
            n_bound: 30,
            num_packs: 5,
            max_pack_size: 4,
        };
        let a = random_instance(&config);
        config.seed = 2;
        let b = random_instance(&config);
        assert_ne!(a, b);
    }

    #[test]
    fn unit_bound_degenerates_to_single_points() {
        let config = PicGenConfig {
            seed: 7,
            n_bound: 1,
            num_packs: 4,
            max_pack_size: 3,
        };
        let instance = random_instance(&config);
        for pack in instance.packs() {
            assert_eq!(pack.intervals(), &[Interval::new(1, 1)]);
        }
    }

    #[test]
    fn choiceless_packs_leave_one_possible_selection() {
        let config = PicGenConfig {
            seed: 11,
            n_bound: 20,
            num_packs: 5,
            max_pack_size: 1,
        };
        let instance = random_instance(&config);
        assert!(instance.packs().iter().all(|p| p.len() == 1));
        // Solvability is decided by verifying the unique selection.
        let only = crate::pic::Selection::new(vec![0; instance.num_packs()]);
        let covers = instance.verify_cover(&only).unwrap();
        assert_eq!(
            crate::solve::solve_backtracking(&instance).is_some(),
            covers
        );
    }

    #[test]
    fn generated_instances_are_wellformed() {
        for seed in 0..1000 {
            let config = PicGenConfig {
                seed,
                n_bound: 1 + seed % 50,
                num_packs: 1 + (seed as usize) % 6,
                max_pack_size: 1 + (seed as usize) % 4,
            };
            assert!(random_instance(&config).validate().is_ok());
        }
    }

    #[test]
    fn formulas_satisfy_the_discipline() {
        for seed in 0..1000 {
            let n = 3 * (1 + (seed as usize) % 3);
            let b2 = random_b2_formula(&B2GenConfig {
                seed,
                num_variables: n,
            })
            .unwrap();
            assert_eq!(b2.num_clauses(), 4 * n / 3);
        }
    }

    #[test]
    fn formula_shapes_follow_the_slot_identity() {
        let b2 = random_b2_formula(&B2GenConfig {
            seed: 3,
            num_variables: 3,
        })
        .unwrap();
        assert_eq!(b2.num_clauses(), 4);
        let b2 = random_b2_formula(&B2GenConfig {
            seed: 3,
            num_variables: 6,
        })
        .unwrap();
        assert_eq!(b2.num_clauses(), 8);
    }

    #[test]
    fn non_multiple_of_three_is_rejected() {
        assert_eq!(
            random_b2_formula(&B2GenConfig {
                seed: 0,
                num_variables: 4
            }),
            Err(InvalidVariableCount { got: 4 })
        );
    }

    #[test]
    fn formulas_are_reproducible() {
        let config = B2GenConfig {
            seed: 7,
            num_variables: 9,
        };
        assert_eq!(
            random_b2_formula(&config).unwrap(),
            random_b2_formula(&config).unwrap()
        );
    }
}
