//! Differential tests pitting the three decision procedures against each
//! other and against coordinate compression.

use pic_core::gen::{random_instance, PicGenConfig};
use pic_core::pic::{Interval, Pack, PicInstance, Selection};
use pic_core::solve::{solve_backtracking, solve_brute_force, solve_via_sat};

fn assert_all_agree(instance: &PicInstance) {
    let oracle = solve_brute_force(instance).expect("within guard");
    let backtrack = solve_backtracking(instance);
    let sat = solve_via_sat(instance).expect("decode must succeed");

    assert_eq!(oracle.is_some(), backtrack.is_some(), "{instance:?}");
    assert_eq!(oracle.is_some(), sat.is_some(), "{instance:?}");
    for witness in [oracle, backtrack, sat].into_iter().flatten() {
        assert_eq!(instance.verify_cover(&witness), Ok(true), "{instance:?}");
    }
}

#[test]
fn three_way_agreement_on_random_instances() {
    for seed in 0..200 {
        let instance = random_instance(&PicGenConfig {
            seed,
            n_bound: 1 + seed % 12,
            num_packs: 1 + (seed as usize * 7) % 6,
            max_pack_size: 1 + (seed as usize * 3) % 4,
        });
        assert_all_agree(&instance);
    }
}

#[test]
fn agreement_on_handpicked_edges() {
    let cases = vec![
        // Single covering singleton.
        PicInstance::new(1, vec![Pack::new(vec![Interval::point(1)])]),
        // Uncoverable point.
        PicInstance::new(2, vec![Pack::new(vec![Interval::point(1)])]),
        // Empty pack poisons an otherwise coverable instance.
        PicInstance::new(
            3,
            vec![Pack::new(vec![Interval::new(1, 3)]), Pack::new(vec![])],
        ),
        // Overlap is fine; cover need not be exact.
        PicInstance::new(
            4,
            vec![
                Pack::new(vec![Interval::new(1, 3)]),
                Pack::new(vec![Interval::new(2, 4)]),
            ],
        ),
        // Must pick the second interval in both packs.
        PicInstance::new(
            6,
            vec![
                Pack::new(vec![Interval::new(2, 3), Interval::new(1, 3)]),
                Pack::new(vec![Interval::new(5, 6), Interval::new(4, 6)]),
            ],
        ),
    ];
    for instance in &cases {
        assert_all_agree(instance);
    }
}

#[test]
fn verdicts_survive_compression() {
    for seed in 200..320 {
        let instance = random_instance(&PicGenConfig {
            seed,
            n_bound: 1 + (seed * seed) % 100,
            num_packs: 1 + (seed as usize) % 5,
            max_pack_size: 1 + (seed as usize) % 3,
        });
        let compressed = instance.compress();
        let original = solve_backtracking(&instance);
        let remapped = solve_backtracking(compressed.instance());
        assert_eq!(original.is_some(), remapped.is_some());
        // Pack structure is preserved, so witnesses transfer verbatim.
        if let Some(witness) = remapped {
            assert_eq!(instance.verify_cover(&witness), Ok(true));
        }
        if let Some(witness) = original {
            assert_eq!(compressed.instance().verify_cover(&witness), Ok(true));
        }
    }
}

#[test]
fn oracle_verdicts_survive_compression_at_large_bounds() {
    for seed in 0..60 {
        // Large bounds, few intervals: exercises the binary-encoding path.
        let instance = random_instance(&PicGenConfig {
            seed: 1000 + seed,
            n_bound: 1 + (seed * 77_003) % 1_000_000,
            num_packs: 1 + (seed as usize) % 4,
            max_pack_size: 1 + (seed as usize) % 3,
        });
        assert!(instance.total_intervals() <= 12);
        let compressed = instance.compress();
        let original = solve_brute_force(&instance).unwrap();
        let remapped = solve_brute_force(compressed.instance()).unwrap();
        assert_eq!(original.is_some(), remapped.is_some());
        if let (Some(a), Some(b)) = (&original, &remapped) {
            assert_eq!(instance.verify_cover(a), Ok(true));
            assert_eq!(instance.verify_cover(b), Ok(true));
            assert_eq!(compressed.instance().verify_cover(a), Ok(true));
        }
    }
}

#[test]
fn witnesses_are_deterministic() {
    for seed in 0..40 {
        let instance = random_instance(&PicGenConfig {
            seed,
            n_bound: 10,
            num_packs: 4,
            max_pack_size: 3,
        });
        assert_eq!(solve_backtracking(&instance), solve_backtracking(&instance));
        assert_eq!(
            solve_via_sat(&instance).unwrap(),
            solve_via_sat(&instance).unwrap()
        );
        assert_eq!(
            solve_brute_force(&instance).unwrap(),
            solve_brute_force(&instance).unwrap()
        );
    }
}

#[test]
fn point_oracle_agrees_with_the_sweep() {
    // verify_cover against a point-by-point check on every selection of
    // small instances.
    for seed in 0..60 {
        let instance = random_instance(&PicGenConfig {
            seed: 3000 + seed,
            n_bound: 1 + seed % 9,
            num_packs: 1 + (seed as usize) % 3,
            max_pack_size: 1 + (seed as usize) % 3,
        });
        let sizes: Vec<usize> = instance.packs().iter().map(Pack::len).collect();
        let mut choices = vec![0usize; sizes.len()];
        loop {
            let selection = Selection::new(choices.clone());
            let chosen = instance.chosen_intervals(&selection).unwrap();
            let pointwise =
                (1..=instance.n_bound()).all(|p| chosen.iter().any(|iv| iv.contains(p)));
            assert_eq!(instance.verify_cover(&selection), Ok(pointwise));

            let mut pos = choices.len();
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                choices[pos] += 1;
                if choices[pos] < sizes[pos] {
                    break;
                }
                choices[pos] = 0;
            }
            if choices.iter().all(|&c| c == 0) {
                break;
            }
        }
    }
}
