use std::fmt;

use thiserror::Error;

use super::Interval;

/// A finite set of candidate intervals from which exactly one must be chosen.
///
/// The interval order is significant only for witness indexing; the pack is a
/// set otherwise, and duplicates are a well-formedness violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pack {
    intervals: Vec<Interval>,
}

impl Pack {
    pub fn new(intervals: Vec<Interval>) -> Self {
        Pack { intervals }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<Interval> {
        self.intervals.get(index).copied()
    }
}

impl FromIterator<Interval> for Pack {
    fn from_iter<T: IntoIterator<Item = Interval>>(iter: T) -> Self {
        Pack::new(iter.into_iter().collect())
    }
}

/// A covering instance: the target bound `N` together with the packs.
///
/// The decision question is whether one interval can be chosen from each pack
/// so that the chosen intervals' union is exactly `[1, N]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PicInstance {
    n_bound: u64,
    packs: Vec<Pack>,
}

/// One chosen interval per pack, identified by its position within the pack.
///
/// Indices are 0-based in memory; the text format writes them 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selection {
    choices: Vec<usize>,
}

impl Selection {
    pub fn new(choices: Vec<usize>) -> Self {
        Selection { choices }
    }

    pub fn choices(&self) -> &[usize] {
        &self.choices
    }

    pub fn len(&self) -> usize {
        self.choices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choices.is_empty()
    }
}

/// A well-formedness violation. Pack numbers are 1-based, matching the text
/// format's line order.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("target bound must be at least 1")]
    ZeroBound,
    #[error("pack {pack}: interval {interval} has lo > hi")]
    InvertedInterval { pack: usize, interval: Interval },
    #[error("pack {pack}: interval {interval} starts below 1")]
    ZeroEndpoint { pack: usize, interval: Interval },
    #[error("pack {pack}: interval {interval} exceeds the target bound {n_bound}")]
    ExceedsBound {
        pack: usize,
        interval: Interval,
        n_bound: u64,
    },
    #[error("pack {pack}: duplicate interval {interval}")]
    DuplicateInterval { pack: usize, interval: Interval },
}

/// Rejection of a structurally invalid witness, as opposed to a witness that
/// merely fails to cover. Pack numbers and indices are reported 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SelectionError {
    #[error("witness has {got} choices but the instance has {expected} packs")]
    LengthMismatch { expected: usize, got: usize },
    #[error("pack {pack}: choice {index} out of range (pack has {size} intervals)")]
    IndexOutOfRange {
        pack: usize,
        index: usize,
        size: usize,
    },
}

impl PicInstance {
    pub fn new(n_bound: u64, packs: Vec<Pack>) -> Self {
        PicInstance { n_bound, packs }
    }

    pub fn n_bound(&self) -> u64 {
        self.n_bound
    }

    pub fn packs(&self) -> &[Pack] {
        &self.packs
    }

    pub fn num_packs(&self) -> usize {
        self.packs.len()
    }

    pub fn total_intervals(&self) -> usize {
        self.packs.iter().map(Pack::len).sum()
    }

    /// Checks all well-formedness rules and reports every violation found.
    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let mut violations = Vec::new();
        if self.n_bound == 0 {
            violations.push(Violation::ZeroBound);
        }
        for (k, pack) in self.packs.iter().enumerate() {
            let pack_no = k + 1;
            for (t, &iv) in pack.intervals().iter().enumerate() {
                if iv.lo() > iv.hi() {
                    violations.push(Violation::InvertedInterval {
                        pack: pack_no,
                        interval: iv,
                    });
                    continue;
                }
                if iv.lo() == 0 {
                    violations.push(Violation::ZeroEndpoint {
                        pack: pack_no,
                        interval: iv,
                    });
                }
                if iv.hi() > self.n_bound {
                    violations.push(Violation::ExceedsBound {
                        pack: pack_no,
                        interval: iv,
                        n_bound: self.n_bound,
                    });
                }
                if pack.intervals()[..t].contains(&iv) {
                    violations.push(Violation::DuplicateInterval {
                        pack: pack_no,
                        interval: iv,
                    });
                }
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    pub fn is_wellformed(&self) -> bool {
        self.validate().is_ok()
    }

    /// Resolves a selection to the chosen intervals, rejecting invalid
    /// witnesses.
    pub fn chosen_intervals(&self, selection: &Selection) -> Result<Vec<Interval>, SelectionError> {
        if selection.len() != self.packs.len() {
            return Err(SelectionError::LengthMismatch {
                expected: self.packs.len(),
                got: selection.len(),
            });
        }
        self.packs
            .iter()
            .zip(selection.choices())
            .enumerate()
            .map(|(k, (pack, &index))| {
                pack.get(index).ok_or(SelectionError::IndexOutOfRange {
                    pack: k + 1,
                    index: index + 1,
                    size: pack.len(),
                })
            })
            .collect()
    }

    /// Decides whether the chosen intervals cover `[1, N]`.
    ///
    /// Runs a sweep over the sorted interval endpoints, so the cost depends on
    /// the number of packs, not on `N`. An invalid witness is an error,
    /// distinct from a `false` verdict.
    pub fn verify_cover(&self, selection: &Selection) -> Result<bool, SelectionError> {
        let mut chosen = self.chosen_intervals(selection)?;
        chosen.sort_unstable();
        let mut next = 1u64;
        for iv in chosen {
            if iv.lo() > next {
                return Ok(false);
            }
            if !iv.is_empty() && iv.hi() >= next {
                next = iv.hi().saturating_add(1);
            }
            if next > self.n_bound {
                return Ok(true);
            }
        }
        Ok(next > self.n_bound)
    }
}

impl fmt::Display for Pack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (t, iv) in self.intervals.iter().enumerate() {
            if t > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{iv}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Point-by-point coverage oracle, usable for small bounds only.
    fn covers_pointwise(instance: &PicInstance, selection: &Selection) -> bool {
        let chosen = instance.chosen_intervals(selection).unwrap();
        (1..=instance.n_bound()).all(|p| chosen.iter().any(|iv| iv.contains(p)))
    }

    use crate::fixtures::example_instance;

    #[test]
    fn example_instance_is_wellformed() {
        assert!(example_instance().validate().is_ok());
    }

    #[test]
    fn interval_beyond_bound_is_reported() {
        let instance = PicInstance::new(5, vec![Pack::new(vec![Interval::new(4, 7)])]);
        let violations = instance.validate().unwrap_err();
        assert_eq!(
            violations,
            vec![Violation::ExceedsBound {
                pack: 1,
                interval: Interval::new(4, 7),
                n_bound: 5,
            }]
        );
    }

    #[test]
    fn inverted_interval_is_reported() {
        let instance = PicInstance::new(3, vec![Pack::new(vec![Interval::new(3, 2)])]);
        let violations = instance.validate().unwrap_err();
        assert_eq!(
            violations,
            vec![Violation::InvertedInterval {
                pack: 1,
                interval: Interval::new(3, 2),
            }]
        );
    }

    #[test]
    fn duplicate_interval_is_reported() {
        let instance = PicInstance::new(
            4,
            vec![Pack::new(vec![Interval::new(1, 2), Interval::new(1, 2)])],
        );
        let violations = instance.validate().unwrap_err();
        assert!(matches!(
            violations.as_slice(),
            [Violation::DuplicateInterval { pack: 1, .. }]
        ));
    }

    #[test]
    fn zero_bound_and_zero_endpoint_are_reported() {
        let instance = PicInstance::new(0, vec![Pack::new(vec![Interval::new(0, 0)])]);
        let violations = instance.validate().unwrap_err();
        assert!(violations.contains(&Violation::ZeroBound));
        assert!(violations
            .iter()
            .any(|v| matches!(v, Violation::ZeroEndpoint { .. })));
    }

    #[test]
    fn empty_pack_is_wellformed() {
        let instance = PicInstance::new(3, vec![Pack::new(vec![])]);
        assert!(instance.validate().is_ok());
    }

    #[test]
    fn cover_accepts_the_known_witness() {
        let instance = example_instance();
        // [5,9], [1,3], [4,4]
        let selection = Selection::new(vec![1, 0, 0]);
        assert_eq!(instance.verify_cover(&selection), Ok(true));
        assert!(covers_pointwise(&instance, &selection));
    }

    #[test]
    fn cover_rejects_a_gapped_choice() {
        let instance = example_instance();
        // [1,6], [7,7], [4,4] leaves 8 and 9 uncovered.
        let selection = Selection::new(vec![0, 2, 0]);
        assert_eq!(instance.verify_cover(&selection), Ok(false));
        assert!(!covers_pointwise(&instance, &selection));
    }

    #[test]
    fn single_point_instance() {
        let instance = PicInstance::new(1, vec![Pack::new(vec![Interval::point(1)])]);
        assert_eq!(instance.verify_cover(&Selection::new(vec![0])), Ok(true));
    }

    #[test]
    fn invalid_witness_is_an_error_not_false() {
        let instance = example_instance();
        assert_eq!(
            instance.verify_cover(&Selection::new(vec![0, 0])),
            Err(SelectionError::LengthMismatch {
                expected: 3,
                got: 2
            })
        );
        assert_eq!(
            instance.verify_cover(&Selection::new(vec![0, 3, 0])),
            Err(SelectionError::IndexOutOfRange {
                pack: 2,
                index: 4,
                size: 3
            })
        );
    }

    #[test]
    fn empty_pack_rejects_every_witness() {
        let instance = PicInstance::new(
            2,
            vec![Pack::new(vec![]), Pack::new(vec![Interval::new(1, 2)])],
        );
        assert!(matches!(
            instance.verify_cover(&Selection::new(vec![0, 0])),
            Err(SelectionError::IndexOutOfRange { pack: 1, .. })
        ));
    }

    #[test]
    fn sweep_never_walks_the_bound() {
        use std::time::Instant;
        let n = 1_000_000_000u64;
        let instance = PicInstance::new(
            n,
            vec![
                Pack::new(vec![Interval::new(1, 400_000_000)]),
                Pack::new(vec![Interval::new(300_000_001, n)]),
                Pack::new(vec![Interval::new(5, 5)]),
            ],
        );
        let selection = Selection::new(vec![0, 0, 0]);
        let start = Instant::now();
        assert_eq!(instance.verify_cover(&selection), Ok(true));
        assert!(start.elapsed().as_millis() < 1000);
    }
}
