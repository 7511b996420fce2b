use super::{Interval, PicInstance};

/// A maximal run of points on which interval membership is constant, in the
/// original coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    lo: u64,
    hi: u64,
}

impl Segment {
    pub const fn lo(&self) -> u64 {
        self.lo
    }

    pub const fn hi(&self) -> u64 {
        self.hi
    }

    /// Number of original points collapsed into this segment.
    pub const fn weight(&self) -> u64 {
        self.hi - self.lo + 1
    }
}

/// The result of coordinate compression: an equivalent instance whose bound is
/// the segment count, plus the table mapping segments back to original
/// coordinates.
///
/// Segment boundaries occur exactly at interval endpoints, so a point is
/// covered by an interval iff its segment is covered by the interval's
/// remapped image. Pack and interval order are preserved, which makes a
/// witness for the compressed instance a witness for the original verbatim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompressedInstance {
    instance: PicInstance,
    segments: Vec<Segment>,
}

impl CompressedInstance {
    /// The remapped instance, over `[1, num_segments]`.
    pub fn instance(&self) -> &PicInstance {
        &self.instance
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn num_segments(&self) -> usize {
        self.segments.len()
    }

    /// Maps an interval over segment indices back to original coordinates.
    ///
    /// Panics if the segment indices are out of range.
    pub fn decompress_interval(&self, iv: Interval) -> Interval {
        let lo = self.segments[iv.lo() as usize - 1].lo;
        let hi = self.segments[iv.hi() as usize - 1].hi;
        Interval::new(lo, hi)
    }

    /// The 1-based index of the segment containing an original point.
    pub fn segment_containing(&self, p: u64) -> Option<usize> {
        if self.segments.is_empty() || p < self.segments[0].lo {
            return None;
        }
        let idx = self.segments.partition_point(|seg| seg.hi < p);
        (idx < self.segments.len() && self.segments[idx].lo <= p).then_some(idx + 1)
    }
}

impl PicInstance {
    /// Collapses `[1, N]` into the coarsest segment partition induced by the
    /// interval endpoints. The instance is assumed well-formed.
    ///
    /// At most `2 * total_intervals + 1` segments result, so solvers running
    /// on the compressed instance have cost independent of the magnitude of
    /// `N`.
    pub fn compress(&self) -> CompressedInstance {
        let mut cuts: Vec<u64> = Vec::with_capacity(2 * self.total_intervals() + 2);
        cuts.push(1);
        cuts.push(self.n_bound().saturating_add(1));
        for pack in self.packs() {
            for iv in pack.intervals() {
                cuts.push(iv.lo());
                cuts.push(iv.hi().saturating_add(1));
            }
        }
        cuts.sort_unstable();
        cuts.dedup();

        let segments: Vec<Segment> = cuts
            .windows(2)
            .map(|w| Segment {
                lo: w[0],
                hi: w[1] - 1,
            })
            .collect();

        // Every interval endpoint is a cut, so lo and hi+1 are found exactly.
        let seg_index = |p: u64| cuts.binary_search(&p).expect("endpoint must be a cut") + 1;
        let packs = self
            .packs()
            .iter()
            .map(|pack| {
                pack.intervals()
                    .iter()
                    .map(|iv| {
                        Interval::new(
                            seg_index(iv.lo()) as u64,
                            (seg_index(iv.hi().saturating_add(1)) - 1) as u64,
                        )
                    })
                    .collect()
            })
            .collect();

        CompressedInstance {
            instance: PicInstance::new(segments.len() as u64, packs),
            segments,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pic::{Pack, Selection};

    #[test]
    fn single_spanning_interval_collapses_to_one_segment() {
        let n = 1_000_000_000u64;
        let instance = PicInstance::new(n, vec![Pack::new(vec![Interval::new(1, n)])]);
        let comp = instance.compress();
        assert_eq!(comp.num_segments(), 1);
        assert_eq!(comp.segments()[0], Segment { lo: 1, hi: n });
        assert_eq!(
            comp.instance().packs()[0].intervals(),
            &[Interval::new(1, 1)]
        );
        assert_eq!(
            comp.decompress_interval(Interval::new(1, 1)),
            Interval::new(1, n)
        );
    }

    #[test]
    fn gap_between_intervals_gets_its_own_segment() {
        let instance = PicInstance::new(
            100,
            vec![
                Pack::new(vec![Interval::new(1, 50)]),
                Pack::new(vec![Interval::new(52, 100)]),
            ],
        );
        let comp = instance.compress();
        assert_eq!(
            comp.segments(),
            &[
                Segment { lo: 1, hi: 50 },
                Segment { lo: 51, hi: 51 },
                Segment { lo: 52, hi: 100 },
            ]
        );
        // Segment 2 is coverable by no interval.
        let remapped: Vec<Interval> = comp
            .instance()
            .packs()
            .iter()
            .flat_map(|p| p.intervals().iter().copied())
            .collect();
        assert!(remapped.iter().all(|iv| !iv.contains(2)));
        // Not coverable, either side of the compression.
        let sel = Selection::new(vec![0, 0]);
        assert_eq!(instance.verify_cover(&sel), Ok(false));
        assert_eq!(comp.instance().verify_cover(&sel), Ok(false));
    }

    #[test]
    fn segment_count_is_bounded_by_endpoints() {
        let instance = crate::fixtures::example_instance();
        let comp = instance.compress();
        assert!(comp.num_segments() <= 2 * instance.total_intervals() + 1);
        // Segments partition [1, N].
        assert_eq!(comp.segments()[0].lo(), 1);
        assert_eq!(comp.segments().last().unwrap().hi(), instance.n_bound());
        for w in comp.segments().windows(2) {
            assert_eq!(w[0].hi() + 1, w[1].lo());
        }
    }

    #[test]
    fn coverage_is_preserved_pointwise() {
        let instance = crate::fixtures::example_instance();
        let comp = instance.compress();
        for (pack, comp_pack) in instance.packs().iter().zip(comp.instance().packs()) {
            for (iv, comp_iv) in pack.intervals().iter().zip(comp_pack.intervals()) {
                for p in 1..=instance.n_bound() {
                    let seg = comp.segment_containing(p).unwrap() as u64;
                    assert_eq!(iv.contains(p), comp_iv.contains(seg));
                }
            }
        }
    }

    #[test]
    fn segment_lookup_handles_boundaries() {
        let instance = PicInstance::new(
            10,
            vec![Pack::new(vec![Interval::new(3, 5), Interval::new(8, 8)])],
        );
        let comp = instance.compress();
        assert_eq!(comp.segment_containing(0), None);
        assert_eq!(comp.segment_containing(1), Some(1));
        assert_eq!(comp.segment_containing(11), None);
        for p in 1..=10 {
            let seg = comp.segment_containing(p).unwrap();
            let s = comp.segments()[seg - 1];
            assert!(s.lo() <= p && p <= s.hi());
        }
    }
}
