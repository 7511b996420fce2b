use std::fmt;

/// A closed integer interval `[lo, hi]`.
///
/// Singletons are intervals with `lo == hi`. Construction performs no
/// validation; the well-formedness rules (`1 <= lo <= hi <= N`) are checked
/// per instance by [`PicInstance::validate`](super::PicInstance::validate).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    lo: u64,
    hi: u64,
}

impl Interval {
    pub const fn new(lo: u64, hi: u64) -> Self {
        Interval { lo, hi }
    }

    /// The singleton `{p}`.
    pub const fn point(p: u64) -> Self {
        Interval { lo: p, hi: p }
    }

    pub const fn lo(&self) -> u64 {
        self.lo
    }

    pub const fn hi(&self) -> u64 {
        self.hi
    }

    pub const fn is_singleton(&self) -> bool {
        self.lo == self.hi
    }

    pub const fn contains(&self, p: u64) -> bool {
        self.lo <= p && p <= self.hi
    }

    /// Number of points, assuming `lo <= hi`.
    pub const fn len(&self) -> u64 {
        self.hi - self.lo + 1
    }

    pub const fn is_empty(&self) -> bool {
        self.lo > self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}
