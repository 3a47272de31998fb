//! Integer intervals with optional infinite ends, and finite unions of them.

use std::fmt;

/// A set of consecutive integers. `None` on either side means the interval is
/// unbounded in that direction.
///
/// All empty intervals are represented by one canonical value, so derived
/// equality is set equality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IntInterval {
    lo: Option<i64>,
    hi: Option<i64>,
}

impl IntInterval {
    const EMPTY: IntInterval = IntInterval {
        lo: Some(1),
        hi: Some(0),
    };

    pub fn new(lo: Option<i64>, hi: Option<i64>) -> IntInterval {
        match (lo, hi) {
            (Some(a), Some(b)) if a > b => Self::EMPTY,
            _ => IntInterval { lo, hi },
        }
    }

    pub fn closed(lo: i64, hi: i64) -> IntInterval {
        Self::new(Some(lo), Some(hi))
    }

    pub fn point(x: i64) -> IntInterval {
        Self::closed(x, x)
    }

    pub fn at_least(lo: i64) -> IntInterval {
        Self::new(Some(lo), None)
    }

    pub fn at_most(hi: i64) -> IntInterval {
        Self::new(None, Some(hi))
    }

    pub fn all() -> IntInterval {
        IntInterval { lo: None, hi: None }
    }

    pub fn empty() -> IntInterval {
        Self::EMPTY
    }

    pub fn is_empty(&self) -> bool {
        *self == Self::EMPTY
    }

    /// Lower end; `None` is minus infinity. Meaningless on the empty interval.
    pub fn lo(&self) -> Option<i64> {
        self.lo
    }

    /// Upper end; `None` is plus infinity. Meaningless on the empty interval.
    pub fn hi(&self) -> Option<i64> {
        self.hi
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_some() && self.hi.is_some()
    }

    pub fn contains(&self, x: i64) -> bool {
        !self.is_empty() && self.lo.is_none_or(|l| l <= x) && self.hi.is_none_or(|h| x <= h)
    }

    pub fn intersect(&self, other: &IntInterval) -> IntInterval {
        if self.is_empty() || other.is_empty() {
            return Self::EMPTY;
        }
        let lo = match (self.lo, other.lo) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, None) => a,
            (None, b) => b,
        };
        let hi = match (self.hi, other.hi) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, None) => a,
            (None, b) => b,
        };
        Self::new(lo, hi)
    }

    pub fn is_subset(&self, other: &IntInterval) -> bool {
        self.intersect(other) == *self
    }

    /// `{x - k : x in self}`.
    pub fn shift_down(&self, k: i64) -> IntInterval {
        if self.is_empty() {
            return *self;
        }
        IntInterval {
            lo: self.lo.map(|x| x - k),
            hi: self.hi.map(|x| x - k),
        }
    }

    /// `{-x : x in self}`.
    pub fn negate(&self) -> IntInterval {
        if self.is_empty() {
            return *self;
        }
        IntInterval {
            lo: self.hi.map(|x| -x),
            hi: self.lo.map(|x| -x),
        }
    }

    /// Finite ends, for bounding the constants of a representation.
    pub fn finite_ends(&self) -> impl Iterator<Item = i64> {
        let (lo, hi) = if self.is_empty() {
            (None, None)
        } else {
            (self.lo, self.hi)
        };
        lo.into_iter().chain(hi)
    }

    /// Some member, preferring the one closest to zero.
    pub fn pick(&self) -> Option<i64> {
        if self.is_empty() {
            return None;
        }
        let mut x = 0;
        if let Some(l) = self.lo {
            x = x.max(l);
        }
        if let Some(h) = self.hi {
            x = x.min(h);
        }
        Some(x)
    }

    // Adjacent or overlapping: the union is again an interval.
    fn touches(&self, other: &IntInterval) -> bool {
        let left_ok = match (self.hi, other.lo) {
            (Some(h), Some(l)) => l <= h.saturating_add(1),
            _ => true,
        };
        let right_ok = match (other.hi, self.lo) {
            (Some(h), Some(l)) => l <= h.saturating_add(1),
            _ => true,
        };
        left_ok && right_ok
    }
}

impl fmt::Display for IntInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("empty");
        }
        match self.lo {
            Some(l) => write!(f, "[{l}")?,
            None => f.write_str("(-inf")?,
        }
        f.write_str(",")?;
        match self.hi {
            Some(h) => write!(f, "{h}]"),
            None => f.write_str("+inf)"),
        }
    }
}

fn lo_key(iv: &IntInterval) -> (bool, i64) {
    match iv.lo {
        None => (false, 0),
        Some(l) => (true, l),
    }
}

/// A finite union of integer intervals, kept sorted, disjoint and
/// non-adjacent so that derived equality is set equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntSet {
    intervals: Vec<IntInterval>,
}

impl IntSet {
    pub fn empty() -> IntSet {
        IntSet::default()
    }

    pub fn all() -> IntSet {
        IntSet {
            intervals: vec![IntInterval::all()],
        }
    }

    pub fn from_intervals<I: IntoIterator<Item = IntInterval>>(items: I) -> IntSet {
        let mut v: Vec<IntInterval> = items.into_iter().filter(|iv| !iv.is_empty()).collect();
        v.sort_by_key(lo_key);
        let mut out: Vec<IntInterval> = Vec::with_capacity(v.len());
        for iv in v {
            match out.last_mut() {
                Some(last) if last.touches(&iv) => {
                    last.hi = match (last.hi, iv.hi) {
                        (Some(a), Some(b)) => Some(a.max(b)),
                        _ => None,
                    };
                }
                _ => out.push(iv),
            }
        }
        IntSet { intervals: out }
    }

    pub fn intervals(&self) -> &[IntInterval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, x: i64) -> bool {
        self.intervals.iter().any(|iv| iv.contains(x))
    }

    pub fn union(&self, other: &IntSet) -> IntSet {
        IntSet::from_intervals(self.intervals.iter().chain(&other.intervals).copied())
    }

    pub fn intersect(&self, other: &IntSet) -> IntSet {
        IntSet::from_intervals(
            self.intervals
                .iter()
                .flat_map(|a| other.intervals.iter().map(move |b| a.intersect(b))),
        )
    }

    pub fn complement(&self) -> IntSet {
        let mut out = Vec::new();
        let mut next_lo: Option<i64> = None;
        let mut open_below = true;
        for iv in &self.intervals {
            match iv.lo {
                None => {}
                Some(l) => {
                    let gap = IntInterval::new(if open_below { None } else { next_lo }, Some(l - 1));
                    if open_below || next_lo.is_some() {
                        out.push(gap);
                    }
                }
            }
            open_below = false;
            next_lo = iv.hi.map(|h| h + 1);
            if iv.hi.is_none() {
                return IntSet::from_intervals(out);
            }
        }
        if open_below {
            out.push(IntInterval::all());
        } else if let Some(l) = next_lo {
            out.push(IntInterval::at_least(l));
        }
        IntSet::from_intervals(out)
    }

    pub fn difference(&self, other: &IntSet) -> IntSet {
        self.intersect(&other.complement())
    }

    pub fn is_subset(&self, other: &IntSet) -> bool {
        self.difference(other).is_empty()
    }

    pub fn max(&self) -> Option<Option<i64>> {
        self.intervals.last().map(|iv| iv.hi)
    }

    /// A representative member: the least one when the set is bounded below,
    /// otherwise the largest, otherwise zero.
    pub fn representative(&self) -> Option<i64> {
        let first = self.intervals.first()?;
        if let Some(l) = first.lo {
            return Some(l);
        }
        if let Some(h) = first.hi {
            return Some(h);
        }
        Some(0)
    }
}

impl fmt::Display for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return f.write_str("empty");
        }
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_empty() {
        assert_eq!(IntInterval::closed(3, 1), IntInterval::empty());
        assert!(IntInterval::closed(0, 0)
            .intersect(&IntInterval::at_least(1))
            .is_empty());
    }

    #[test]
    fn negate_and_shift() {
        assert_eq!(IntInterval::at_most(3).negate(), IntInterval::at_least(-3));
        assert_eq!(IntInterval::closed(0, 4).shift_down(1), IntInterval::closed(-1, 3));
    }

    #[test]
    fn set_normalizes_adjacent() {
        let s = IntSet::from_intervals([IntInterval::closed(0, 2), IntInterval::closed(3, 5)]);
        assert_eq!(s.intervals(), &[IntInterval::closed(0, 5)]);
    }

    #[test]
    fn complement_roundtrip() {
        let s = IntSet::from_intervals([IntInterval::at_most(-3), IntInterval::closed(2, 4)]);
        let c = s.complement();
        assert_eq!(c.intervals(), &[IntInterval::closed(-2, 1), IntInterval::at_least(5)]);
        assert_eq!(c.complement(), s);
        assert_eq!(IntSet::all().complement(), IntSet::empty());
        assert_eq!(IntSet::empty().complement(), IntSet::all());
    }

    #[test]
    fn display() {
        let s = IntSet::from_intervals([IntInterval::at_most(0), IntInterval::point(5)]);
        assert_eq!(s.to_string(), "(-inf,0] | [5,5]");
    }
}
