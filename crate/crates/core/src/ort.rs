//! The `ort` operator, its closure, and fountain profiles.
//!
//! `ort(A)` is the set of arcs crossing no arc of `A`. It is antitone, and
//! `ort . ort` is a closure operator. Both are computed exactly: the set of
//! arcs crossing some arc of a trapezoid is again a union of two trapezoids.

use std::fmt;

use crate::interval::{IntInterval, IntSet};
use crate::region::{ArcRegion, Trapezoid};

fn add(a: Option<i64>, k: i64) -> Option<i64> {
    a.map(|x| x + k)
}

fn max_lower(bounds: &[Option<i64>]) -> Option<i64> {
    bounds.iter().flatten().copied().max()
}

fn min_upper(bounds: &[Option<i64>]) -> Option<i64> {
    bounds.iter().flatten().copied().min()
}

/// Arcs `(a, b)` for which some `(m, n)` in `t` has `m < a < n < b`.
///
/// Writing `t = {m in [m1, m2], n in [n1, n2], n - m in [d1, d2]}`, a witness
/// exists iff
///
/// ```text
///   max(m1 + 1, n1 + 1 - d2) <= a <= min(n2 - 1, m2 + d2 - 1)
///   b >= max(n1 + 1, m1 + d1 + 1)
/// ```
///
/// (with `b - a >= 2` implicit). The witnesses for fixed `(a, b)` form the
/// trapezoid `m in [m1, min(m2, a-1)]`, `n in [max(n1, a+1), min(n2, b-1)]`
/// with the same length band; the conditions above are its nonemptiness.
fn crossed_from_left(t: &Trapezoid) -> Option<Trapezoid> {
    let (m, n) = (t.m_interval(), t.n_interval());
    let (d1, d2) = (t.dlo(), t.dhi());
    let (m1, m2, n1, n2) = (m.lo(), m.hi(), n.lo(), n.hi());
    let a_lo = max_lower(&[add(m1, 1), d2.and_then(|d2| add(n1, 1 - d2))]);
    let a_hi = min_upper(&[add(n2, -1), d2.and_then(|d2| add(m2, d2 - 1))]);
    let b_lo = max_lower(&[add(n1, 1), add(m1, d1 + 1)]);
    Trapezoid::boxed(IntInterval::new(a_lo, a_hi), IntInterval::new(b_lo, None))
}

/// Arcs `(a, b)` for which some `(m, n)` in `t` has `a < m < b < n`.
fn crossed_from_right(t: &Trapezoid) -> Option<Trapezoid> {
    crossed_from_left(&t.mirror()).map(|x| x.mirror())
}

/// Arcs `(a, b)` crossed by some `(m, n)` in `r` with `m < a`.
pub fn cross_set_from_left(r: &ArcRegion) -> ArcRegion {
    ArcRegion::from_trapezoids(r.parts().iter().filter_map(crossed_from_left))
}

/// Arcs `(a, b)` crossed by some `(m, n)` in `r` with `a < m`.
pub fn cross_set_from_right(r: &ArcRegion) -> ArcRegion {
    ArcRegion::from_trapezoids(r.parts().iter().filter_map(crossed_from_right))
}

/// All arcs crossing at least one arc of `r`.
pub fn cross_set(r: &ArcRegion) -> ArcRegion {
    ArcRegion::from_trapezoids(
        r.parts()
            .iter()
            .flat_map(|t| [crossed_from_left(t), crossed_from_right(t)])
            .flatten(),
    )
}

/// All arcs crossing no arc of `r`.
pub fn ort(r: &ArcRegion) -> ArcRegion {
    cross_set(r).complement()
}

/// `ort(ort(r))`: the smallest ort-closed region containing `r`.
pub fn closure(r: &ArcRegion) -> ArcRegion {
    ort(&ort(r))
}

/// Integers that are left fountains (infinitely many arcs `(m, e)`) and
/// right fountains (infinitely many arcs `(e, n)`) of a region.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FountainProfile {
    pub left: IntSet,
    pub right: IntSet,
}

impl FountainProfile {
    /// Integers that are both left and right fountains.
    pub fn fountains(&self) -> IntSet {
        self.left.intersect(&self.right)
    }

    pub fn left_only(&self) -> IntSet {
        self.left.difference(&self.right)
    }

    pub fn right_only(&self) -> IntSet {
        self.right.difference(&self.left)
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty() && self.right.is_empty()
    }
}

impl fmt::Display for FountainProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "left {}; right {}", self.left, self.right)
    }
}

/// A part contributes the right endpoints of its arcs as left fountains when
/// its left endpoints and lengths are both unbounded, and dually.
pub fn fountains(r: &ArcRegion) -> FountainProfile {
    let unbounded_len = |t: &&Trapezoid| t.dhi().is_none();
    let left = IntSet::from_intervals(
        r.parts()
            .iter()
            .filter(unbounded_len)
            .filter(|t| t.m_interval().lo().is_none())
            .map(|t| t.n_interval()),
    );
    let right = IntSet::from_intervals(
        r.parts()
            .iter()
            .filter(unbounded_len)
            .filter(|t| t.n_interval().hi().is_none())
            .map(|t| t.m_interval()),
    );
    FountainProfile { left, right }
}

pub fn is_locally_finite(r: &ArcRegion) -> bool {
    fountains(r).is_empty()
}
