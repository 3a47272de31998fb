//! Arcs on the integer line and the morphism structure they encode.
//!
//! An arc `(m, n)` with `n - m >= 2` is at once a curve joining two
//! non-neighbouring integers and the coordinate of an indecomposable object
//! of the cluster category of type A-infinity. Suspension acts by
//! `(m, n) -> (m - 1, n - 1)`, and a morphism space `Hom(x, y)` is nonzero
//! (and then one-dimensional) exactly when the suspension of `x` crosses `y`.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::interval::IntInterval;
use crate::region::{ArcRegion, Trapezoid};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    m: i64,
    n: i64,
}

impl Arc {
    pub fn new(m: i64, n: i64) -> Result<Arc, Error> {
        if n - m < 2 {
            return Err(Error::NotAnArc { m, n });
        }
        Ok(Arc { m, n })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> i64 {
        self.n - self.m
    }

    // Callers guarantee n - m >= 2.
    pub(crate) fn raw(m: i64, n: i64) -> Arc {
        debug_assert!(n - m >= 2, "({m},{n}) is not an arc");
        Arc { m, n }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

impl FromStr for Arc {
    type Err = Error;

    /// Parses `"(m,n)"`, whitespace allowed anywhere between tokens.
    fn from_str(s: &str) -> Result<Arc, Error> {
        let bad = || Error::BadArcSyntax(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (a, b) = inner.split_once(',').ok_or_else(bad)?;
        let m = a.trim().parse::<i64>().map_err(|_| bad())?;
        let n = b.trim().parse::<i64>().map_err(|_| bad())?;
        Arc::new(m, n)
    }
}

/// The finite set of arcs `(m, n)` with `lo <= m` and `n <= hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    lo: i64,
    hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Result<Window, Error> {
        if lo > hi {
            return Err(Error::InvertedWindow { lo, hi });
        }
        Ok(Window { lo, hi })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn width(&self) -> i64 {
        self.hi - self.lo
    }

    pub fn contains(&self, a: Arc) -> bool {
        self.lo <= a.m && a.n <= self.hi
    }

    pub fn widen(&self, margin: i64) -> Window {
        Window {
            lo: self.lo - margin,
            hi: self.hi + margin,
        }
    }

    /// Every arc of the window in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = Arc> {
        let (lo, hi) = (self.lo, self.hi);
        (lo..=hi).flat_map(move |m| (m + 2..=hi).map(move |n| Arc::raw(m, n)))
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

impl FromStr for Window {
    type Err = Error;

    /// Parses `"LO..HI"`.
    fn from_str(s: &str) -> Result<Window, Error> {
        let bad = || Error::BadWindowSyntax(s.to_string());
        let (a, b) = s.split_once("..").ok_or_else(bad)?;
        let lo = a.trim().parse::<i64>().map_err(|_| bad())?;
        let hi = b.trim().parse::<i64>().map_err(|_| bad())?;
        Window::new(lo, hi)
    }
}

pub fn cross(a: Arc, b: Arc) -> bool {
    (a.m < b.m && b.m < a.n && a.n < b.n) || (b.m < a.m && a.m < b.n && b.n < a.n)
}

/// `(m - k, n - k)`: `k = 1` is the suspension (which is also the AR
/// translation), `k = 2` the Serre functor.
pub fn shift_arc(a: Arc, k: i64) -> Arc {
    Arc::raw(a.m - k, a.n - k)
}

/// Reflection `(m, n) -> (-n, -m)`, exchanging left and right.
pub fn mirror_arc(a: Arc) -> Arc {
    Arc::raw(-a.n, -a.m)
}

/// Whether `Hom(x, y)` is nonzero; it is then one-dimensional.
pub fn hom_nonzero(x: Arc, y: Arc) -> bool {
    cross(shift_arc(x, 1), y)
}

/// Dimension of `Hom(x, y)`, always 0 or 1.
pub fn hom_dim(x: Arc, y: Arc) -> u32 {
    u32::from(hom_nonzero(x, y))
}

/// All arcs `a` with `Hom(a, x) != 0`.
///
/// For `x = (m, n)` this is `{p <= m, m+2 <= q <= n}` together with
/// `{m+2 <= p <= n, q >= n+2}`.
pub fn hammock_from(x: Arc) -> ArcRegion {
    let (m, n) = (x.m, x.n);
    ArcRegion::from_trapezoids(
        [
            Trapezoid::boxed(IntInterval::at_most(m), IntInterval::closed(m + 2, n)),
            Trapezoid::boxed(IntInterval::closed(m + 2, n), IntInterval::at_least(n + 2)),
        ]
        .into_iter()
        .flatten(),
    )
}

/// All arcs `y` with `Hom(x, y) != 0`.
///
/// For `x = (m, n)` this is `{m <= a <= n-2, b >= n}` together with
/// `{a <= m-2, m <= b <= n-2}`.
pub fn hammock_to(x: Arc) -> ArcRegion {
    let (m, n) = (x.m, x.n);
    ArcRegion::from_trapezoids(
        [
            Trapezoid::boxed(IntInterval::closed(m, n - 2), IntInterval::at_least(n)),
            Trapezoid::boxed(IntInterval::at_most(m - 2), IntInterval::closed(m, n - 2)),
        ]
        .into_iter()
        .flatten(),
    )
}
