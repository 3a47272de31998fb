//! Exact, finite representations of possibly infinite sets of arcs.
//!
//! The atom is a [`Trapezoid`]: arcs `(m, n)` with `m` in one integer
//! interval, `n` in another and the length `n - m` in a third. An
//! [`ArcRegion`] is a finite union of pairwise disjoint trapezoids.
//!
//! Boolean operations refine all operands onto a common grid whose cut
//! points are the finite constants of the operands on each of the three
//! axes (`m`, `n`, `n - m`). Every grid cell is itself a trapezoid, and every
//! operand is a union of cells, so the result is decided cell by cell. Cells
//! that contain no arc are free to join either side; the grid is then
//! coarsened by dropping every cut whose two sides never disagree, and the
//! surviving cells are merged back into boxes.

use std::fmt;

use crate::arc::{Arc, Window};
use crate::interval::IntInterval;

/// `{(m, n) : m in mi, n in ni, n - m in di}`, with `di` bounded below by 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Trapezoid {
    m: IntInterval,
    n: IntInterval,
    d: IntInterval,
}

fn plus(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    Some(a? + b?)
}

fn minus(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    Some(a? - b?)
}

/// `{y - x : x in xs, y in ys}`; both inputs nonempty.
fn difference_range(ys: &IntInterval, xs: &IntInterval) -> IntInterval {
    IntInterval::new(minus(ys.lo(), xs.hi()), minus(ys.hi(), xs.lo()))
}

/// `{x + y : x in xs, y in ys}`; both inputs nonempty.
fn sum_range(xs: &IntInterval, ys: &IntInterval) -> IntInterval {
    IntInterval::new(plus(xs.lo(), ys.lo()), plus(xs.hi(), ys.hi()))
}

fn arc_lengths() -> IntInterval {
    IntInterval::at_least(2)
}

fn feasible(m: &IntInterval, n: &IntInterval, d: &IntInterval) -> bool {
    if m.is_empty() || n.is_empty() || d.is_empty() {
        return false;
    }
    !difference_range(n, m).intersect(d).is_empty()
}

impl Trapezoid {
    /// Returns `None` when no arc satisfies the constraints. Lengths below 2
    /// are cut away.
    pub fn new(m: IntInterval, n: IntInterval, d: IntInterval) -> Option<Trapezoid> {
        let d = d.intersect(&arc_lengths());
        feasible(&m, &n, &d).then_some(Trapezoid { m, n, d })
    }

    /// A box with no length constraint beyond `n - m >= 2`.
    pub fn boxed(m: IntInterval, n: IntInterval) -> Option<Trapezoid> {
        Trapezoid::new(m, n, arc_lengths())
    }

    pub fn single(a: Arc) -> Trapezoid {
        Trapezoid {
            m: IntInterval::point(a.m()),
            n: IntInterval::point(a.n()),
            d: arc_lengths(),
        }
    }

    pub fn universe() -> Trapezoid {
        Trapezoid {
            m: IntInterval::all(),
            n: IntInterval::all(),
            d: arc_lengths(),
        }
    }

    pub fn m_interval(&self) -> IntInterval {
        self.m
    }

    pub fn n_interval(&self) -> IntInterval {
        self.n
    }

    pub fn d_interval(&self) -> IntInterval {
        self.d
    }

    pub fn dlo(&self) -> i64 {
        self.d.lo().expect("length band is bounded below")
    }

    pub fn dhi(&self) -> Option<i64> {
        self.d.hi()
    }

    /// Left endpoints actually attained.
    pub fn m_range(&self) -> IntInterval {
        self.m.intersect(&difference_range(&self.n, &self.d))
    }

    /// Right endpoints actually attained.
    pub fn n_range(&self) -> IntInterval {
        self.n.intersect(&sum_range(&self.m, &self.d))
    }

    /// Lengths actually attained.
    pub fn d_range(&self) -> IntInterval {
        self.d.intersect(&difference_range(&self.n, &self.m))
    }

    pub fn contains(&self, a: Arc) -> bool {
        self.m.contains(a.m()) && self.n.contains(a.n()) && self.d.contains(a.len())
    }

    pub fn is_finite(&self) -> bool {
        self.m_range().is_bounded() && self.n_range().is_bounded()
    }

    /// Right endpoints available to arcs starting at `m`.
    pub fn column_from(&self, m: i64) -> IntInterval {
        if !self.m.contains(m) {
            return IntInterval::empty();
        }
        self.n.intersect(&self.d.shift_down(-m))
    }

    /// Left endpoints available to arcs ending at `n`.
    pub fn column_to(&self, n: i64) -> IntInterval {
        if !self.n.contains(n) {
            return IntInterval::empty();
        }
        self.m.intersect(&self.d.negate().shift_down(-n))
    }

    pub fn shift(&self, k: i64) -> Trapezoid {
        Trapezoid {
            m: self.m.shift_down(k),
            n: self.n.shift_down(k),
            d: self.d,
        }
    }

    pub fn mirror(&self) -> Trapezoid {
        Trapezoid {
            m: self.n.negate(),
            n: self.m.negate(),
            d: self.d,
        }
    }

    /// Some arc of the trapezoid, chosen near the origin.
    pub fn pick(&self) -> Arc {
        let m = self.m_range().pick().expect("trapezoids are nonempty");
        let n = self.column_from(m).pick().expect("m lies in the projection");
        Arc::raw(m, n)
    }

    pub fn constants(&self) -> impl Iterator<Item = i64> {
        self.m
            .finite_ends()
            .chain(self.n.finite_ends())
            .chain(self.d.finite_ends())
    }
}

/// A finite union of pairwise disjoint trapezoids.
///
/// Equality is set equality. The decomposition itself is not canonical.
#[derive(Clone, Debug, Default)]
pub struct ArcRegion {
    parts: Vec<Trapezoid>,
}

impl ArcRegion {
    pub fn empty() -> ArcRegion {
        ArcRegion { parts: Vec::new() }
    }

    pub fn all() -> ArcRegion {
        ArcRegion {
            parts: vec![Trapezoid::universe()],
        }
    }

    pub fn from_trapezoids<I: IntoIterator<Item = Trapezoid>>(parts: I) -> ArcRegion {
        let raw = ArcRegion {
            parts: parts.into_iter().collect(),
        };
        match raw.parts.len() {
            0 => raw,
            1 => raw,
            _ => combine(&[&raw], |mask| mask != 0),
        }
    }

    pub fn arcs<I: IntoIterator<Item = Arc>>(arcs: I) -> ArcRegion {
        ArcRegion::from_trapezoids(arcs.into_iter().map(Trapezoid::single))
    }

    pub fn boxed(m: IntInterval, n: IntInterval, d: IntInterval) -> ArcRegion {
        ArcRegion::from_trapezoids(Trapezoid::new(m, n, d))
    }

    /// Arcs with right endpoint at most `b`.
    pub fn lower(b: i64) -> ArcRegion {
        ArcRegion::boxed(IntInterval::all(), IntInterval::at_most(b), arc_lengths())
    }

    /// Arcs with left endpoint at least `a`.
    pub fn upper(a: i64) -> ArcRegion {
        ArcRegion::boxed(IntInterval::at_least(a), IntInterval::all(), arc_lengths())
    }

    /// Arcs `(m, e)` with `m <= t`.
    pub fn leftray(e: i64, t: i64) -> ArcRegion {
        ArcRegion::boxed(IntInterval::at_most(t), IntInterval::point(e), arc_lengths())
    }

    /// Arcs `(e, n)` with `n >= t`.
    pub fn rightray(e: i64, t: i64) -> ArcRegion {
        ArcRegion::boxed(IntInterval::point(e), IntInterval::at_least(t), arc_lengths())
    }

    pub fn parts(&self) -> &[Trapezoid] {
        &self.parts
    }

    pub fn contains(&self, a: Arc) -> bool {
        self.parts.iter().any(|t| t.contains(a))
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.parts.iter().all(Trapezoid::is_finite)
    }

    pub fn union(&self, other: &ArcRegion) -> ArcRegion {
        if self.is_empty() {
            return other.clone();
        }
        if other.is_empty() {
            return self.clone();
        }
        combine(&[self, other], |mask| mask != 0)
    }

    pub fn intersect(&self, other: &ArcRegion) -> ArcRegion {
        if self.is_empty() || other.is_empty() {
            return ArcRegion::empty();
        }
        combine(&[self, other], |mask| mask == 0b11)
    }

    pub fn difference(&self, other: &ArcRegion) -> ArcRegion {
        if self.is_empty() || other.is_empty() {
            return self.clone();
        }
        combine(&[self, other], |mask| mask == 0b01)
    }

    pub fn symmetric_difference(&self, other: &ArcRegion) -> ArcRegion {
        combine(&[self, other], |mask| mask == 0b01 || mask == 0b10)
    }

    /// Complement relative to the set of all arcs.
    pub fn complement(&self) -> ArcRegion {
        combine(&[self], |mask| mask == 0)
    }

    pub fn equals(&self, other: &ArcRegion) -> bool {
        self.symmetric_difference(other).is_empty()
    }

    pub fn is_subset(&self, other: &ArcRegion) -> bool {
        self.difference(other).is_empty()
    }

    /// `{(m - k, n - k) : (m, n) in self}`.
    pub fn shift(&self, k: i64) -> ArcRegion {
        ArcRegion {
            parts: self.parts.iter().map(|t| t.shift(k)).collect(),
        }
    }

    /// `{(-n, -m) : (m, n) in self}`.
    pub fn mirror(&self) -> ArcRegion {
        ArcRegion {
            parts: self.parts.iter().map(Trapezoid::mirror).collect(),
        }
    }

    /// The arcs inside `w`, sorted lexicographically.
    pub fn enumerate_window(&self, w: Window) -> Vec<Arc> {
        let mut out = Vec::new();
        for t in &self.parts {
            let ms = t.m_range().intersect(&IntInterval::closed(w.lo(), w.hi()));
            let (Some(mlo), Some(mhi)) = (ms.lo(), ms.hi()) else {
                continue;
            };
            for m in mlo..=mhi {
                let ns = t.column_from(m).intersect(&IntInterval::at_most(w.hi()));
                let (Some(nlo), Some(nhi)) = (ns.lo(), ns.hi()) else {
                    continue;
                };
                out.extend((nlo..=nhi).map(|n| Arc::raw(m, n)));
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// All arcs, when there are finitely many.
    pub fn finite_arcs(&self) -> Option<Vec<Arc>> {
        if !self.is_finite() {
            return None;
        }
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for t in &self.parts {
            lo = lo.min(t.m_range().lo()?);
            hi = hi.max(t.n_range().hi()?);
        }
        if self.parts.is_empty() {
            return Some(Vec::new());
        }
        Some(self.enumerate_window(Window::new(lo, hi).ok()?))
    }

    /// Largest absolute value among the finite constants of the representation.
    pub fn max_abs_constant(&self) -> i64 {
        self.parts
            .iter()
            .flat_map(Trapezoid::constants)
            .map(i64::abs)
            .max()
            .unwrap_or(0)
    }

    /// Some arc of the region, if it is nonempty.
    pub fn pick(&self) -> Option<Arc> {
        self.parts
            .iter()
            .map(Trapezoid::pick)
            .min_by_key(|a| (a.m().abs() + a.n().abs(), *a))
    }

    /// Largest left endpoint `p <= bound` of an arc `(p, n)` in the region.
    pub fn max_left_endpoint(&self, n: i64, bound: i64) -> Option<i64> {
        self.parts
            .iter()
            .map(|t| t.column_to(n).intersect(&IntInterval::at_most(bound)))
            .filter(|iv| !iv.is_empty())
            .filter_map(|iv| iv.hi())
            .max()
    }
}

impl PartialEq for ArcRegion {
    fn eq(&self, other: &ArcRegion) -> bool {
        self.equals(other)
    }
}

impl Eq for ArcRegion {}

impl fmt::Display for ArcRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::dsl::print_region(self))
    }
}

// ---------------------------------------------------------------------------
// grid refinement

#[derive(Clone, Debug)]
struct Axis {
    cuts: Vec<i64>,
}

impl Axis {
    fn new(mut cuts: Vec<i64>) -> Axis {
        cuts.sort_unstable();
        cuts.dedup();
        Axis { cuts }
    }

    fn cells(&self) -> usize {
        self.cuts.len() + 1
    }

    // Cell i is [cuts[i-1], cuts[i] - 1], open at the ends of the axis.
    fn cell(&self, i: usize) -> IntInterval {
        let lo = if i == 0 { None } else { Some(self.cuts[i - 1]) };
        let hi = self.cuts.get(i).map(|c| c - 1);
        IntInterval::new(lo, hi)
    }

    fn hull(&self, first: usize, last: usize) -> IntInterval {
        IntInterval::new(self.cell(first).lo(), self.cell(last).hi())
    }

    // Inclusive cell range covered by an interval whose ends are cuts.
    fn span(&self, iv: &IntInterval) -> (usize, usize) {
        let first = iv.lo().map_or(0, |l| self.position(l) + 1);
        let last = iv.hi().map_or(self.cuts.len(), |h| self.position(h + 1));
        (first, last)
    }

    fn position(&self, c: i64) -> usize {
        self.cuts.binary_search(&c).expect("interval ends are cut points")
    }
}

fn push_cuts(iv: &IntInterval, out: &mut Vec<i64>) {
    if let Some(l) = iv.lo() {
        out.push(l);
    }
    if let Some(h) = iv.hi() {
        out.push(h + 1);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Cell {
    Empty,
    In,
    Out,
}

impl Cell {
    fn agrees(self, other: Cell) -> bool {
        self == other || self == Cell::Empty || other == Cell::Empty
    }

    fn join(self, other: Cell) -> Cell {
        if self == Cell::Empty {
            other
        } else {
            self
        }
    }
}

struct Grid {
    axes: [Axis; 3],
    cells: Vec<Cell>,
}

impl Grid {
    fn dims(&self) -> [usize; 3] {
        [self.axes[0].cells(), self.axes[1].cells(), self.axes[2].cells()]
    }

    fn index(dims: [usize; 3], c: [usize; 3]) -> usize {
        (c[0] * dims[1] + c[1]) * dims[2] + c[2]
    }

    fn at(&self, c: [usize; 3]) -> Cell {
        self.cells[Self::index(self.dims(), c)]
    }

    // Whether slices a and a+1 along `axis` never disagree.
    fn mergeable(&self, axis: usize, a: usize) -> bool {
        let dims = self.dims();
        let (u, v) = others(axis);
        for x in 0..dims[u] {
            for y in 0..dims[v] {
                let mut c = [0; 3];
                c[u] = x;
                c[v] = y;
                c[axis] = a;
                let left = self.at(c);
                c[axis] = a + 1;
                if !left.agrees(self.at(c)) {
                    return false;
                }
            }
        }
        true
    }

    fn merge(&mut self, axis: usize, a: usize) {
        let dims = self.dims();
        let mut nd = dims;
        nd[axis] -= 1;
        let mut cells = vec![Cell::Empty; nd[0] * nd[1] * nd[2]];
        for i in 0..nd[0] {
            for j in 0..nd[1] {
                for k in 0..nd[2] {
                    let c = [i, j, k];
                    let mut src = c;
                    if c[axis] > a {
                        src[axis] += 1;
                    }
                    let mut cell = self.cells[Self::index(dims, src)];
                    if c[axis] == a {
                        let mut next = c;
                        next[axis] += 1;
                        cell = cell.join(self.cells[Self::index(dims, next)]);
                    }
                    cells[Self::index(nd, c)] = cell;
                }
            }
        }
        self.cells = cells;
        self.axes[axis].cuts.remove(a);
    }

    fn coarsen(&mut self) {
        loop {
            let mut changed = false;
            for axis in 0..3 {
                let mut a = 0;
                while a + 1 < self.axes[axis].cells() {
                    if self.mergeable(axis, a) {
                        self.merge(axis, a);
                        changed = true;
                    } else {
                        a += 1;
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }

    fn emit(&self) -> Vec<Trapezoid> {
        let [ni, nj, nk] = self.dims();
        // (i range, j range, k range), inclusive
        let mut pieces: Vec<[(usize, usize); 3]> = Vec::new();
        for i in 0..ni {
            for k in 0..nk {
                let mut run: Option<(usize, usize)> = None;
                for j in 0..nj {
                    match self.at([i, j, k]) {
                        Cell::In => {
                            run = Some(run.map_or((j, j), |(s, _)| (s, j)));
                        }
                        Cell::Out => {
                            if let Some(r) = run.take() {
                                pieces.push([(i, i), r, (k, k)]);
                            }
                        }
                        Cell::Empty => {}
                    }
                }
                if let Some(r) = run {
                    pieces.push([(i, i), r, (k, k)]);
                }
            }
        }
        let pieces = merge_pieces(pieces, 0);
        let pieces = merge_pieces(pieces, 2);
        pieces
            .into_iter()
            .map(|p| {
                let m = self.axes[0].hull(p[0].0, p[0].1);
                let n = self.axes[1].hull(p[1].0, p[1].1);
                let d = self.axes[2].hull(p[2].0, p[2].1);
                Trapezoid::new(m, n, d).expect("pieces contain a nonempty cell")
            })
            .collect()
    }
}

fn others(axis: usize) -> (usize, usize) {
    match axis {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

// Joins pieces that agree off `axis` and abut along it.
fn merge_pieces(mut pieces: Vec<[(usize, usize); 3]>, axis: usize) -> Vec<[(usize, usize); 3]> {
    let (u, v) = others(axis);
    pieces.sort_unstable_by_key(|p| (p[u], p[v], p[axis]));
    let mut out: Vec<[(usize, usize); 3]> = Vec::with_capacity(pieces.len());
    for p in pieces {
        if let Some(last) = out.last_mut() {
            if last[u] == p[u] && last[v] == p[v] && last[axis].1 + 1 == p[axis].0 {
                last[axis].1 = p[axis].1;
                continue;
            }
        }
        out.push(p);
    }
    out
}

/// Evaluates a Boolean combination of up to 32 regions. `op` receives the
/// membership mask of a cell (bit `i` set when the cell lies in `regions[i]`).
fn combine(regions: &[&ArcRegion], op: impl Fn(u32) -> bool) -> ArcRegion {
    assert!(regions.len() <= 32);
    let mut cuts = [Vec::new(), Vec::new(), vec![2]];
    for r in regions {
        for t in &r.parts {
            push_cuts(&t.m, &mut cuts[0]);
            push_cuts(&t.n, &mut cuts[1]);
            push_cuts(&t.d, &mut cuts[2]);
        }
    }
    let [cm, cn, cd] = cuts;
    let axes = [Axis::new(cm), Axis::new(cn), Axis::new(cd)];
    let dims = [axes[0].cells(), axes[1].cells(), axes[2].cells()];

    let mut masks = vec![0u32; dims[0] * dims[1] * dims[2]];
    for (bit, r) in regions.iter().enumerate() {
        for t in &r.parts {
            let (i0, i1) = axes[0].span(&t.m);
            let (j0, j1) = axes[1].span(&t.n);
            let (k0, k1) = axes[2].span(&t.d);
            for i in i0..=i1 {
                for j in j0..=j1 {
                    for k in k0..=k1 {
                        masks[Grid::index(dims, [i, j, k])] |= 1 << bit;
                    }
                }
            }
        }
    }

    let lengths = arc_lengths();
    let ds: Vec<IntInterval> = (0..dims[2]).map(|k| axes[2].cell(k).intersect(&lengths)).collect();
    let mut cells = vec![Cell::Empty; masks.len()];
    for i in 0..dims[0] {
        let mi = axes[0].cell(i);
        for j in 0..dims[1] {
            let reach = difference_range(&axes[1].cell(j), &mi);
            for (k, dk) in ds.iter().enumerate() {
                if dk.is_empty() || reach.intersect(dk).is_empty() {
                    continue;
                }
                let idx = Grid::index(dims, [i, j, k]);
                cells[idx] = if op(masks[idx]) { Cell::In } else { Cell::Out };
            }
        }
    }

    let mut grid = Grid { axes, cells };
    grid.coarsen();
    ArcRegion { parts: grid.emit() }
}
