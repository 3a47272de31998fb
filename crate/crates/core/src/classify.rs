//! Decision procedures on regions: the two configuration conditions,
//! ort-closedness, precovering and preenveloping, torsion classes with their
//! perpendicular categories, t-structures, co-t-structures, and explicit
//! precovers.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::arc::{mirror_arc, Arc, Window};
use crate::error::Error;
use crate::interval::{IntInterval, IntSet};
use crate::ort::{closure, fountains, ort, FountainProfile};
use crate::region::ArcRegion;

/// Margin added to the largest constant of a region when condition (i) is
/// checked on a window instead of exactly.
pub const CONDITION_I_MARGIN: i64 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    /// All crossing pairs; the region must be finite.
    Exact,
    /// Crossing pairs inside a window around the constants of the region.
    Window,
}

/// Companions of every crossing pair that are arcs lie in the set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionI {
    Holds,
    /// No violation among the arcs of `window`; the verdict is approximate.
    HoldsInWindow {
        window: Window,
    },
    Fails {
        first: Arc,
        second: Arc,
        missing: Arc,
    },
}

impl ConditionI {
    pub fn holds(&self) -> bool {
        !matches!(self, ConditionI::Fails { .. })
    }
}

impl fmt::Display for ConditionI {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConditionI::Holds => f.write_str("holds"),
            ConditionI::HoldsInWindow { window } => write!(f, "holds in window {window}"),
            ConditionI::Fails { first, second, missing } => {
                write!(f, "fails: {first} crosses {second}, missing {missing}")
            }
        }
    }
}

/// Arcs from a left-only fountain to a right-only fountain lie in the set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionII {
    Holds,
    Fails { missing: Arc },
}

impl ConditionII {
    pub fn holds(&self) -> bool {
        matches!(self, ConditionII::Holds)
    }
}

impl fmt::Display for ConditionII {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConditionII::Holds => f.write_str("holds"),
            ConditionII::Fails { missing } => write!(f, "fails: missing {missing}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TStructure {
    Zero,
    All,
    /// Every arc with right end at most `n`.
    HalfLine(i64),
    Not,
}

impl fmt::Display for TStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TStructure::Zero => f.write_str("Zero"),
            TStructure::All => f.write_str("All"),
            TStructure::HalfLine(n) => write!(f, "HalfLine({n})"),
            TStructure::Not => f.write_str("Not"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoTStructure {
    Zero,
    All,
    Not,
}

impl fmt::Display for CoTStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoTStructure::Zero => "Zero",
            CoTStructure::All => "All",
            CoTStructure::Not => "Not",
        })
    }
}

/// First violation of condition (i) among `arcs`, with companion membership
/// decided by `member`. Pairs are visited in lexicographic order.
fn first_condition_i_violation(arcs: &[Arc], member: impl Fn(Arc) -> bool) -> Option<(Arc, Arc, Arc)> {
    let index: HashSet<Arc> = arcs.iter().copied().collect();
    let hi = arcs.iter().map(Arc::n).max()?;
    for &x in arcs {
        let (a, b) = (x.m(), x.n());
        for c in a + 1..b {
            for d in b + 1..=hi {
                let Ok(y) = Arc::new(c, d) else { continue };
                if !index.contains(&y) {
                    continue;
                }
                for (p, q) in [(a, c), (c, b), (b, d), (a, d)] {
                    if let Ok(z) = Arc::new(p, q) {
                        if !member(z) {
                            return Some((x, y, z));
                        }
                    }
                }
            }
        }
    }
    None
}

/// The window used for approximate condition (i) checks of `r`.
pub fn condition_i_window(r: &ArcRegion) -> Window {
    let m = r.max_abs_constant() + CONDITION_I_MARGIN;
    Window::new(-m, m).expect("symmetric window")
}

pub fn check_condition_i(r: &ArcRegion, mode: CheckMode) -> Result<ConditionI, Error> {
    match mode {
        CheckMode::Exact => {
            let arcs = r.finite_arcs().ok_or(Error::NotFinite)?;
            let set: HashSet<Arc> = arcs.iter().copied().collect();
            Ok(match first_condition_i_violation(&arcs, |z| set.contains(&z)) {
                None => ConditionI::Holds,
                Some((first, second, missing)) => ConditionI::Fails { first, second, missing },
            })
        }
        CheckMode::Window => {
            let window = condition_i_window(r);
            let arcs = r.enumerate_window(window);
            let set: HashSet<Arc> = arcs.iter().copied().collect();
            // companions of a pair inside the window stay inside it
            Ok(match first_condition_i_violation(&arcs, |z| set.contains(&z)) {
                None => ConditionI::HoldsInWindow { window },
                Some((first, second, missing)) => ConditionI::Fails { first, second, missing },
            })
        }
    }
}

/// Exact for finite regions, windowed otherwise.
pub fn check_condition_i_auto(r: &ArcRegion) -> ConditionI {
    let mode = if r.is_finite() {
        CheckMode::Exact
    } else {
        CheckMode::Window
    };
    check_condition_i(r, mode).expect("mode matches finiteness")
}

/// `{(a, b) : a in xs, b in ys}`.
fn product(xs: &IntSet, ys: &IntSet) -> ArcRegion {
    let mut acc = ArcRegion::empty();
    for a in xs.intervals() {
        for b in ys.intervals() {
            acc = acc.union(&ArcRegion::boxed(*a, *b, IntInterval::all()));
        }
    }
    acc
}

pub fn check_condition_ii(r: &ArcRegion) -> ConditionII {
    let profile = fountains(r);
    let required = product(&profile.left_only(), &profile.right_only());
    match required.difference(r).pick() {
        None => ConditionII::Holds,
        Some(missing) => ConditionII::Fails { missing },
    }
}

/// Whether `ort(ort(r)) = r`.
pub fn is_ort_closed(r: &ArcRegion) -> bool {
    closure(r) == *r
}

/// Every right fountain is also a left fountain.
pub fn is_precovering(r: &ArcRegion) -> bool {
    let p = fountains(r);
    p.right.is_subset(&p.left)
}

/// Every left fountain is also a right fountain.
pub fn is_preenveloping(r: &ArcRegion) -> bool {
    is_precovering(&r.mirror())
}

pub fn is_torsion_class(r: &ArcRegion) -> bool {
    is_precovering(r) && is_ort_closed(r)
}

/// The arcs of the right perpendicular category, `Σ ort(r)`.
pub fn right_perp(r: &ArcRegion) -> ArcRegion {
    ort(r).shift(1)
}

/// The arcs of the left perpendicular category, `Σ⁻¹ ort(r)`.
pub fn left_perp(r: &ArcRegion) -> ArcRegion {
    ort(r).shift(-1)
}

pub fn classify_t_structure(r: &ArcRegion) -> Result<TStructure, Error> {
    if !is_torsion_class(r) || !r.shift(1).is_subset(r) {
        return Ok(TStructure::Not);
    }
    if r.is_empty() {
        return Ok(TStructure::Zero);
    }
    if *r == ArcRegion::all() {
        return Ok(TStructure::All);
    }
    let mut top = i64::MIN;
    for t in r.parts() {
        match t.n_range().hi() {
            Some(h) => top = top.max(h),
            None => {
                return Err(Error::TheoremViolation(format!(
                    "suspension-closed torsion class {r} has unbounded right endpoints"
                )))
            }
        }
    }
    if *r != ArcRegion::lower(top) {
        return Err(Error::TheoremViolation(format!(
            "suspension-closed torsion class {r} is not lower({top})"
        )));
    }
    Ok(TStructure::HalfLine(top))
}

pub fn classify_co_t_structure(r: &ArcRegion) -> Result<CoTStructure, Error> {
    if !is_torsion_class(r) || !r.shift(-1).is_subset(r) {
        return Ok(CoTStructure::Not);
    }
    if r.is_empty() {
        return Ok(CoTStructure::Zero);
    }
    if *r == ArcRegion::all() {
        return Ok(CoTStructure::All);
    }
    Err(Error::TheoremViolation(format!(
        "torsion class {r} is closed under desuspension but is neither zero nor everything"
    )))
}

/// Components of a right approximation of one object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Precover {
    pub target: Arc,
    pub components: Vec<Arc>,
    /// Right endpoint of the fountain line used for the infinite forward
    /// part of the hammock, if there was one.
    pub fountain_line: Option<i64>,
}

fn not_precovering(profile: &FountainProfile) -> Error {
    let fountain = profile
        .right
        .difference(&profile.left)
        .representative()
        .expect("called only when some right fountain is not a left fountain");
    Error::NotPrecovering { fountain }
}

/// Builds a precover of `x` from the arcs of `r`.
///
/// For `x = (m, n)` the sources of nonzero maps into `x` are the lines
/// `{(p, c) : p <= m}` for `m+2 <= c <= n`, and the forward region
/// `{(p, q) : m+2 <= p <= n, q >= n+2}`. Each line contributes its arc of
/// `r` closest to `x`. A finite forward region contributes all of its arcs.
/// An infinite one is covered by a single arc on the largest fountain line
/// `c*` meeting it, together with the finitely many forward arcs starting
/// beyond `c*`, which no arc on that line receives maps from.
pub fn precover_construct(r: &ArcRegion, x: Arc) -> Result<Precover, Error> {
    let profile = fountains(r);
    if !profile.right.is_subset(&profile.left) {
        return Err(not_precovering(&profile));
    }
    let (m, n) = (x.m(), x.n());
    let mut components = BTreeSet::new();
    for c in m + 2..=n {
        if let Some(p) = r.max_left_endpoint(c, m) {
            components.insert(Arc::raw(p, c));
        }
    }
    let forward = r.intersect(&ArcRegion::boxed(
        IntInterval::closed(m + 2, n),
        IntInterval::at_least(n + 2),
        IntInterval::all(),
    ));
    let mut fountain_line = None;
    if let Some(arcs) = forward.finite_arcs() {
        components.extend(arcs);
    } else {
        let line = (m + 2..=n).rev().find(|&c| profile.right.contains(c)).ok_or_else(|| {
            Error::TheoremViolation(format!("infinite forward hammock of {x} without a right fountain"))
        })?;
        let p = r.max_left_endpoint(line, m).ok_or_else(|| {
            Error::TheoremViolation(format!(
                "right fountain {line} of a precovering region has no arcs (p,{line}) with p <= {m}"
            ))
        })?;
        components.insert(Arc::raw(p, line));
        let beyond = forward.intersect(&ArcRegion::boxed(
            IntInterval::closed(line + 1, n),
            IntInterval::all(),
            IntInterval::all(),
        ));
        let rest = beyond
            .finite_arcs()
            .ok_or_else(|| Error::TheoremViolation(format!("forward arcs of {x} beyond line {line} are infinite")))?;
        components.extend(rest);
        fountain_line = Some(line);
    }
    Ok(Precover {
        target: x,
        components: components.into_iter().collect(),
        fountain_line,
    })
}

/// The mirror image of [`precover_construct`].
pub fn preenvelope_construct(r: &ArcRegion, x: Arc) -> Result<Precover, Error> {
    let mirrored = r.mirror();
    match precover_construct(&mirrored, mirror_arc(x)) {
        Ok(p) => {
            let mut components: Vec<Arc> = p.components.into_iter().map(mirror_arc).collect();
            components.sort_unstable();
            Ok(Precover {
                target: x,
                components,
                fountain_line: p.fountain_line.map(|c| -c),
            })
        }
        Err(Error::NotPrecovering { fountain }) => Err(Error::NotPreenveloping { fountain: -fountain }),
        Err(e) => Err(e),
    }
}

/// Every verdict about one region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub fountains: FountainProfile,
    pub locally_finite: bool,
    pub condition_i: ConditionI,
    pub condition_ii: ConditionII,
    pub ort_closed: bool,
    pub precovering: bool,
    pub preenveloping: bool,
    pub torsion_class: bool,
    pub t_structure: TStructure,
    pub co_t_structure: CoTStructure,
    pub canonical: ArcRegion,
}

impl ClassificationReport {
    /// Flat key/value form, in a fixed key order.
    pub fn to_pairs(&self) -> Vec<(&'static str, String)> {
        vec![
            ("fountains.left", self.fountains.left.to_string()),
            ("fountains.right", self.fountains.right.to_string()),
            ("locally_finite", self.locally_finite.to_string()),
            ("condition_i", self.condition_i.to_string()),
            ("condition_ii", self.condition_ii.to_string()),
            ("ort_closed", self.ort_closed.to_string()),
            ("precovering", self.precovering.to_string()),
            ("preenveloping", self.preenveloping.to_string()),
            ("torsion_class", self.torsion_class.to_string()),
            ("t_structure", self.t_structure.to_string()),
            ("co_t_structure", self.co_t_structure.to_string()),
            ("canonical_parts", self.canonical.to_string()),
        ]
    }
}

pub fn classify(r: &ArcRegion) -> Result<ClassificationReport, Error> {
    let profile = fountains(r);
    let precovering = profile.right.is_subset(&profile.left);
    let preenveloping = profile.left.is_subset(&profile.right);
    let ort_closed = is_ort_closed(r);
    let report = ClassificationReport {
        locally_finite: profile.is_empty(),
        condition_i: check_condition_i_auto(r),
        condition_ii: check_condition_ii(r),
        ort_closed,
        precovering,
        preenveloping,
        torsion_class: ort_closed && precovering,
        t_structure: classify_t_structure(r)?,
        co_t_structure: classify_co_t_structure(r)?,
        canonical: r.clone(),
        fountains: profile,
    };
    Ok(report)
}
