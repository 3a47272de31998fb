//! Brute-force reference computations on finite windows, random corpora,
//! and the differential driver comparing them with the symbolic engine.
//!
//! Nothing here shares code with the exact `ort` computation: the window
//! oracle enumerates arcs and tests crossings pairwise.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arc::{cross, Arc, Window};
use crate::classify::{check_condition_i, check_condition_ii, CheckMode, ConditionI};
use crate::error::Error;
use crate::interval::IntInterval;
use crate::ort::fountains;
use crate::region::{ArcRegion, Trapezoid};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub window: Window,
    /// Lower bound on the margin; each region is checked with at least its
    /// [`sound_margin`].
    pub margin: i64,
    pub seed: u64,
    pub cases: usize,
}

impl Default for OracleConfig {
    fn default() -> OracleConfig {
        OracleConfig {
            window: Window::new(-12, 12).expect("valid window"),
            margin: 0,
            seed: 0,
            cases: 100,
        }
    }
}

/// Smallest margin for which [`brute_ort_window`] agrees with the exact
/// `ort` on `w`. A crossing witness for an arc of `w` can always be moved to
/// within this distance of `w`, since a trapezoid column is monotone beyond
/// the constants of its representation.
pub fn sound_margin(r: &ArcRegion, w: Window) -> i64 {
    if r.is_empty() {
        return 0;
    }
    r.max_abs_constant() + w.width() + 2 + 0.max(w.lo()).max(-w.hi())
}

/// Arcs of `w` crossing no arc of `r` that lies in `w` widened by `margin`.
pub fn brute_ort_window(r: &ArcRegion, w: Window, margin: i64, allow_unsound: bool) -> Result<Vec<Arc>, Error> {
    let required = sound_margin(r, w);
    if margin < required && !allow_unsound {
        return Err(Error::MarginTooSmall {
            given: margin,
            required,
            window: w,
        });
    }
    let members = r.enumerate_window(w.widen(margin.max(0)));
    Ok(w.arcs().filter(|&d| !members.iter().any(|&a| cross(a, d))).collect())
}

/// Checks condition (i) on every crossing pair inside `w`, deciding
/// companion membership with the exact region.
pub fn brute_condition_i_window(r: &ArcRegion, w: Window) -> ConditionI {
    let arcs = r.enumerate_window(w);
    for (i, &x) in arcs.iter().enumerate() {
        for &y in &arcs[i + 1..] {
            if !cross(x, y) {
                continue;
            }
            let (first, second) = if x.m() < y.m() { (x, y) } else { (y, x) };
            let (a, b, c, d) = (first.m(), first.n(), second.m(), second.n());
            for (p, q) in [(a, c), (c, b), (b, d), (a, d)] {
                if let Ok(z) = Arc::new(p, q) {
                    if !r.contains(z) {
                        return ConditionI::Fails {
                            first,
                            second,
                            missing: z,
                        };
                    }
                }
            }
        }
    }
    ConditionI::Holds
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Census {
    /// Arcs `(m, e)` in the region with `m >= w.lo`.
    pub left_count: usize,
    /// Arcs `(e, n)` in the region with `n <= w.hi`.
    pub right_count: usize,
}

pub fn fountain_census(r: &ArcRegion, e: i64, w: Window) -> Census {
    let left_count = (w.lo()..=e - 2).filter(|&m| r.contains(Arc::raw(m, e))).count();
    let right_count = (e + 2..=w.hi()).filter(|&n| r.contains(Arc::raw(e, n))).count();
    Census {
        left_count,
        right_count,
    }
}

pub fn random_explicit_set(seed: u64, max_arcs: usize, coord_bound: i64) -> ArcRegion {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = rng.gen_range(0..=max_arcs);
    let arcs: Vec<Arc> = (0..count)
        .map(|_| {
            let m = rng.gen_range(-coord_bound..=coord_bound - 2);
            let n = rng.gen_range(m + 2..=coord_bound);
            Arc::raw(m, n)
        })
        .collect();
    ArcRegion::arcs(arcs)
}

// probability that a single end of an interval is left infinite
const UNBOUNDED_END: f64 = 0.3;

fn random_interval(rng: &mut ChaCha8Rng, bound: i64) -> IntInterval {
    let end = |rng: &mut ChaCha8Rng| (!rng.gen_bool(UNBOUNDED_END)).then(|| rng.gen_range(-bound..=bound));
    let (mut lo, mut hi) = (end(rng), end(rng));
    if let (Some(a), Some(b)) = (lo, hi) {
        if a > b {
            (lo, hi) = (Some(b), Some(a));
        }
    }
    IntInterval::new(lo, hi)
}

fn random_trapezoid(rng: &mut ChaCha8Rng, bound: i64) -> Option<Trapezoid> {
    for _ in 0..16 {
        let m = random_interval(rng, bound);
        let n = random_interval(rng, bound);
        let dlo = rng.gen_range(2..=bound.max(2));
        let dhi = (!rng.gen_bool(0.5)).then(|| rng.gen_range(dlo..=bound.max(dlo)));
        if let Some(t) = Trapezoid::new(m, n, IntInterval::new(Some(dlo), dhi)) {
            return Some(t);
        }
    }
    None
}

/// A union of at most `max_parts` random trapezoids whose finite constants
/// lie in `[-const_bound, const_bound]`.
pub fn random_region(seed: u64, max_parts: usize, const_bound: i64) -> ArcRegion {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if max_parts == 0 {
        return ArcRegion::empty();
    }
    let count = rng.gen_range(1..=max_parts);
    let parts: Vec<Trapezoid> = (0..count)
        .filter_map(|_| random_trapezoid(&mut rng, const_bound))
        .collect();
    ArcRegion::from_trapezoids(parts)
}

/// The symbolic crossing set under differential test; `ort` and closure
/// are derived from it.
#[derive(Clone, Copy)]
pub struct Engine {
    pub name: &'static str,
    pub cross_set: fn(&ArcRegion) -> ArcRegion,
}

impl Engine {
    pub fn exact() -> Engine {
        Engine {
            name: "exact",
            cross_set: crate::ort::cross_set,
        }
    }

    pub fn ort(&self, r: &ArcRegion) -> ArcRegion {
        (self.cross_set)(r).complement()
    }

    fn closure(&self, r: &ArcRegion) -> ArcRegion {
        self.ort(&self.ort(r))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub region: ArcRegion,
    pub arc: Option<Arc>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub counterexample: Option<Counterexample>,
}

impl SuiteResult {
    fn new(name: &'static str) -> SuiteResult {
        SuiteResult {
            name,
            passed: 0,
            failed: 0,
            counterexample: None,
        }
    }

    /// Adds the counts of `other`; the first counterexample wins.
    pub fn merge(mut self, other: SuiteResult) -> SuiteResult {
        self.passed += other.passed;
        self.failed += other.failed;
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AgreementSummary {
    pub cases: usize,
    pub suites: Vec<SuiteResult>,
}

impl AgreementSummary {
    pub fn failures(&self) -> usize {
        self.suites.iter().map(|s| s.failed).sum()
    }

    pub fn merge(mut self, other: AgreementSummary) -> AgreementSummary {
        self.cases += other.cases;
        for s in other.suites {
            match self.suites.iter().position(|x| x.name == s.name) {
                Some(i) => {
                    let mine = self.suites.remove(i);
                    self.suites.insert(i, mine.merge(s));
                }
                None => self.suites.push(s),
            }
        }
        self
    }

    pub fn to_pairs(&self) -> Vec<(String, String)> {
        let mut out = vec![("cases".to_string(), self.cases.to_string())];
        for s in &self.suites {
            out.push((format!("{}.passed", s.name), s.passed.to_string()));
            out.push((format!("{}.failed", s.name), s.failed.to_string()));
            if let Some(c) = &s.counterexample {
                out.push((format!("{}.counterexample.region", s.name), c.region.to_string()));
                if let Some(a) = c.arc {
                    out.push((format!("{}.counterexample.arc", s.name), a.to_string()));
                }
                out.push((format!("{}.counterexample.detail", s.name), c.detail.clone()));
            }
        }
        out
    }
}

/// Drops parts of `r` for as long as `fails` keeps reporting a failure.
pub fn minimize<T>(r: &ArcRegion, fails: impl Fn(&ArcRegion) -> Option<T>) -> (ArcRegion, T) {
    let mut current = r.clone();
    let mut witness = fails(&current).expect("minimize needs a failing input");
    loop {
        let mut shrunk = false;
        for i in 0..current.parts().len() {
            let candidate = ArcRegion::from_trapezoids(
                current
                    .parts()
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, t)| *t),
            );
            if let Some(w) = fails(&candidate) {
                current = candidate;
                witness = w;
                shrunk = true;
                break;
            }
        }
        if !shrunk {
            return (current, witness);
        }
    }
}

/// First arc of `w` where `engine`'s ort disagrees with the window oracle.
pub fn ort_disagreement(engine: &Engine, r: &ArcRegion, w: Window, min_margin: i64) -> Option<Arc> {
    let margin = sound_margin(r, w).max(min_margin);
    let brute = brute_ort_window(r, w, margin, false).expect("margin is sound");
    let symbolic = engine.ort(r);
    let mut expected = brute.iter().peekable();
    for d in w.arcs() {
        let in_brute = expected.next_if(|&&a| a == d).is_some();
        if in_brute != symbolic.contains(d) {
            return Some(d);
        }
    }
    None
}

fn conditions_disagreement(engine: &Engine, r: &ArcRegion) -> Option<String> {
    let cond_i = check_condition_i(r, CheckMode::Exact).expect("explicit sets are finite");
    let conditions = cond_i.holds() && check_condition_ii(r).holds();
    let closed = engine.closure(r) == *r;
    (conditions != closed).then(|| format!("conditions (i),(ii) say {conditions}, ort-closedness says {closed}"))
}

fn census_disagreement(r: &ArcRegion) -> Option<(Arc, String)> {
    let profile = fountains(r);
    let c = r.max_abs_constant();
    for e in -c - 2..=c + 2 {
        let k = c + e.abs() + 4;
        let near = fountain_census(r, e, Window::new(-k, k).ok()?);
        let far = fountain_census(r, e, Window::new(-2 * k, 2 * k).ok()?);
        let grows_left = far.left_count > near.left_count;
        let grows_right = far.right_count > near.right_count;
        if grows_left != profile.left.contains(e) || grows_right != profile.right.contains(e) {
            let detail = format!("integer {e}: census growth left {grows_left} right {grows_right}, profile {profile}");
            return Some((Arc::raw(e - 2, e), detail));
        }
    }
    None
}

/// Runs every differential suite against the exact engine.
pub fn agreement_report(config: &OracleConfig) -> AgreementSummary {
    agreement_report_with(config, &Engine::exact())
}

pub fn agreement_report_with(config: &OracleConfig, engine: &Engine) -> AgreementSummary {
    if config.cases == 0 {
        return AgreementSummary::default();
    }
    let mut ort_suite = SuiteResult::new("ort_vs_brute");
    let mut cond_suite = SuiteResult::new("conditions_vs_closure");
    let mut census_suite = SuiteResult::new("fountains_vs_census");
    let w = config.window;
    for i in 0..config.cases {
        let seed = config.seed.wrapping_add(i as u64);

        let r = random_region(seed, 6, 8);
        if ort_disagreement(engine, &r, w, config.margin).is_some() {
            ort_suite.failed += 1;
            if ort_suite.counterexample.is_none() {
                let (region, arc) = minimize(&r, |x| ort_disagreement(engine, x, w, config.margin));
                ort_suite.counterexample = Some(Counterexample {
                    detail: format!("exact ort and window oracle disagree on {arc}"),
                    region,
                    arc: Some(arc),
                });
            }
        } else {
            ort_suite.passed += 1;
        }

        let s = random_explicit_set(seed, 12, 10);
        if conditions_disagreement(engine, &s).is_some() {
            cond_suite.failed += 1;
            if cond_suite.counterexample.is_none() {
                let (region, detail) = minimize(&s, |x| conditions_disagreement(engine, x));
                cond_suite.counterexample = Some(Counterexample {
                    region,
                    arc: None,
                    detail,
                });
            }
        } else {
            cond_suite.passed += 1;
        }

        if census_disagreement(&r).is_some() {
            census_suite.failed += 1;
            if census_suite.counterexample.is_none() {
                let (region, (arc, detail)) = minimize(&r, census_disagreement);
                census_suite.counterexample = Some(Counterexample {
                    region,
                    arc: Some(arc),
                    detail,
                });
            }
        } else {
            census_suite.passed += 1;
        }
    }
    AgreementSummary {
        cases: config.cases,
        suites: vec![ort_suite, cond_suite, census_suite],
    }
}
