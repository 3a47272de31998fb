//! End-to-end acceptance criteria. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion fails, after all of them have run.

use std::io::Write;
use std::time::{Duration, Instant};

use arcline::classify::{
    check_condition_i, check_condition_ii, classify_co_t_structure, classify_t_structure, is_precovering, left_perp,
    precover_construct, right_perp, CheckMode, CoTStructure, TStructure,
};
use arcline::oracle::{brute_ort_window, random_explicit_set, random_region, sound_margin};
use arcline::render::render_ascii;
use arcline::{
    closure, hammock_from, hammock_to, hom_nonzero, ort, parse_region, print_region, shift_arc, Arc, ArcRegion, Error,
    Window,
};
use arcline_cli::{run_command, Command, Verb, EXIT_OK};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CLOSURE_LIMIT: Duration = Duration::from_secs(1);
const CONDITIONS_LIMIT: Duration = Duration::from_secs(10);
const ORACLE_LIMIT: Duration = Duration::from_secs(30);

const EXPLICIT_SETS: u64 = 500;
const ORT_CORPUS: u64 = 200;
const TORSION_CLASSES: usize = 100;
const PRECOVER_TARGETS: usize = 50;
const PERP_CLASSES: usize = 50;
const ROUND_TRIPS: u64 = 200;

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        ok,
        detail: detail.into(),
    }
}

fn win(lo: i64, hi: i64) -> Window {
    Window::new(lo, hi).unwrap()
}

fn arc(m: i64, n: i64) -> Arc {
    Arc::new(m, n).unwrap()
}

fn ort_corpus() -> Vec<ArcRegion> {
    (0..ORT_CORPUS).map(|seed| random_region(seed, 6, 8)).collect()
}

/// Closures of random regions with no right fountain outside the left
/// fountains. Every other candidate has a half plane mixed in, so that
/// suspension-closed classes actually occur.
fn torsion_classes(count: usize) -> Vec<ArcRegion> {
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < count {
        let mut r = random_region(1000 + seed, 6, 8);
        if seed % 2 == 1 {
            r = r.union(&ArcRegion::lower((seed % 11) as i64 - 5));
        }
        let c = closure(&r);
        if is_precovering(&c) {
            out.push(c);
        }
        seed += 1;
    }
    out
}

fn timed(limit: Duration, f: impl FnOnce() -> Verdict) -> Verdict {
    let start = Instant::now();
    let v = f();
    let elapsed = start.elapsed();
    let detail = format!("{}, {:.2?} (limit {:?})", v.detail, elapsed, limit);
    verdict(v.ok && elapsed < limit, detail)
}

fn worked_closure() -> Verdict {
    timed(CLOSURE_LIMIT, || {
        let got = closure(&ArcRegion::arcs([arc(0, 2), arc(1, 3)]));
        let expected = ArcRegion::arcs([arc(0, 2), arc(1, 3), arc(0, 3)]);
        verdict(got == expected, format!("closure is {got}"))
    })
}

fn conditions_on_finite_sets() -> Verdict {
    timed(CONDITIONS_LIMIT, || {
        let mut agree = 0;
        let mut first_bad = None;
        for seed in 0..EXPLICIT_SETS {
            let a = random_explicit_set(seed, 12, 10);
            let conditions = check_condition_i(&a, CheckMode::Exact).unwrap().holds() && check_condition_ii(&a).holds();
            if conditions == (closure(&a) == a) {
                agree += 1;
            } else if first_bad.is_none() {
                first_bad = Some(a);
            }
        }
        let mut detail = format!("{agree}/{EXPLICIT_SETS} explicit sets agree");
        if let Some(a) = first_bad {
            detail += &format!("; first disagreement {a}");
        }
        verdict(agree == EXPLICIT_SETS, detail)
    })
}

fn ort_against_oracle(corpus: &[ArcRegion]) -> Verdict {
    timed(ORACLE_LIMIT, || {
        let w = win(-16, 16);
        let mut agree = 0;
        let mut first_bad = None;
        for r in corpus {
            let brute = brute_ort_window(r, w, sound_margin(r, w), false).unwrap();
            if ort(r).enumerate_window(w) == brute {
                agree += 1;
            } else if first_bad.is_none() {
                first_bad = Some(r.clone());
            }
        }
        let mut detail = format!("{agree}/{} regions agree on window {w}", corpus.len());
        if let Some(r) = first_bad {
            detail += &format!("; first disagreement {r}");
        }
        verdict(agree == corpus.len(), detail)
    })
}

fn galois_laws(corpus: &[ArcRegion]) -> Verdict {
    let mut failures = Vec::new();
    for (i, r) in corpus.iter().enumerate() {
        let o = ort(r);
        let c = closure(r);
        let bigger = r.union(&corpus[(i * 7 + 3) % corpus.len()]);
        let laws = [
            ("ort^3 = ort", ort(&c) == o),
            ("r in closure", r.is_subset(&c)),
            ("closure idempotent", closure(&c) == c),
            ("antitone", ort(&bigger).is_subset(&o)),
            ("shift equivariant", ort(&r.shift(1)) == o.shift(1)),
        ];
        failures.extend(
            laws.iter()
                .filter(|(_, ok)| !ok)
                .map(|(name, _)| format!("{name} on region {i}")),
        );
    }
    verdict(
        failures.is_empty(),
        format!(
            "{} regions x 5 laws, {} failures {:?}",
            corpus.len(),
            failures.len(),
            failures.first()
        ),
    )
}

fn precovers() -> Verdict {
    let upper = ArcRegion::upper(0);
    let rejected = !is_precovering(&upper)
        && matches!(
            precover_construct(&upper, arc(0, 5)),
            Err(Error::NotPrecovering { fountain: 0 })
        );

    let lower = ArcRegion::lower(3);
    let w = win(-20, 20);
    let sources: Vec<Arc> = lower.enumerate_window(w);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut covered = 0;
    let mut first_bad = None;
    for _ in 0..PRECOVER_TARGETS {
        let m = rng.gen_range(-8..=8);
        let x = arc(m, m + rng.gen_range(2..=8));
        let ok = match precover_construct(&lower, x) {
            Ok(p) => {
                let components_ok = p.components.iter().all(|&z| lower.contains(z) && hom_nonzero(z, x));
                let reach = sources
                    .iter()
                    .filter(|&&y| hom_nonzero(y, x))
                    .all(|&y| p.components.iter().any(|&z| hom_nonzero(y, z)));
                components_ok && reach
            }
            Err(_) => false,
        };
        if ok {
            covered += 1;
        } else if first_bad.is_none() {
            first_bad = Some(x);
        }
    }
    verdict(
        rejected && covered == PRECOVER_TARGETS,
        format!(
            "upper(0) rejected: {rejected}; {covered}/{PRECOVER_TARGETS} targets covered on window {w}{}",
            first_bad.map_or(String::new(), |x| format!("; first failure {x}"))
        ),
    )
}

fn t_structures(classes: &[ArcRegion]) -> Verdict {
    let half_lines = (-5..=5).all(|n| classify_t_structure(&ArcRegion::lower(n)) == Ok(TStructure::HalfLine(n)));
    let mut closed = 0;
    let mut violations = Vec::new();
    for u in classes {
        if !u.shift(1).is_subset(u) {
            continue;
        }
        closed += 1;
        match classify_t_structure(u) {
            Ok(TStructure::Zero | TStructure::All | TStructure::HalfLine(_)) => {}
            other => violations.push(format!("{u}: {other:?}")),
        }
    }
    verdict(
        half_lines && violations.is_empty() && closed > 0,
        format!(
            "lower(n) for n in -5..5: {half_lines}; {closed}/{} classes suspension-closed, {} violations {:?}",
            classes.len(),
            violations.len(),
            violations.first()
        ),
    )
}

fn co_t_structures(classes: &[ArcRegion]) -> Verdict {
    let mut closed = 0;
    let mut violations = Vec::new();
    for u in classes {
        if u.is_empty() || !u.shift(-1).is_subset(u) {
            continue;
        }
        closed += 1;
        let all = *u == ArcRegion::all();
        if !all || classify_co_t_structure(u) != Ok(CoTStructure::All) {
            violations.push(u.to_string());
        }
    }
    verdict(
        violations.is_empty(),
        format!(
            "{closed}/{} nonzero classes desuspension-closed, {} not everything {:?}",
            classes.len(),
            violations.len(),
            violations.first()
        ),
    )
}

fn serre_duality() -> Verdict {
    let w = win(-10, 10);
    let arcs: Vec<Arc> = w.arcs().collect();
    let mut pairs = 0;
    let mut bad = 0;
    for &x in &arcs {
        let from = hammock_from(x);
        let to = hammock_to(x);
        for &y in &arcs {
            pairs += 1;
            let symmetric = hom_nonzero(x, y) == hom_nonzero(y, shift_arc(x, 2));
            let hammocks = from.contains(y) == hom_nonzero(y, x) && to.contains(y) == hom_nonzero(x, y);
            if !symmetric || !hammocks {
                bad += 1;
            }
        }
    }
    verdict(bad == 0, format!("{pairs} pairs on window {w}, {bad} failures"))
}

fn perpendiculars(classes: &[ArcRegion]) -> Verdict {
    let w = win(-12, 12);
    let mut bad = Vec::new();
    for (i, x) in classes.iter().take(PERP_CLASSES).enumerate() {
        let y = right_perp(x);
        let ys = y.enumerate_window(w);
        let orthogonal = x
            .enumerate_window(w)
            .iter()
            .all(|&p| ys.iter().all(|&q| !hom_nonzero(p, q)));
        if !orthogonal || left_perp(&y) != *x {
            bad.push(i);
        }
    }
    verdict(
        bad.is_empty(),
        format!("{PERP_CLASSES} torsion classes on window {w}, failing {bad:?}"),
    )
}

const RENDER_GOLDEN: &str = concat!(
    "     .-----------.\n",
    "     |           |\n",
    " +---+---+---+---+---+\n",
    "-2  -1   0   1   2   3\n",
    "1 arc in window -2..3\n",
);

fn golden_report(t: &str, co: &str, rows: [&str; 9], canonical: &str) -> String {
    let keys = [
        "fountains.left",
        "fountains.right",
        "locally_finite",
        "condition_i",
        "condition_ii",
        "ort_closed",
        "precovering",
        "preenveloping",
        "torsion_class",
    ];
    let mut s: String = keys.iter().zip(rows).map(|(k, v)| format!("{k}: {v}\n")).collect();
    s += &format!("t_structure: {t}\nco_t_structure: {co}\ncanonical_parts: {canonical}\n");
    s
}

fn cli() -> Verdict {
    let mut trips = 0;
    for seed in 0..ROUND_TRIPS {
        let r = random_region(5000 + seed, 6, 8);
        if parse_region(&print_region(&r)).as_ref() == Ok(&r) {
            trips += 1;
        }
    }
    let goldens = [
        (
            "lower(3)",
            golden_report(
                "HalfLine(3)",
                "Not",
                [
                    "(-inf,3]",
                    "empty",
                    "false",
                    "holds in window -11..11",
                    "holds",
                    "true",
                    "true",
                    "false",
                    "true",
                ],
                "lower(3)",
            ),
        ),
        (
            "upper(0)",
            golden_report(
                "Not",
                "Not",
                [
                    "empty",
                    "[0,+inf)",
                    "false",
                    "holds in window -10..10",
                    "holds",
                    "true",
                    "false",
                    "true",
                    "false",
                ],
                "upper(0)",
            ),
        ),
        (
            "all",
            golden_report(
                "All",
                "All",
                [
                    "(-inf,+inf)",
                    "(-inf,+inf)",
                    "false",
                    "holds in window -10..10",
                    "holds",
                    "true",
                    "true",
                    "true",
                    "true",
                ],
                "all",
            ),
        ),
        (
            "empty",
            golden_report(
                "Zero",
                "Zero",
                [
                    "empty", "empty", "true", "holds", "holds", "true", "true", "true", "true",
                ],
                "empty",
            ),
        ),
    ];
    let mut mismatched = Vec::new();
    for (region, expected) in &goldens {
        let out = run_command(&Command::new(Verb::Classify).region(region));
        if out.status != EXIT_OK || out.stdout != *expected {
            mismatched.push(*region);
        }
    }
    let figure = render_ascii(&ArcRegion::arcs([arc(-1, 2)]), win(-2, 3));
    let figure_ok = figure.as_deref() == Ok(RENDER_GOLDEN);
    verdict(
        trips == ROUND_TRIPS && mismatched.is_empty() && figure_ok,
        format!(
            "{trips}/{ROUND_TRIPS} round trips; classify goldens mismatched {mismatched:?}; render golden {}",
            if figure_ok { "matches" } else { "differs" }
        ),
    )
}

#[test]
fn acceptance() {
    let corpus = ort_corpus();
    let classes = torsion_classes(TORSION_CLASSES);
    let criteria: Vec<Criterion> = vec![
        ("worked closure", Box::new(worked_closure)),
        (
            "finite-set conditions match closedness",
            Box::new(conditions_on_finite_sets),
        ),
        (
            "symbolic ort matches brute force",
            Box::new(|| ort_against_oracle(&corpus)),
        ),
        ("Galois laws", Box::new(|| galois_laws(&corpus))),
        ("precovers", Box::new(precovers)),
        ("t-structures are half planes", Box::new(|| t_structures(&classes))),
        ("co-t-structures are trivial", Box::new(|| co_t_structures(&classes))),
        ("2-CY symmetry and hammocks", Box::new(serre_duality)),
        ("torsion orthogonality", Box::new(|| perpendiculars(&classes))),
        ("CLI round trip and goldens", Box::new(cli)),
    ];
    let mut failed = Vec::new();
    let mut out = std::io::stdout().lock();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let v = run();
        let mark = if v.ok { "PASS" } else { "FAIL" };
        writeln!(out, "criterion {:>2} {mark}: {name}: {}", i + 1, v.detail).unwrap();
        if !v.ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
