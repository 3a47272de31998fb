//! The `arcline` command: argument model and command execution.
//!
//! [`run_command`] does all the work and returns the exit status together
//! with the report text, so tests can drive it without spawning a process.

use std::fmt;
use std::fs;

use arcline::classify::{self, left_perp, right_perp, CheckMode};
use arcline::oracle::{self, agreement_report, OracleConfig};
use arcline::render::{render, Format};
use arcline::{closure, ort, parse_region, Arc, ArcRegion, Error, ParseError, Window};
use clap::{Parser, ValueEnum};
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    /// Full classification report
    Classify,
    /// Arcs crossing no arc of the region
    Ort,
    /// Smallest ort-closed region containing the region
    Closure,
    /// Right perpendicular category
    Coaisle,
    /// Precover of --object
    Precover,
    /// Preenvelope of --object
    Preenvelope,
    /// Run invariant checks on the region
    Check,
    /// Draw the region's arcs inside --window
    Render,
    /// Differential test of the engine against brute force
    Oracle,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    /// Only for `render`
    Svg,
}

#[derive(Clone, Debug, Parser)]
#[command(name = "arcline", version, about = "Exact arc-set computations on the integer line")]
pub struct Command {
    #[arg(value_enum)]
    pub verb: Verb,

    /// Region in DSL syntax, or @PATH to read it from a file
    #[arg(long, allow_hyphen_values = true)]
    pub region: Option<String>,

    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,

    /// Window LO..HI for render, check and oracle
    #[arg(long, allow_hyphen_values = true)]
    pub window: Option<Window>,

    /// Target arc "(m,n)" for precover and preenvelope
    #[arg(long, allow_hyphen_values = true)]
    pub object: Option<Arc>,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long)]
    pub cases: Option<usize>,
}

impl Command {
    pub fn new(verb: Verb) -> Command {
        Command {
            verb,
            region: None,
            format: OutputFormat::Text,
            window: None,
            object: None,
            seed: 0,
            cases: None,
        }
    }

    pub fn region(mut self, source: &str) -> Command {
        self.region = Some(source.to_string());
        self
    }

    pub fn format(mut self, format: OutputFormat) -> Command {
        self.format = format;
        self
    }

    pub fn window(mut self, w: Window) -> Command {
        self.window = Some(w);
        self
    }

    pub fn object(mut self, x: Arc) -> Command {
        self.object = Some(x);
        self
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Parse(ParseError),
    Engine(Error),
}

impl Failure {
    fn status(&self) -> i32 {
        match self {
            Failure::Usage(_) | Failure::Parse(_) => EXIT_USAGE,
            Failure::Engine(e) if e.is_internal() => EXIT_INTERNAL,
            Failure::Engine(
                Error::NotAnArc { .. }
                | Error::BadArcSyntax(_)
                | Error::BadWindowSyntax(_)
                | Error::InvertedWindow { .. },
            ) => EXIT_USAGE,
            Failure::Engine(_) => EXIT_PRECONDITION,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(s) => f.write_str(s),
            Failure::Parse(e) => write!(f, "{e}"),
            Failure::Engine(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Engine(e)
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Failure {
        Failure::Parse(e)
    }
}

/// A flat report, rendered as `key: value` lines or one JSON object.
struct Report {
    pairs: Vec<(String, String)>,
    failed: bool,
}

impl Report {
    fn new<K: Into<String>>(pairs: impl IntoIterator<Item = (K, String)>) -> Report {
        Report {
            pairs: pairs.into_iter().map(|(k, v)| (k.into(), v)).collect(),
            failed: false,
        }
    }

    fn emit(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut map = Map::new();
                for (k, v) in &self.pairs {
                    let value = match v.as_str() {
                        "true" => Value::Bool(true),
                        "false" => Value::Bool(false),
                        _ => v
                            .parse::<u64>()
                            .map(Value::from)
                            .unwrap_or_else(|_| Value::String(v.clone())),
                    };
                    map.insert(k.clone(), value);
                }
                format!("{}\n", Value::Object(map))
            }
            _ => self.pairs.iter().map(|(k, v)| format!("{k}: {v}\n")).collect(),
        }
    }
}

fn load_region(cmd: &Command) -> Result<ArcRegion, Failure> {
    let source = cmd
        .region
        .as_deref()
        .ok_or_else(|| Failure::Usage(format!("{:?} needs --region", cmd.verb).to_lowercase()))?;
    let text = match source.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?,
        None => source.to_string(),
    };
    Ok(parse_region(&text)?)
}

fn require_object(cmd: &Command) -> Result<Arc, Failure> {
    cmd.object
        .ok_or_else(|| Failure::Usage(format!("{:?} needs --object \"(m,n)\"", cmd.verb).to_lowercase()))
}

fn region_output(r: &ArcRegion, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => Report::new([("region", r.to_string())]).emit(format),
        _ => format!("{r}\n"),
    }
}

fn default_window(r: &ArcRegion) -> Window {
    let k = (r.max_abs_constant() + 2).min(99);
    Window::new(-k, k).expect("symmetric window")
}

fn approximation(cmd: &Command, envelope: bool) -> Result<Report, Failure> {
    let r = load_region(cmd)?;
    let x = require_object(cmd)?;
    let p = if envelope {
        classify::preenvelope_construct(&r, x)?
    } else {
        classify::precover_construct(&r, x)?
    };
    let components: Vec<String> = p.components.iter().map(Arc::to_string).collect();
    Ok(Report::new([
        ("target", p.target.to_string()),
        ("components", components.join(" ")),
        (
            "fountain_line",
            p.fountain_line.map_or("none".to_string(), |c| c.to_string()),
        ),
    ]))
}

/// Invariants every region must satisfy; any failure is an engine bug.
fn check(cmd: &Command) -> Result<Report, Failure> {
    let r = load_region(cmd)?;
    let o = ort(&r);
    let c = closure(&r);
    let mut checks = vec![
        ("ort_cubed_is_ort", ort(&c) == o),
        ("closure_extensive", r.is_subset(&c)),
        ("closure_idempotent", closure(&c) == c),
        ("ort_commutes_with_shift", ort(&r.shift(1)) == o.shift(1)),
        ("ort_commutes_with_mirror", ort(&r.mirror()) == o.mirror()),
        ("double_perp_is_closure", left_perp(&right_perp(&r)) == c),
    ];
    if r.is_finite() {
        let conditions =
            classify::check_condition_i(&r, CheckMode::Exact)?.holds() && classify::check_condition_ii(&r).holds();
        checks.push(("conditions_match_closedness", conditions == (c == r)));
    }
    let w = cmd.window.unwrap_or_else(|| Window::new(-8, 8).expect("valid window"));
    let brute = oracle::brute_ort_window(&r, w, oracle::sound_margin(&r, w), false)?;
    checks.push(("ort_matches_window_oracle", brute == o.enumerate_window(w)));
    checks.push(("classification_consistent", classify::classify(&r).is_ok()));

    let failed = checks.iter().any(|&(_, ok)| !ok);
    let mut report = Report::new(
        checks
            .into_iter()
            .map(|(k, ok)| (k, if ok { "pass" } else { "fail" }.to_string())),
    );
    report.failed = failed;
    Ok(report)
}

fn run(cmd: &Command) -> Result<(String, bool), Failure> {
    if cmd.format == OutputFormat::Svg && cmd.verb != Verb::Render {
        return Err(Failure::Usage("--format svg is only available for render".to_string()));
    }
    let text_or_json = |report: Report| (report.emit(cmd.format), report.failed);
    Ok(match cmd.verb {
        Verb::Classify => {
            let r = load_region(cmd)?;
            text_or_json(Report::new(classify::classify(&r)?.to_pairs()))
        }
        Verb::Ort => (region_output(&ort(&load_region(cmd)?), cmd.format), false),
        Verb::Closure => (region_output(&closure(&load_region(cmd)?), cmd.format), false),
        Verb::Coaisle => (region_output(&right_perp(&load_region(cmd)?), cmd.format), false),
        Verb::Precover => text_or_json(approximation(cmd, false)?),
        Verb::Preenvelope => text_or_json(approximation(cmd, true)?),
        Verb::Check => text_or_json(check(cmd)?),
        Verb::Render => {
            let r = load_region(cmd)?;
            let w = cmd.window.unwrap_or_else(|| default_window(&r));
            match cmd.format {
                OutputFormat::Svg => (render(&r, w, Format::Svg)?, false),
                OutputFormat::Text => (render(&r, w, Format::Ascii)?, false),
                OutputFormat::Json => text_or_json(Report::new([("figure", render(&r, w, Format::Ascii)?)])),
            }
        }
        Verb::Oracle => {
            let defaults = OracleConfig::default();
            let config = OracleConfig {
                window: cmd.window.unwrap_or(defaults.window),
                seed: cmd.seed,
                cases: cmd.cases.unwrap_or(defaults.cases),
                ..defaults
            };
            let summary = agreement_report(&config);
            let mut report = Report::new(summary.to_pairs());
            report.failed = summary.failures() > 0;
            text_or_json(report)
        }
    })
}

pub fn run_command(cmd: &Command) -> Outcome {
    match run(cmd) {
        Ok((stdout, false)) => Outcome {
            status: EXIT_OK,
            stdout,
            stderr: String::new(),
        },
        Ok((stdout, true)) => Outcome {
            status: EXIT_INTERNAL,
            stdout,
            stderr: "error: invariant check failed\n".to_string(),
        },
        Err(f) => Outcome {
            status: f.status(),
            stdout: String::new(),
            stderr: format!("error: {f}\n"),
        },
    }
}
