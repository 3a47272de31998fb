//! Text syntax for regions.
//!
//! ```text
//! region := term { "|" term }
//! term   := "arcs" "{" [arc {"," arc}] "}"
//!         | "box" "(" range "," range ["," "diag" range] ")"
//!         | "lower" "(" INT ")" | "upper" "(" INT ")"
//!         | "leftray" "(" INT "," INT ")" | "rightray" "(" INT "," INT ")"
//!         | "all" | "empty"
//!         | "shift" "(" INT "," region ")" | "not" "(" region ")"
//!         | "(" region ")"
//! range  := ("[" | "(") (INT | "-inf") "," (INT | "+inf") ("]" | ")")
//! arc    := "(" INT "," INT ")"
//! ```
//!
//! `lower(b)` is every arc with right end at most `b`, `upper(a)` every arc
//! with left end at least `a`, `leftray(e, t)` the arcs `(m, e)` with
//! `m <= t` and `rightray(e, t)` the arcs `(e, n)` with `n >= t`.
//! Whitespace is insignificant and `#` starts a comment running to the end
//! of the line.

use std::fmt::Write as _;

use thiserror::Error;

use crate::arc::Arc;
use crate::interval::IntInterval;
use crate::region::{ArcRegion, Trapezoid};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {line}:{column}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        line: usize,
        column: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("invalid region at {line}:{column}: {message}")]
    Semantic {
        line: usize,
        column: usize,
        message: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    NegInf,
    PosInf,
    Punct(char),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(v) => format!("integer {v}"),
            Tok::NegInf => "`-inf`".to_string(),
            Tok::PosInf => "`+inf`".to_string(),
            Tok::Punct(c) => format!("`{c}`"),
            Tok::Eof => "end of input".to_string(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let advance = |i: &mut usize, col: &mut usize, k: usize| {
        *i += k;
        *col += k;
    };
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            advance(&mut i, &mut col, 1);
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                advance(&mut i, &mut col, 1);
            }
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 4)].iter().collect();
        if rest == "-inf" || rest == "+inf" {
            let tok = if c == '-' { Tok::NegInf } else { Tok::PosInf };
            out.push(Token {
                tok,
                line: tl,
                column: tc,
            });
            advance(&mut i, &mut col, 4);
            continue;
        }
        if c.is_ascii_digit() || (c == '-' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let start = i;
            advance(&mut i, &mut col, 1);
            while i < chars.len() && chars[i].is_ascii_digit() {
                advance(&mut i, &mut col, 1);
            }
            let text: String = chars[start..i].iter().collect();
            let v = text.parse::<i64>().map_err(|_| ParseError::Semantic {
                line: tl,
                column: tc,
                message: format!("integer {text} out of range"),
            })?;
            out.push(Token {
                tok: Tok::Int(v),
                line: tl,
                column: tc,
            });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                advance(&mut i, &mut col, 1);
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Ident(text),
                line: tl,
                column: tc,
            });
            continue;
        }
        if "{}()[],|".contains(c) {
            out.push(Token {
                tok: Tok::Punct(c),
                line: tl,
                column: tc,
            });
            advance(&mut i, &mut col, 1);
            continue;
        }
        return Err(ParseError::Syntax {
            line: tl,
            column: tc,
            expected: vec!["a region term".to_string()],
            found: format!("`{c}`"),
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

const TERM_STARTS: &[&str] = &[
    "`arcs`",
    "`box`",
    "`lower`",
    "`upper`",
    "`leftray`",
    "`rightray`",
    "`all`",
    "`empty`",
    "`shift`",
    "`not`",
    "`(`",
];

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        let t = self.peek();
        Err(ParseError::Syntax {
            line: t.line,
            column: t.column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: t.tok.describe(),
        })
    }

    fn punct(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek().tok == Tok::Punct(c) {
            self.bump();
            Ok(())
        } else {
            self.fail(&[&format!("`{c}`")])
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        match self.peek().tok {
            Tok::Int(v) => {
                self.bump();
                Ok(v)
            }
            _ => self.fail(&["integer"]),
        }
    }

    fn region(&mut self) -> Result<ArcRegion, ParseError> {
        let mut acc = self.term()?;
        while self.peek().tok == Tok::Punct('|') {
            self.bump();
            acc = acc.union(&self.term()?);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<ArcRegion, ParseError> {
        let word = match &self.peek().tok {
            Tok::Ident(w) => w.clone(),
            Tok::Punct('(') => {
                self.bump();
                let r = self.region()?;
                self.punct(')')?;
                return Ok(r);
            }
            _ => return self.fail(TERM_STARTS),
        };
        match word.as_str() {
            "all" => {
                self.bump();
                Ok(ArcRegion::all())
            }
            "empty" => {
                self.bump();
                Ok(ArcRegion::empty())
            }
            "arcs" => {
                self.bump();
                self.arcs()
            }
            "box" => {
                self.bump();
                self.punct('(')?;
                let m = self.range()?;
                self.punct(',')?;
                let n = self.range()?;
                let mut d = IntInterval::all();
                if self.peek().tok == Tok::Punct(',') {
                    self.bump();
                    match &self.peek().tok {
                        Tok::Ident(w) if w == "diag" => {
                            self.bump();
                        }
                        _ => return self.fail(&["`diag`"]),
                    }
                    d = self.range()?;
                }
                self.punct(')')?;
                Ok(ArcRegion::boxed(m, n, d))
            }
            "lower" | "upper" => {
                self.bump();
                self.punct('(')?;
                let v = self.int()?;
                self.punct(')')?;
                Ok(if word == "lower" {
                    ArcRegion::lower(v)
                } else {
                    ArcRegion::upper(v)
                })
            }
            "leftray" | "rightray" => {
                self.bump();
                self.punct('(')?;
                let e = self.int()?;
                self.punct(',')?;
                let t = self.int()?;
                self.punct(')')?;
                Ok(if word == "leftray" {
                    ArcRegion::leftray(e, t)
                } else {
                    ArcRegion::rightray(e, t)
                })
            }
            "shift" => {
                self.bump();
                self.punct('(')?;
                let k = self.int()?;
                self.punct(',')?;
                let r = self.region()?;
                self.punct(')')?;
                Ok(r.shift(k))
            }
            "not" => {
                self.bump();
                self.punct('(')?;
                let r = self.region()?;
                self.punct(')')?;
                Ok(r.complement())
            }
            _ => self.fail(TERM_STARTS),
        }
    }

    fn arcs(&mut self) -> Result<ArcRegion, ParseError> {
        self.punct('{')?;
        let mut arcs = Vec::new();
        if self.peek().tok != Tok::Punct('}') {
            loop {
                let at = self.peek().clone();
                self.punct('(')?;
                let m = self.int()?;
                self.punct(',')?;
                let n = self.int()?;
                self.punct(')')?;
                let a = Arc::new(m, n).map_err(|_| ParseError::Semantic {
                    line: at.line,
                    column: at.column,
                    message: format!("({m},{n}) is not an arc, n-m < 2"),
                })?;
                arcs.push(a);
                match self.peek().tok {
                    Tok::Punct(',') => {
                        self.bump();
                    }
                    Tok::Punct('}') => break,
                    _ => return self.fail(&["`,`", "`}`"]),
                }
            }
        }
        self.punct('}')?;
        Ok(ArcRegion::arcs(arcs))
    }

    fn range(&mut self) -> Result<IntInterval, ParseError> {
        let at = self.peek().clone();
        let open_lo = match self.peek().tok {
            Tok::Punct('[') => false,
            Tok::Punct('(') => true,
            _ => return self.fail(&["`[`", "`(`"]),
        };
        self.bump();
        let lo = match self.peek().tok {
            Tok::NegInf => None,
            Tok::Int(v) => Some(v),
            _ => return self.fail(&["integer", "`-inf`"]),
        };
        self.bump();
        self.punct(',')?;
        let hi = match self.peek().tok {
            Tok::PosInf => None,
            Tok::Int(v) => Some(v),
            _ => return self.fail(&["integer", "`+inf`"]),
        };
        self.bump();
        let open_hi = match self.peek().tok {
            Tok::Punct(']') => false,
            Tok::Punct(')') => true,
            _ => return self.fail(&["`]`", "`)`"]),
        };
        self.bump();
        if let (Some(a), Some(b)) = (lo, hi) {
            if a > b {
                return Err(ParseError::Semantic {
                    line: at.line,
                    column: at.column,
                    message: format!("inverted range: {a} > {b}"),
                });
            }
        }
        Ok(IntInterval::new(
            lo.map(|a| if open_lo { a + 1 } else { a }),
            hi.map(|b| if open_hi { b - 1 } else { b }),
        ))
    }
}

pub fn parse_region(text: &str) -> Result<ArcRegion, ParseError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let r = p.region()?;
    if p.peek().tok != Tok::Eof {
        return p.fail(&["`|`", "end of input"]);
    }
    Ok(r)
}

// finite parts at most this large are printed as explicit arcs
const EXPLICIT_LIMIT: usize = 8;

fn range_text(iv: &IntInterval) -> String {
    let lo = iv.lo().map_or("(-inf".to_string(), |l| format!("[{l}"));
    let hi = iv.hi().map_or("+inf)".to_string(), |h| format!("{h}]"));
    format!("{lo},{hi}")
}

fn sugar(t: &Trapezoid) -> Option<String> {
    if t.d_interval() != IntInterval::at_least(2) {
        return None;
    }
    let (m, n) = (t.m_interval(), t.n_interval());
    match (m.lo(), m.hi(), n.lo(), n.hi()) {
        (None, None, None, None) => Some("all".to_string()),
        (None, None, None, Some(b)) => Some(format!("lower({b})")),
        (Some(a), None, None, None) => Some(format!("upper({a})")),
        (None, Some(tt), Some(e), Some(e2)) if e == e2 => Some(format!("leftray({e},{tt})")),
        (Some(e), Some(e2), Some(tt), None) if e == e2 => Some(format!("rightray({e},{tt})")),
        _ => None,
    }
}

fn box_text(t: &Trapezoid) -> String {
    let mut s = format!("box({},{}", range_text(&t.m_interval()), range_text(&t.n_interval()));
    if t.d_interval() != IntInterval::at_least(2) {
        let _ = write!(s, ",diag{}", range_text(&t.d_interval()));
    }
    s.push(')');
    s
}

/// Region in the text syntax; `parse_region` of the result is the same set.
pub fn print_region(r: &ArcRegion) -> String {
    if r.is_empty() {
        return "empty".to_string();
    }
    let mut explicit = Vec::new();
    let mut terms = Vec::new();
    for t in r.parts() {
        if let Some(s) = sugar(t) {
            terms.push(s);
            continue;
        }
        if t.is_finite() {
            let arcs = ArcRegion::from_trapezoids([*t]).finite_arcs().unwrap_or_default();
            if arcs.len() <= EXPLICIT_LIMIT {
                explicit.extend(arcs);
                continue;
            }
        }
        terms.push(box_text(t));
    }
    explicit.sort_unstable();
    let mut out = Vec::new();
    if !explicit.is_empty() {
        let list: Vec<String> = explicit.iter().map(Arc::to_string).collect();
        out.push(format!("arcs{{{}}}", list.join(",")));
    }
    out.extend(terms);
    out.join(" | ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(m: i64, n: i64) -> Arc {
        Arc::new(m, n).unwrap()
    }

    #[test]
    fn sugar_forms() {
        let r = parse_region("lower(3)").unwrap();
        assert!(r.contains(arc(-10, 3)));
        assert!(!r.contains(arc(0, 4)));
        assert_eq!(r, ArcRegion::lower(3));
        assert_eq!(parse_region("upper(-2)").unwrap(), ArcRegion::upper(-2));
        assert_eq!(
            parse_region("leftray(5, 1)").unwrap(),
            ArcRegion::boxed(IntInterval::at_most(1), IntInterval::point(5), IntInterval::all())
        );
    }

    #[test]
    fn union_of_terms() {
        let r = parse_region("arcs{(0,2),(1,3)} | rightray(5,9)").unwrap();
        let expected = ArcRegion::arcs([arc(0, 2), arc(1, 3)]).union(&ArcRegion::rightray(5, 9));
        assert_eq!(r, expected);
        assert!(r.contains(arc(5, 100)));
        assert!(!r.contains(arc(5, 8)));
    }

    #[test]
    fn rejects_non_arcs() {
        let e = parse_region("arcs{(0,1)}").unwrap_err();
        match e {
            ParseError::Semantic { line, column, message } => {
                assert_eq!((line, column), (1, 6));
                assert!(message.contains("not an arc, n-m < 2"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_report_position_and_expectations() {
        let e = parse_region("lower(3) |\n  bogus").unwrap_err();
        match e {
            ParseError::Syntax {
                line,
                column,
                expected,
                found,
            } => {
                assert_eq!((line, column), (2, 3));
                assert!(expected.contains(&"`lower`".to_string()));
                assert_eq!(found, "`bogus`");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_region("lower(3"), Err(ParseError::Syntax { .. })));
        assert!(matches!(
            parse_region("lower(3) lower(4)"),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_region("box([5,3],[0,9])"),
            Err(ParseError::Semantic { .. })
        ));
    }

    #[test]
    fn ranges_and_composites() {
        let r = parse_region("box((0,4],[6,+inf), diag [2,3])").unwrap();
        assert_eq!(
            r,
            ArcRegion::boxed(
                IntInterval::closed(1, 4),
                IntInterval::at_least(6),
                IntInterval::closed(2, 3)
            )
        );
        assert_eq!(parse_region("shift(1, lower(3))").unwrap(), ArcRegion::lower(2));
        assert_eq!(parse_region("not(not(upper(0)))").unwrap(), ArcRegion::upper(0));
        assert_eq!(parse_region(" ( all ) # everything\n").unwrap(), ArcRegion::all());
        assert!(parse_region("arcs{}").unwrap().is_empty());
    }

    #[test]
    fn prints_sugar() {
        assert_eq!(print_region(&ArcRegion::upper(-1)), "upper(-1)");
        assert_eq!(print_region(&ArcRegion::lower(3)), "lower(3)");
        assert_eq!(print_region(&ArcRegion::all()), "all");
        assert_eq!(print_region(&ArcRegion::empty()), "empty");
        assert_eq!(
            print_region(&ArcRegion::arcs([arc(1, 3), arc(0, 2)])),
            "arcs{(0,2),(1,3)}"
        );
    }

    #[test]
    fn prints_boxes_that_parse_back() {
        let r = ArcRegion::boxed(
            IntInterval::closed(-3, 9),
            IntInterval::at_least(4),
            IntInterval::closed(3, 6),
        );
        let text = print_region(&r);
        assert!(text.starts_with("box("), "{text}");
        assert_eq!(parse_region(&text).unwrap(), r);
    }
}
