//! Arc diagrams on a number line, as plain text or SVG.
//!
//! Arcs are drawn above the line. A fountain inside the window gets an
//! escape mark pointing toward the side where its arcs leave the window.

use std::fmt::Write as _;

use crate::arc::{Arc, Window};
use crate::error::Error;
use crate::ort::fountains;
use crate::region::ArcRegion;

/// Widest window, in integers, the text renderer accepts.
pub const MAX_ASCII_INTEGERS: i64 = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Ascii,
    Svg,
}

pub fn render(r: &ArcRegion, w: Window, format: Format) -> Result<String, Error> {
    match format {
        Format::Ascii => render_ascii(r, w),
        Format::Svg => Ok(render_svg(r, w)),
    }
}

struct Escapes {
    left: Vec<i64>,
    right: Vec<i64>,
}

fn escapes(r: &ArcRegion, w: Window) -> Escapes {
    let profile = fountains(r);
    Escapes {
        left: (w.lo()..=w.hi()).filter(|&e| profile.left.contains(e)).collect(),
        right: (w.lo()..=w.hi()).filter(|&e| profile.right.contains(e)).collect(),
    }
}

/// Levels so that arcs sharing any column never share a row; shorter arcs
/// sit lower.
fn levels(arcs: &[Arc]) -> Vec<(Arc, usize)> {
    let mut sorted = arcs.to_vec();
    sorted.sort_by_key(|a| (a.len(), a.m()));
    let mut placed: Vec<(Arc, usize)> = Vec::with_capacity(sorted.len());
    for a in sorted {
        let level = placed
            .iter()
            .filter(|(b, _)| b.m() <= a.n() && a.m() <= b.n())
            .map(|&(_, l)| l)
            .max()
            .unwrap_or(0)
            + 1;
        placed.push((a, level));
    }
    placed
}

fn join_list(xs: &[i64]) -> String {
    xs.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
}

pub fn render_ascii(r: &ArcRegion, w: Window) -> Result<String, Error> {
    if w.width() + 1 > MAX_ASCII_INTEGERS {
        return Err(Error::WindowTooWide {
            window: w,
            max: MAX_ASCII_INTEGERS,
        });
    }
    let label_len = w.lo().to_string().len().max(w.hi().to_string().len());
    let step = (label_len + 1).max(4);
    let col = |i: i64| label_len - 1 + step * (i - w.lo()) as usize;
    let width = col(w.hi()) + 2;

    let arcs = r.enumerate_window(w);
    let placed = levels(&arcs);
    let top = placed.iter().map(|&(_, l)| l).max().unwrap_or(0);
    // rows[0] is the row just above the line and only holds legs
    let mut rows = vec![vec![b' '; width]; if top == 0 { 0 } else { top + 1 }];
    for &(a, level) in &placed {
        for row in rows.iter_mut().take(level) {
            for x in [col(a.m()), col(a.n())] {
                if row[x] == b' ' {
                    row[x] = b'|';
                }
            }
        }
        let row = &mut rows[level];
        for cell in &mut row[col(a.m()) + 1..col(a.n())] {
            *cell = b'-';
        }
        row[col(a.m())] = b'.';
        row[col(a.n())] = b'.';
    }

    let mut lines: Vec<String> = rows
        .iter()
        .rev()
        .map(|row| String::from_utf8_lossy(row).into_owned())
        .collect();
    let mut axis = vec![b'-'; col(w.hi()) + 1];
    axis[..col(w.lo())].fill(b' ');
    let mut labels = vec![b' '; col(w.hi()) + 1];
    for i in w.lo()..=w.hi() {
        axis[col(i)] = b'+';
        let s = i.to_string();
        let start = col(i) + 1 - s.len();
        labels[start..=col(i)].copy_from_slice(s.as_bytes());
    }
    lines.push(String::from_utf8_lossy(&axis).into_owned());
    lines.push(String::from_utf8_lossy(&labels).into_owned());

    let esc = escapes(r, w);
    if !esc.left.is_empty() || !esc.right.is_empty() {
        let mut marks = vec![b' '; width];
        for &e in &esc.left {
            marks[col(e) - 1] = b'<';
            marks[col(e)] = b':';
        }
        for &e in &esc.right {
            marks[col(e)] = b':';
            marks[col(e) + 1] = b'>';
        }
        lines.push(String::from_utf8_lossy(&marks).into_owned());
    }

    let noun = if arcs.len() == 1 { "arc" } else { "arcs" };
    lines.push(format!("{} {noun} in window {w}", arcs.len()));
    if !esc.left.is_empty() {
        lines.push(format!("left fountains (<:): {}", join_list(&esc.left)));
    }
    if !esc.right.is_empty() {
        lines.push(format!("right fountains (:>): {}", join_list(&esc.right)));
    }

    let mut out = String::new();
    for l in lines {
        out.push_str(l.trim_end());
        out.push('\n');
    }
    Ok(out)
}

const UNIT: i64 = 40;
const PAD: i64 = 40;

pub fn render_svg(r: &ArcRegion, w: Window) -> String {
    let arcs = r.enumerate_window(w);
    let esc = escapes(r, w);
    let x = |i: i64| PAD + UNIT * (i - w.lo());
    let longest = arcs.iter().map(Arc::len).max().unwrap_or(0);
    let rise = (UNIT * longest / 2).max(if esc.left.is_empty() && esc.right.is_empty() {
        0
    } else {
        2 * UNIT
    });
    let width = x(w.hi()) + PAD;
    let base = PAD + rise;
    let height = base + PAD;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(s, r#"<rect width="{width}" height="{height}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<line x1="{}" y1="{base}" x2="{}" y2="{base}" stroke="black"/>"#,
        x(w.lo()) - PAD / 2,
        x(w.hi()) + PAD / 2
    );
    for i in w.lo()..=w.hi() {
        let _ = writeln!(s, r#"<circle cx="{}" cy="{base}" r="2" fill="black"/>"#, x(i));
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="monospace" font-size="12" text-anchor="middle">{i}</text>"#,
            x(i),
            base + 20
        );
    }
    for a in &arcs {
        let radius = UNIT * a.len() / 2;
        let _ = writeln!(
            s,
            r#"<path d="M {} {base} A {radius} {radius} 0 0 1 {} {base}" fill="none" stroke="black"/>"#,
            x(a.m()),
            x(a.n())
        );
    }
    // a fountain's arcs leave the window: a dashed curve running off the edge
    for &e in &esc.left {
        let _ = writeln!(
            s,
            r#"<path d="M {} {base} C {} {} 0 {} 0 {}" fill="none" stroke="gray" stroke-dasharray="4 3"/>"#,
            x(e),
            x(e),
            base - rise,
            base - rise,
            base - rise
        );
    }
    for &e in &esc.right {
        let _ = writeln!(
            s,
            r#"<path d="M {} {base} C {} {} {width} {} {width} {}" fill="none" stroke="gray" stroke-dasharray="4 3"/>"#,
            x(e),
            x(e),
            base - rise,
            base - rise,
            base - rise
        );
    }
    let mut note = format!("{} arcs in window {w}", arcs.len());
    if !esc.left.is_empty() {
        let _ = write!(note, "; left fountains {}", join_list(&esc.left));
    }
    if !esc.right.is_empty() {
        let _ = write!(note, "; right fountains {}", join_list(&esc.right));
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-family="monospace" font-size="12">{note}</text>"#,
        PAD / 2,
        height - 8
    );
    s.push_str("</svg>\n");
    s
}
