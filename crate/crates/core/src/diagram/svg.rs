//! Deterministic SVG 1.1 rendering of diagrams.

use std::fmt::Write;

use super::{Diagram, Slice};

const STEP: f64 = 40.0;
const ROW: f64 = 48.0;
const MARGIN: f64 = 24.0;

fn x(pos: usize) -> f64 {
    MARGIN + STEP * (pos as f64 - 0.5)
}

fn line(out: &mut String, x1: f64, y1: f64, x2: f64, y2: f64) {
    let _ = writeln!(out, r#"  <line x1="{x1:.1}" y1="{y1:.1}" x2="{x2:.1}" y2="{y2:.1}"/>"#);
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Splits and merges are black dots, whites are labelled circles, and a
/// positive crossing draws the strand starting on the left over the other.
pub fn render(d: &Diagram) -> String {
    let n = d.arity();
    let counts = d.wire_counts();
    let widest = counts.iter().copied().max().unwrap_or(1);
    let width = 2.0 * MARGIN + STEP * widest as f64;
    let height = 2.0 * MARGIN + ROW * (d.slices().len() as f64 + 1.0);
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(out, r#" <g stroke="black" stroke-width="2" fill="none">"#);
    let top = MARGIN + ROW / 2.0;
    for p in 1..=d.sources() {
        line(&mut out, x(p), MARGIN, x(p), top);
    }
    let mut nodes = String::new();
    for (k, s) in d.slices().iter().enumerate() {
        let y0 = top + ROW * k as f64;
        let y1 = y0 + ROW;
        let ym = (y0 + y1) / 2.0;
        let (p, i, _) = s.span(n);
        for w in 1..=counts[k] {
            if w < p {
                line(&mut out, x(w), y0, x(w), y1);
            } else if w >= p + i {
                let shift = counts[k + 1] as isize - counts[k] as isize;
                line(&mut out, x(w), y0, x((w as isize + shift) as usize), y1);
            }
        }
        match s {
            Slice::Split(p) => {
                line(&mut out, x(*p), y0, x(*p), ym);
                for c in 0..n {
                    line(&mut out, x(*p), ym, x(p + c), y1);
                }
                let _ = writeln!(nodes, r#"  <circle cx="{:.1}" cy="{ym:.1}" r="4" fill="black"/>"#, x(*p));
            }
            Slice::Merge(p) => {
                for c in 0..n {
                    line(&mut out, x(p + c), y0, x(*p), ym);
                }
                line(&mut out, x(*p), ym, x(*p), y1);
                let _ = writeln!(nodes, r#"  <circle cx="{:.1}" cy="{ym:.1}" r="4" fill="black"/>"#, x(*p));
            }
            Slice::White(p, h) => {
                line(&mut out, x(*p), y0, x(*p), y1);
                let _ = writeln!(nodes, r#"  <circle cx="{:.1}" cy="{ym:.1}" r="9" fill="white" stroke="black"/>"#, x(*p));
                let _ = writeln!(
                    nodes,
                    r#"  <text x="{:.1}" y="{:.1}" font-family="monospace" font-size="11">{}</text>"#,
                    x(*p) + 12.0,
                    ym + 4.0,
                    escape(&h.display(d.spec()).to_string())
                );
            }
            Slice::Cross(c, sign) => {
                let (l, r) = (x(*c), x(c + 1));
                // over strand is drawn whole, under strand with a gap
                let (over, under) = if *sign > 0 { ((l, r), (r, l)) } else { ((r, l), (l, r)) };
                line(&mut out, over.0, y0, over.1, y1);
                let t = 0.38;
                let (ux0, ux1) = under;
                line(&mut out, ux0, y0, ux0 + (ux1 - ux0) * t, y0 + ROW * t);
                line(&mut out, ux0 + (ux1 - ux0) * (1.0 - t), y0 + ROW * (1.0 - t), ux1, y1);
            }
        }
    }
    let bottom = top + ROW * d.slices().len() as f64;
    for p in 1..=d.sinks() {
        line(&mut out, x(p), bottom, x(p), bottom + ROW / 2.0);
    }
    let _ = writeln!(out, " </g>");
    out.push_str(&nodes);
    let _ = writeln!(out, "</svg>");
    out
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::subgroup::SubgroupSpec;

    #[test]
    fn deterministic_and_well_formed() {
        let spec = Arc::new(SubgroupSpec::braid_group(2));
        let d = Diagram::new(
            spec.clone(),
            1,
            vec![Slice::Split(1), Slice::Cross(1, 1), Slice::White(2, spec.label("s1").unwrap()), Slice::Merge(1)],
        )
        .unwrap();
        let a = render(&d);
        assert_eq!(a, render(&d));
        assert!(a.starts_with("<?xml"));
        assert!(a.contains(r#"version="1.1""#));
        assert!(a.trim_end().ends_with("</svg>"));
        assert_eq!(a.matches("<circle").count(), 3);
    }
}
