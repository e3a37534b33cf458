//! Deterministic SVG output. Geometry is computed exactly and every
//! coordinate is printed with six decimals, so equal inputs give equal bytes.

use std::fmt::Write as _;

use num_traits::{One, Zero};
use overhang::balance::ForceCertificate;
use overhang::massmove::Trace;
use overhang::model::{contacts, Stack};
use overhang::rational::{half, int, rat, to_fixed, Rational};

/// Pixels per unit length.
const SCALE: i64 = 40;

fn px(q: &Rational) -> String {
    to_fixed(&(q * int(SCALE)), 6)
}

/// Maps world coordinates (y up) to SVG coordinates (y down).
struct Frame {
    left: Rational,
    top: Rational,
    width: Rational,
    height: Rational,
}

impl Frame {
    fn new(min_x: Rational, max_x: Rational, min_y: Rational, max_y: Rational) -> Self {
        let margin = half();
        Frame {
            left: &min_x - &margin,
            top: &max_y + &margin,
            width: max_x - min_x + int(1),
            height: max_y - min_y + int(1),
        }
    }

    fn x(&self, x: &Rational) -> String {
        px(&(x - &self.left))
    }

    fn y(&self, y: &Rational) -> String {
        px(&(&self.top - y))
    }

    fn open(&self, out: &mut String) {
        let (w, h) = (px(&self.width), px(&self.height));
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
        );
        out.push_str(concat!(
            "<defs><marker id=\"arrow\" markerWidth=\"6\" markerHeight=\"6\" refX=\"5\" refY=\"3\" orient=\"auto\">",
            "<path d=\"M0,0 L6,3 L0,6 z\" fill=\"#c0392b\"/></marker></defs>\n"
        ));
    }
}

fn line(
    out: &mut String,
    f: &Frame,
    class: &str,
    (x1, y1): (&Rational, &Rational),
    (x2, y2): (&Rational, &Rational),
    style: &str,
) {
    let _ = writeln!(
        out,
        r#"<line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}" {style}/>"#,
        f.x(x1),
        f.y(y1),
        f.x(x2),
        f.y(y2)
    );
}

/// Blocks as rectangles, the table as its top surface and edge at `x = 0`,
/// point weights as dots, and optionally one upward arrow per certificate
/// force with length proportional to its magnitude.
pub fn render_stack(stack: &Stack, forces: Option<&ForceCertificate>) -> String {
    let h = &stack.h;
    let xs = stack
        .blocks
        .iter()
        .map(|b| b.x.clone())
        .chain(stack.weights.iter().map(|w| w.x.clone()));
    let min_x = xs.clone().min().unwrap_or_else(Rational::zero).min(int(-1)) - int(1);
    let max_x = stack
        .blocks
        .iter()
        .map(|b| b.right())
        .max()
        .unwrap_or_else(Rational::zero)
        .max(int(1));
    let max_y = stack
        .blocks
        .iter()
        .map(|b| &b.y + h)
        .max()
        .unwrap_or_else(Rational::zero)
        .max(h.clone());
    let floor = -h.clone();
    let f = Frame::new(min_x.clone(), max_x, floor.clone(), max_y);

    let mut out = String::new();
    f.open(&mut out);
    let zero = Rational::zero();
    let table = r##"stroke="#333333" stroke-width="2""##;
    line(
        &mut out,
        &f,
        "table",
        (&min_x, &zero),
        (&zero, &zero),
        table,
    );
    line(
        &mut out,
        &f,
        "table",
        (&zero, &zero),
        (&zero, &floor),
        table,
    );
    for b in &stack.blocks {
        let _ = writeln!(
            out,
            r##"<rect class="block" x="{}" y="{}" width="{}" height="{}" fill="#d9e6f2" stroke="#1f3b57" stroke-width="1"/>"##,
            f.x(&b.x),
            f.y(&(&b.y + h)),
            px(&Rational::one()),
            px(h)
        );
    }
    for w in &stack.weights {
        let _ = writeln!(
            out,
            r##"<circle class="weight" cx="{}" cy="{}" r="4" fill="#1f3b57"/>"##,
            f.x(&w.x),
            f.y(&w.y)
        );
    }
    if let Some(cert) = forces {
        let cs = contacts(stack);
        let largest = cert
            .entries
            .iter()
            .map(|e| e.magnitude.clone())
            .max()
            .unwrap_or_else(Rational::one);
        for e in &cert.entries {
            let c = &cs[e.contact];
            let y = &stack.block(c.upper).y;
            let length = &e.magnitude / &largest * h * rat(4, 5);
            line(
                &mut out,
                &f,
                "force",
                (&e.position, &(y - length)),
                (&e.position, y),
                r##"stroke="#c0392b" stroke-width="1.5" marker-end="url(#arrow)""##,
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

/// One row of stems per distribution, newest at the top; stem height is
/// proportional to mass. A dashed line marks the table edge `x = 0`.
pub fn render_trace(trace: &Trace) -> String {
    let dists: Vec<_> = trace.distributions().collect();
    let xs = || {
        dists
            .iter()
            .flat_map(|d| d.points().iter().map(|(x, _)| x.clone()))
    };
    let min_x = xs()
        .min()
        .unwrap_or_else(Rational::zero)
        .min(Rational::zero())
        - half();
    let max_x = xs()
        .max()
        .unwrap_or_else(Rational::zero)
        .max(Rational::zero())
        + half();
    let heaviest = dists
        .iter()
        .flat_map(|d| d.points().iter().map(|(_, m)| m.clone()))
        .max()
        .filter(|m| !m.is_zero())
        .unwrap_or_else(Rational::one);
    let rows = int(dists.len() as i64);
    let f = Frame::new(min_x.clone(), max_x.clone(), Rational::zero(), rows.clone());

    let mut out = String::new();
    f.open(&mut out);
    line(
        &mut out,
        &f,
        "table-edge",
        (&Rational::zero(), &Rational::zero()),
        (&Rational::zero(), &rows),
        r##"stroke="#999999" stroke-dasharray="4 4""##,
    );
    for (i, d) in dists.iter().enumerate() {
        let base = int(i as i64);
        let _ = writeln!(
            out,
            r##"<text class="label" x="{}" y="{}" font-size="10" fill="#333333">{i}</text>"##,
            f.x(&min_x),
            f.y(&(&base + rat(1, 10)))
        );
        line(
            &mut out,
            &f,
            "baseline",
            (&min_x, &base),
            (&max_x, &base),
            r##"stroke="#333333""##,
        );
        for (x, m) in d.points() {
            let top = &base + m / &heaviest * rat(4, 5);
            line(
                &mut out,
                &f,
                "stem",
                (x, &base),
                (x, &top),
                r##"stroke="#1f3b57" stroke-width="2""##,
            );
            let _ = writeln!(
                out,
                r##"<circle class="tip" cx="{}" cy="{}" r="2.5" fill="#1f3b57"/>"##,
                f.x(x),
                f.y(&top)
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use overhang::balance::check_balance;
    use overhang::generators::{gen_brickwall, gen_harmonic};
    use overhang::massmove::{Distribution, ExtremeMove, Step};

    #[test]
    fn stack_rendering_counts_and_is_stable() {
        let s = gen_brickwall(3);
        let svg = render_stack(&s, None);
        assert_eq!(svg.matches("<rect").count(), s.len());
        assert_eq!(svg, render_stack(&s, None));
        assert!(svg.contains(r#"class="table""#));
    }

    #[test]
    fn coordinates_have_six_decimals() {
        let svg = render_stack(&gen_harmonic(1), None);
        assert!(svg.contains(r#"width="40.000000""#), "{svg}");
    }

    #[test]
    fn forces_are_drawn_per_entry() {
        let s = gen_harmonic(3);
        let cert = check_balance(&s).unwrap().certificate().cloned().unwrap();
        let svg = render_stack(&s, Some(&cert));
        assert_eq!(svg.matches(r#"class="force""#).count(), cert.entries.len());
    }

    #[test]
    fn trace_rows_newest_on_top() {
        let e = ExtremeMove::new(rat(-1, 2), rat(1, 2)).unwrap();
        let t = Trace::from_steps(Distribution::point(int(0), int(1)), [Step::Extreme(e)]).unwrap();
        let svg = render_trace(&t);
        assert_eq!(svg.matches(r#"class="baseline""#).count(), 2);
        assert_eq!(svg.matches(r#"class="stem""#).count(), 3);
    }
}
