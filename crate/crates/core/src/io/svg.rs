//! SVG pictures of a diagram restricted to a coordinate 2-plane.

use super::documents::{naming, wall_laurent};
use crate::error::{Error, Result};
use crate::rational::Q;
use crate::scattering::Diagram;
use num_traits::ToPrimitive;
use std::fmt::Write;

const SIZE: f64 = 480.0;

/// One wall cut down to the plane: a ray or a line through the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct Trace {
    pub dir: (f64, f64),
    pub both_ways: bool,
    pub label: String,
}

/// Intersections of the walls with the plane spanned by coordinates `i, j`.
pub fn slice(d: &Diagram, plane: (usize, usize), principal: bool) -> Result<Vec<Trace>> {
    let r = d.rank();
    let (i, j) = plane;
    if i >= r || j >= r || i == j {
        return Err(Error::Invalid(format!("plane ({i},{j}) is not a coordinate plane of rank {r}")));
    }
    let nm = naming(r, principal);
    let mut out = Vec::new();
    for w in &d.walls {
        let mut c = w.support.clone();
        for k in (0..r).filter(|&k| k != i && k != j) {
            let mut e = vec![0; r];
            e[k] = 1;
            c = c.with_eq(&e);
        }
        match c.dimension() {
            0 => continue,
            1 => {}
            _ => return Err(Error::Invalid("slice is not transverse to a wall".into())),
        }
        let u = c.span_basis().pop().unwrap();
        let neg: Vec<Q> = u.iter().map(|x| -x).collect();
        let (fwd, back) = (c.contains(&u), c.contains(&neg));
        let u = if fwd { u } else { neg };
        let f = |x: &Q| x.to_f64().unwrap_or(0.0);
        out.push(Trace { dir: (f(&u[i]), f(&u[j])), both_ways: fwd && back, label: wall_laurent(&d.fd, w).render(nm) });
    }
    Ok(out)
}

fn clip(dir: (f64, f64), window: f64) -> (f64, f64) {
    let m = dir.0.abs().max(dir.1.abs());
    (dir.0 / m * window, dir.1 / m * window)
}

/// Renders the slice on the square `[-window, window]^2`.
pub fn render(d: &Diagram, plane: (usize, usize), window: f64, principal: bool) -> Result<String> {
    let traces = slice(d, plane, principal)?;
    let mut s = String::new();
    let h = SIZE / 2.0;
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#)
        .unwrap();
    writeln!(s, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#).unwrap();
    if window > 0.0 {
        let k = h / window;
        let px = |p: (f64, f64)| (h + p.0 * k * 0.8, h - p.1 * k * 0.8);
        writeln!(s, r##"<g stroke="#bbb" stroke-width="0.5"><line x1="0" y1="{h}" x2="{SIZE}" y2="{h}"/><line x1="{h}" y1="0" x2="{h}" y2="{SIZE}"/></g>"##).unwrap();
        let mut seen: Vec<(f64, f64)> = Vec::new();
        for t in &traces {
            let end = px(clip(t.dir, window));
            let start = if t.both_ways { px(clip((-t.dir.0, -t.dir.1), window)) } else { (h, h) };
            writeln!(
                s,
                r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black" stroke-width="1.2"/>"#,
                start.0, start.1, end.0, end.1
            )
            .unwrap();
            let stack = seen.iter().filter(|p| **p == end).count();
            seen.push(end);
            let esc = t.label.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;");
            writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" font-size="10" font-family="monospace">{esc}</text>"#,
                end.0.min(SIZE - 120.0),
                (end.1 + 12.0 * stack as f64).clamp(10.0, SIZE - 4.0)
            )
            .unwrap();
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}
