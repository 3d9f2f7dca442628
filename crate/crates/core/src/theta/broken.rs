//! Broken lines, enumerated by tracing backwards from the endpoint.

use crate::error::{Error, Result};
use crate::poly_ring::series::{mono_deg, monomials_up_to, Mono};
use crate::poly_ring::{Frame, Uni};
use crate::rational::{dot_i, dot_iq, q, Q};
use crate::scattering::Diagram;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Segment {
    /// `None` for the unbounded first segment
    pub start: Option<Vec<Q>>,
    /// attached exponent `m_L`; the segment travels in direction `-m_L`
    pub exponent: Vec<i64>,
    pub coeff: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BrokenLine {
    pub m0: Vec<i64>,
    pub endpoint: Vec<Q>,
    pub segments: Vec<Segment>,
}

impl BrokenLine {
    pub fn last(&self) -> &Segment {
        self.segments.last().expect("broken line without segments")
    }

    /// `Mono = c z^F` of the final segment.
    pub fn monomial(&self) -> (Vec<i64>, Q) {
        let s = self.last();
        (s.exponent.clone(), s.coeff.clone())
    }

    pub fn bends(&self) -> usize {
        self.segments.len() - 1
    }

    /// End point of segment `i`.
    pub fn segment_end(&self, i: usize) -> &[Q] {
        match self.segments.get(i + 1) {
            Some(s) => s.start.as_deref().expect("bounded segment without start"),
            None => &self.endpoint,
        }
    }
}

struct WallData {
    idx: usize,
    cov: Vec<i64>,
    c0: Mono,
    v0: Vec<i64>,
}

struct Bend {
    at: Vec<Q>,
    after: Vec<i64>,
    factor: Q,
}

struct Ctx<'a> {
    d: &'a Diagram,
    walls: Vec<WallData>,
    m0: Vec<i64>,
    q: Vec<Q>,
}

fn singular(what: &str) -> Error {
    Error::Degenerate(format!("broken line {what}"))
}

impl Ctx<'_> {
    fn build(&self, bends: &[Bend]) -> BrokenLine {
        let mut segments = vec![Segment { start: None, exponent: self.m0.clone(), coeff: Q::one() }];
        let mut c = Q::one();
        for b in bends.iter().rev() {
            c *= &b.factor;
            segments.push(Segment { start: Some(b.at.clone()), exponent: b.after.clone(), coeff: c.clone() });
        }
        BrokenLine { m0: self.m0.clone(), endpoint: self.q.clone(), segments }
    }

    /// Follows the line backwards from `p`, where its exponent is `m` and
    /// `n_rem` is still to be shed by bends.
    fn trace(&self, p: &[Q], m: &[i64], n_rem: &[u32], bends: &mut Vec<Bend>, out: &mut Vec<BrokenLine>) -> Result<()> {
        if n_rem.iter().all(|&x| x == 0) {
            out.push(self.build(bends));
            return Ok(());
        }
        if m.iter().all(|&x| x == 0) {
            return Ok(());
        }
        let mq: Vec<Q> = m.iter().map(|&x| q(x)).collect();
        let mut best: Option<Q> = None;
        let mut group: Vec<(usize, bool)> = Vec::new();
        for (wi, w) in self.walls.iter().enumerate() {
            // a wall the line cannot bend at is crossed without effect
            if w.c0.iter().zip(n_rem).any(|(c, r)| c > r) {
                continue;
            }
            let wall = &self.d.walls[w.idx];
            let cm = dot_i(&w.cov, m);
            let cp = dot_iq(&w.cov, p);
            if cm == 0 {
                if cp.is_zero() && wall.support.contains(p) {
                    return Err(singular("runs inside a wall"));
                }
                continue;
            }
            let s = -cp / q(cm);
            if !s.is_positive() || best.as_ref().is_some_and(|b| &s > b) {
                continue;
            }
            let x: Vec<Q> = p.iter().zip(&mq).map(|(a, b)| a + &s * b).collect();
            if !wall.support.contains(&x) {
                continue;
            }
            let relint = wall.support.in_relint(&x);
            if best.as_ref() != Some(&s) {
                best = Some(s);
                group.clear();
            }
            group.push((wi, relint));
        }
        let Some(s) = best else { return Ok(()) };
        if group.iter().any(|(_, r)| !r) {
            return Err(singular("meets the boundary of a wall"));
        }
        let cov = &self.walls[group[0].0].cov;
        if group.iter().any(|(wi, _)| &self.walls[*wi].cov != cov) {
            return Err(singular("passes through a joint"));
        }
        let x: Vec<Q> = p.iter().zip(&mq).map(|(a, b)| a + &s * b).collect();
        let w0 = &self.walls[group[0].0];
        let jmax = w0.c0.iter().zip(n_rem).filter(|(c, _)| **c > 0).map(|(c, r)| r / c).min().unwrap_or(0) as usize;
        if jmax == 0 {
            return self.trace(&x, m, n_rem, bends, out);
        }
        let a = dot_i(cov, m).abs();
        let mut f = Uni::one(jmax + 1);
        for (wi, _) in &group {
            f = f.mul(&self.d.walls[self.walls[*wi].idx].uni(jmax + 1));
        }
        let pw = f.pow(a);
        for j in 0..=jmax {
            let c = &pw.c[j];
            if c.is_zero() {
                continue;
            }
            if j == 0 {
                self.trace(&x, m, n_rem, bends, out)?;
                continue;
            }
            let jj = j as i64;
            let mb: Vec<i64> = m.iter().zip(&w0.v0).map(|(a, b)| a - jj * b).collect();
            let nb: Vec<u32> = n_rem.iter().zip(&w0.c0).map(|(a, b)| a - j as u32 * b).collect();
            bends.push(Bend { at: x.clone(), after: m.to_vec(), factor: c.clone() });
            let r = self.trace(&x, &mb, &nb, bends, out);
            bends.pop();
            r?;
        }
        Ok(())
    }
}

/// All broken lines for `m0` ending at `q` whose final monomial has degree
/// at most `order` over `z^{m0}`. Fails when `q` or a traced line is not
/// generic, in which case the caller re-samples `q`.
pub fn broken_lines(d: &Diagram, m0: &[i64], q: &[Q], order: u32) -> Result<Vec<BrokenLine>> {
    let frame = d.frame();
    let mut walls = Vec::new();
    for (idx, w) in d.walls.iter().enumerate() {
        let c0 = frame.mono_of(&w.normal).ok_or_else(|| Error::Invalid("wall normal outside the positive cone".into()))?;
        if mono_deg(&c0) > order {
            continue;
        }
        if dot_iq(&w.cov, q).is_zero() {
            return Err(singular("endpoint lies on a wall hyperplane"));
        }
        walls.push(WallData { idx, cov: w.cov.clone(), v0: frame.m_of(&c0), c0 });
    }
    let ctx = Ctx { d, walls, m0: m0.to_vec(), q: q.to_vec() };
    let mut cands: Vec<Mono> = vec![vec![0; frame.nvars()]];
    cands.extend(monomials_up_to(frame.nvars(), order));
    let found: Vec<Result<Vec<BrokenLine>>> = cands
        .par_iter()
        .map(|c| {
            let f: Vec<i64> = m0.iter().zip(frame.m_of(c)).map(|(a, b)| a + b).collect();
            let mut out = Vec::new();
            ctx.trace(q, &f, c, &mut Vec::new(), &mut out)?;
            Ok(out)
        })
        .collect();
    let mut lines = Vec::new();
    for f in found {
        lines.extend(f?);
    }
    lines.sort();
    Ok(lines)
}

/// Seed coordinates of `F - m0` for a final exponent `F`.
pub fn final_degree(frame: &Frame, m0: &[i64], f: &[i64]) -> Option<u32> {
    let diff: Vec<i64> = f.iter().zip(m0).map(|(a, b)| a - b).collect();
    frame.mono_of_m(&diff).map(|c| mono_deg(&c))
}
