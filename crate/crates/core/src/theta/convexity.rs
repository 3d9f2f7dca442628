//! Min-convexity of piecewise linear functions along broken lines.

use super::broken::BrokenLine;
use crate::rational::{dot, dot_iq, q, Q};
use num_traits::{One, Signed, Zero};

/// `w(x) = min_i <l_i, x>` on `M_R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinOfLinear {
    pub forms: Vec<Vec<Q>>,
}

impl MinOfLinear {
    pub fn eval(&self, x: &[Q]) -> Q {
        self.forms.iter().map(|l| dot(l, x)).min().expect("no linear forms")
    }

    /// `dw_x(m)` at a point where the minimum is attained by forms agreeing on `m`.
    pub fn slope(&self, x: &[Q], m: &[i64]) -> Q {
        let v = self.eval(x);
        self.forms.iter().filter(|l| dot(l, x) == v).map(|l| dot_iq(m, l)).min().unwrap()
    }

    fn breaks(&self, a: &[Q], dir: &[Q]) -> Vec<Q> {
        let mut out = Vec::new();
        for (i, l1) in self.forms.iter().enumerate() {
            for l2 in &self.forms[i + 1..] {
                let diff: Vec<Q> = l1.iter().zip(l2).map(|(x, y)| x - y).collect();
                let s = dot(&diff, dir);
                if !s.is_zero() {
                    out.push(-dot(&diff, a) / s);
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// Points of a broken line in time order, one inside each linearity domain of
/// `w` on each segment, with the segment's exponent.
fn samples(w: &MinOfLinear, line: &BrokenLine) -> Vec<(Vec<Q>, Vec<i64>)> {
    let mut out = Vec::new();
    for (i, seg) in line.segments.iter().enumerate() {
        let end = line.segment_end(i).to_vec();
        let mq: Vec<Q> = seg.exponent.iter().map(|&x| q(x)).collect();
        let pts: Vec<Vec<Q>> = match &seg.start {
            None => {
                // end + u m for u > 0, with u decreasing in time
                let mut bs: Vec<Q> = w.breaks(&end, &mq).into_iter().filter(|u| u.is_positive()).collect();
                bs.reverse();
                let mut us = vec![bs.first().map(|b| b + Q::one()).unwrap_or_else(Q::one)];
                for p in bs.windows(2) {
                    us.push((&p[0] + &p[1]) / q(2));
                }
                if let Some(b) = bs.last() {
                    us.push(b / q(2));
                }
                us.iter().map(|u| end.iter().zip(&mq).map(|(e, m)| e + u * m).collect()).collect()
            }
            Some(start) => {
                let dir: Vec<Q> = end.iter().zip(start).map(|(b, a)| b - a).collect();
                let mut us = vec![Q::zero()];
                us.extend(w.breaks(start, &dir).into_iter().filter(|u| u.is_positive() && u < &Q::one()));
                us.push(Q::one());
                us.windows(2)
                    .map(|p| {
                        let u = (&p[0] + &p[1]) / q(2);
                        start.iter().zip(&dir).map(|(a, d)| a + &u * d).collect()
                    })
                    .collect()
            }
        };
        out.extend(pts.into_iter().map(|p| (p, seg.exponent.clone())));
    }
    out
}

/// The first point along some line where `dw(m_L)` decreases, as
/// `(line index, point)`.
pub fn min_convexity_witness(w: &MinOfLinear, lines: &[BrokenLine]) -> Option<(usize, Vec<Q>)> {
    for (li, line) in lines.iter().enumerate() {
        let mut prev: Option<Q> = None;
        for (x, m) in samples(w, line) {
            let s = w.slope(&x, &m);
            if prev.as_ref().is_some_and(|p| &s < p) {
                return Some((li, x));
            }
            prev = Some(s);
        }
    }
    None
}

/// Whether `dw` is increasing on the exponents along every line.
pub fn min_convexity_check(w: &MinOfLinear, lines: &[BrokenLine]) -> bool {
    min_convexity_witness(w, lines).is_none()
}
