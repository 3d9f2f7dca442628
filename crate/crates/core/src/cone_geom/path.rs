//! Crossings of straight segments with walls.

use super::cone::Cone;
use crate::rational::{dot_iq, Q};
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Hit {
    Miss,
    /// parameter in `(0, 1)` and crossing sign
    Cross(Q, i64),
    /// the segment meets the wall non-transversally, at an endpoint, or at its boundary
    Singular,
}

pub fn lerp(p: &[Q], q: &[Q], t: &Q) -> Vec<Q> {
    p.iter().zip(q).map(|(a, b)| a + t * (b - a)).collect()
}

/// How the segment `p -> q` meets the wall with support `s` and normal covector `n`.
/// The sign is `+1` when the direction pairs negatively with `n`.
pub fn segment_hit(s: &Cone, n: &[i64], p: &[Q], q: &[Q]) -> Hit {
    let dp = dot_iq(n, p);
    let dq = dot_iq(n, q);
    if dp.is_zero() && dq.is_zero() {
        // inside the hyperplane: singular only if it touches the support
        return if segment_interval(s, p, q).is_some() { Hit::Singular } else { Hit::Miss };
    }
    if dp.is_zero() || dq.is_zero() {
        let x = if dp.is_zero() { p } else { q };
        return if s.contains(x) { Hit::Singular } else { Hit::Miss };
    }
    if dp.is_positive() == dq.is_positive() {
        return Hit::Miss;
    }
    let t = &dp / (&dp - &dq);
    let x = lerp(p, q, &t);
    if !s.contains(&x) {
        return Hit::Miss;
    }
    if !s.in_relint(&x) {
        return Hit::Singular;
    }
    let sign = if (dq - dp).is_negative() { 1 } else { -1 };
    Hit::Cross(t, sign)
}

/// The parameters `t` in `[0, 1]` with `p + t (q - p)` in `s`, as an interval.
pub fn segment_interval(s: &Cone, p: &[Q], q: &[Q]) -> Option<(Q, Q)> {
    let mut lo = Q::zero();
    let mut hi = Q::one();
    let mut clip = |bp: Q, bq: Q, equality: bool| -> bool {
        let db = &bq - &bp;
        if db.is_zero() {
            return if equality { bp.is_zero() } else { !bp.is_negative() };
        }
        let t = -&bp / &db;
        if (equality || db.is_positive()) && t > lo {
            lo = t.clone();
        }
        if (equality || db.is_negative()) && t < hi {
            hi = t;
        }
        true
    };
    for e in &s.eqs {
        if !clip(dot_iq(e, p), dot_iq(e, q), true) {
            return None;
        }
    }
    for b in &s.ineqs {
        if !clip(dot_iq(b, p), dot_iq(b, q), false) {
            return None;
        }
    }
    if lo <= hi {
        Some((lo, hi))
    } else {
        None
    }
}
