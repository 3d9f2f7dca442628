//! Planar picture of a neighbourhood of a codimension two cone: the quotient
//! by its span, angular order of wall germs, and crossing signs.

use crate::linalg::solve;
use crate::rational::{dot_iq, q, Q};
use num_traits::{Signed, Zero};
use std::cmp::Ordering;

pub type P2 = [Q; 2];

/// The map `y -> (h1.y, h2.y)` killing a codimension two subspace.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub h: [Vec<i64>; 2],
}

impl Quotient {
    pub fn new(h1: Vec<i64>, h2: Vec<i64>) -> Self {
        Quotient { h: [h1, h2] }
    }

    pub fn project(&self, y: &[Q]) -> P2 {
        [dot_iq(&self.h[0], y), dot_iq(&self.h[1], y)]
    }

    /// `(a1, a2)` with `cov = a1 h1 + a2 h2`, if `cov` vanishes on the subspace.
    pub fn coords(&self, cov: &[i64]) -> Option<P2> {
        let r = cov.len();
        let rows: Vec<Vec<Q>> = (0..r).map(|i| vec![q(self.h[0][i]), q(self.h[1][i])]).collect();
        let b: Vec<Q> = cov.iter().map(|&x| q(x)).collect();
        solve(&rows, &b, 2).map(|v| [v[0].clone(), v[1].clone()])
    }
}

fn half(p: &P2) -> u8 {
    if p[1].is_positive() || (p[1].is_zero() && p[0].is_positive()) {
        0
    } else {
        1
    }
}

pub fn cross(a: &P2, b: &P2) -> Q {
    &a[0] * &b[1] - &a[1] * &b[0]
}

/// Counterclockwise angular order starting from the positive first axis.
pub fn cmp_angle(a: &P2, b: &P2) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| {
        let c = cross(a, b);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// Sign of crossing the ray `rho` counterclockwise for a wall whose normal has
/// quotient coordinates `a`: `+1` iff `a . rot90(rho) < 0`.
pub fn crossing_sign(a: &P2, rho: &P2) -> i64 {
    let tau = [-rho[1].clone(), rho[0].clone()];
    let v = &a[0] * &tau[0] + &a[1] * &tau[1];
    if v.is_negative() {
        1
    } else {
        -1
    }
}
