//! A small dense exact simplex method with Bland's rule.

use crate::rational::Q;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpResult {
    Optimal { x: Vec<Q>, value: Q },
    Unbounded,
}

/// Maximizes `c.x` subject to `a x <= b`, `x >= 0`, where `b >= 0` so that the
/// origin is a feasible basis.
pub fn maximize(c: &[Q], a: &[Vec<Q>], b: &[Q]) -> LpResult {
    let n = c.len();
    let m = a.len();
    assert!(b.iter().all(|x| !x.is_negative()), "right hand side must be nonnegative");
    let w = n + m;
    // rows 0..m: constraints, row m: reduced costs; last column is the rhs
    let mut t: Vec<Vec<Q>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let mut row = vec![Q::zero(); w + 1];
        row[..n].clone_from_slice(&a[i]);
        row[n + i] = Q::one();
        row[w] = b[i].clone();
        t.push(row);
    }
    let mut obj = vec![Q::zero(); w + 1];
    obj[..n].clone_from_slice(c);
    t.push(obj);
    let mut basis: Vec<usize> = (n..w).collect();
    while let Some(enter) = (0..w).find(|&j| t[m][j].is_positive()) {
        let mut leave: Option<(usize, Q)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let r = &t[i][w] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => r < *lr || (r == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, r));
                }
            }
        }
        let Some((li, _)) = leave else { return LpResult::Unbounded };
        let p = t[li][enter].clone();
        for x in t[li].iter_mut() {
            *x /= &p;
        }
        let prow = t[li].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i == li || row[enter].is_zero() {
                continue;
            }
            let f = row[enter].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        basis[li] = enter;
    }
    let mut x = vec![Q::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][w].clone();
        }
    }
    let value = c.iter().zip(&x).map(|(a, b)| a * b).sum();
    LpResult::Optimal { x, value }
}

/// For the cone `{x : E x = 0, B x >= 0}` returns a relative interior point
/// and the indices of the inequalities that hold with equality on the whole cone.
pub fn relint_and_implicit(dim: usize, eqs: &[Vec<i64>], ineqs: &[Vec<i64>]) -> (Vec<Q>, Vec<usize>) {
    let k = ineqs.len();
    if k == 0 {
        return (vec![Q::zero(); dim], vec![]);
    }
    // variables: z+ (dim), z- (dim), s (k)
    let nv = 2 * dim + k;
    let mut a = Vec::new();
    let mut b = Vec::new();
    let row_of = |cov: &[i64], sign: i64| -> Vec<Q> {
        let mut r = vec![Q::zero(); nv];
        for j in 0..dim {
            r[j] = Q::from_integer((sign * cov[j]).into());
            r[dim + j] = Q::from_integer((-sign * cov[j]).into());
        }
        r
    };
    for (i, bi) in ineqs.iter().enumerate() {
        // s_i - B_i z <= 0
        let mut r = row_of(bi, -1);
        r[2 * dim + i] = Q::one();
        a.push(r);
        b.push(Q::zero());
        let mut r = vec![Q::zero(); nv];
        r[2 * dim + i] = Q::one();
        a.push(r);
        b.push(Q::one());
    }
    for e in eqs {
        a.push(row_of(e, 1));
        b.push(Q::zero());
        a.push(row_of(e, -1));
        b.push(Q::zero());
    }
    let mut c = vec![Q::zero(); nv];
    for x in c.iter_mut().skip(2 * dim) {
        *x = Q::one();
    }
    match maximize(&c, &a, &b) {
        LpResult::Optimal { x, .. } => {
            let z = (0..dim).map(|j| &x[j] - &x[dim + j]).collect();
            let implicit = (0..k).filter(|&i| x[2 * dim + i] < Q::one()).collect();
            (z, implicit)
        }
        LpResult::Unbounded => unreachable!("bounded objective"),
    }
}
