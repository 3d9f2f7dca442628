//! Truncated univariate series in a single wall variable `t`.

use crate::rational::{q, Q};
use num_traits::{One, Zero};

/// `sum c[i] t^i`, known modulo `t^{c.len()}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Uni {
    pub c: Vec<Q>,
}

impl Uni {
    pub fn one(len: usize) -> Self {
        let mut c = vec![Q::zero(); len.max(1)];
        c[0] = Q::one();
        Uni { c }
    }

    /// `1 + sum coeffs[l-1] t^l`, truncated to `len` coefficients.
    pub fn from_wall(coeffs: &[Q], len: usize) -> Self {
        let mut u = Self::one(len);
        for (i, x) in coeffs.iter().enumerate() {
            if i + 1 < u.c.len() {
                u.c[i + 1] = x.clone();
            }
        }
        u
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    pub fn get(&self, i: usize) -> Q {
        self.c.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn mul(&self, o: &Uni) -> Uni {
        let n = self.len().min(o.len());
        let mut c = vec![Q::zero(); n];
        for i in 0..n {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                if !o.c[j].is_zero() {
                    c[i + j] += &self.c[i] * &o.c[j];
                }
            }
        }
        Uni { c }
    }

    /// `f^a` for `f(0) = 1` and any rational `a`, by the recurrence
    /// `n g_n = sum_{k=1}^{n} ((a+1)k - n) f_k g_{n-k}`.
    pub fn pow_q(&self, a: &Q) -> Uni {
        assert!(self.c[0].is_one(), "power needs constant term 1");
        let n = self.len();
        let mut g = vec![Q::zero(); n];
        g[0] = Q::one();
        let a1 = a + Q::one();
        for m in 1..n {
            let mut s = Q::zero();
            for k in 1..=m {
                if self.c[k].is_zero() || g[m - k].is_zero() {
                    continue;
                }
                s += (&a1 * q(k as i64) - q(m as i64)) * &self.c[k] * &g[m - k];
            }
            g[m] = s / q(m as i64);
        }
        Uni { c: g }
    }

    pub fn pow(&self, e: i64) -> Uni {
        self.pow_q(&q(e))
    }

    pub fn log(&self) -> Uni {
        assert!(self.c[0].is_one(), "log needs constant term 1");
        // log f = integral of f'/f
        let n = self.len();
        let inv = self.pow(-1);
        let mut out = vec![Q::zero(); n];
        for m in 1..n {
            // coefficient of t^{m-1} in f'/f, divided by m
            let mut s = Q::zero();
            for k in 1..=m {
                if !self.c[k].is_zero() && !inv.c[m - k].is_zero() {
                    s += q(k as i64) * &self.c[k] * &inv.c[m - k];
                }
            }
            out[m] = s / q(m as i64);
        }
        Uni { c: out }
    }

    pub fn exp(&self) -> Uni {
        assert!(self.c[0].is_zero(), "exp needs constant term 0");
        let n = self.len();
        let mut g = vec![Q::zero(); n];
        g[0] = Q::one();
        // g' = h' g
        for m in 1..n {
            let mut s = Q::zero();
            for k in 1..=m {
                if !self.c[k].is_zero() && !g[m - k].is_zero() {
                    s += q(k as i64) * &self.c[k] * &g[m - k];
                }
            }
            g[m] = s / q(m as i64);
        }
        Uni { c: g }
    }
}

/// Exponents `c_l` with `f = prod_l (1 + t^l)^{c_l}` modulo `t^{len}`.
pub fn factor_binomial_powers(f: &Uni) -> Vec<(usize, Q)> {
    let lg = f.log();
    let n = f.len();
    let mut c = vec![Q::zero(); n];
    for k in 1..n {
        let mut s = lg.c[k].clone();
        for l in 1..k {
            if k % l == 0 && !c[l].is_zero() {
                let j = k / l;
                let sgn = if j % 2 == 1 { Q::one() } else { -Q::one() };
                s -= &c[l] * sgn * Q::new(l.into(), k.into());
            }
        }
        c[k] = s;
    }
    (1..n).filter(|&l| !c[l].is_zero()).map(|l| (l, c[l].clone())).collect()
}

/// Re-expands `prod (1+t^l)^{c_l}` to `len` coefficients.
pub fn expand_binomial_powers(factors: &[(usize, Q)], len: usize) -> Uni {
    let mut out = Uni::one(len);
    for (l, c) in factors {
        let mut b = Uni::one(len);
        if *l < len {
            b.c[*l] = Q::one();
        }
        out = out.mul(&b.pow_q(c));
    }
    out
}
