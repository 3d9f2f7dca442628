//! Truncated multivariate power series in the variables `y_i = z^{v_i}`.

use crate::rational::{q, Q};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

pub type Mono = Vec<u32>;

pub fn mono_deg(m: &[u32]) -> u32 {
    m.iter().sum()
}

pub fn mono_add(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// All exponent vectors in `nvars` variables of total degree exactly `deg`.
pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Mono> {
    fn rec(i: usize, left: u32, cur: &mut Mono, out: &mut Vec<Mono>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for a in (0..=left).rev() {
            cur[i] = a;
            rec(i + 1, left - a, cur, out);
        }
    }
    if nvars == 0 {
        return if deg == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(0, deg, &mut vec![0; nvars], &mut out);
    out
}

/// All exponent vectors of total degree `1..=max`.
pub fn monomials_up_to(nvars: usize, max: u32) -> Vec<Mono> {
    (1..=max).flat_map(|d| monomials_of_degree(nvars, d)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    pub nvars: usize,
    pub order: u32,
    pub terms: BTreeMap<Mono, Q>,
}

impl Series {
    pub fn zero(nvars: usize, order: u32) -> Self {
        Series { nvars, order, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize, order: u32) -> Self {
        Self::monomial(nvars, order, vec![0; nvars], Q::one())
    }

    pub fn monomial(nvars: usize, order: u32, m: Mono, c: Q) -> Self {
        let mut s = Self::zero(nvars, order);
        s.add_term(m, c);
        s
    }

    pub fn add_term(&mut self, m: Mono, c: Q) {
        if c.is_zero() || mono_deg(&m) > self.order {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn coeff(&self, m: &[u32]) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant(&self) -> Q {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant().is_one()
    }

    pub fn truncate(&self, order: u32) -> Self {
        let mut s = Self::zero(self.nvars, order);
        for (m, c) in &self.terms {
            if mono_deg(m) <= order {
                s.terms.insert(m.clone(), c.clone());
            }
        }
        s
    }

    pub fn with_order(mut self, order: u32) -> Self {
        self.terms.retain(|m, _| mono_deg(m) <= order);
        self.order = order;
        self
    }

    pub fn add(&self, o: &Series) -> Series {
        let mut s = self.clone();
        s.order = self.order.min(o.order);
        s.terms.retain(|m, _| mono_deg(m) <= s.order);
        for (m, c) in &o.terms {
            s.add_term(m.clone(), c.clone());
        }
        s
    }

    pub fn sub(&self, o: &Series) -> Series {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn scale(&self, k: &Q) -> Series {
        let mut s = Self::zero(self.nvars, self.order);
        if k.is_zero() {
            return s;
        }
        for (m, c) in &self.terms {
            s.terms.insert(m.clone(), c * k);
        }
        s
    }

    pub fn mul(&self, o: &Series) -> Series {
        let order = self.order.min(o.order);
        let mut s = Self::zero(self.nvars, order);
        for (m1, c1) in &self.terms {
            let d1 = mono_deg(m1);
            for (m2, c2) in &o.terms {
                if d1 + mono_deg(m2) <= order {
                    s.add_term(mono_add(m1, m2), c1 * c2);
                }
            }
        }
        s
    }

    /// Multiplies by `c * y^m`.
    pub fn mul_mono(&self, m: &[u32], c: &Q) -> Series {
        let mut s = Self::zero(self.nvars, self.order);
        for (m1, c1) in &self.terms {
            let e = mono_add(m1, m);
            if mono_deg(&e) <= self.order {
                s.terms.insert(e, c1 * c);
            }
        }
        s
    }

    /// Terms of total degree exactly `d`.
    pub fn homogeneous(&self, d: u32) -> Vec<(Mono, Q)> {
        self.terms.iter().filter(|(m, _)| mono_deg(m) == d).map(|(m, c)| (m.clone(), c.clone())).collect()
    }

    /// Smallest positive degree carrying a term, if any.
    pub fn low_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| mono_deg(m)).filter(|&d| d > 0).min()
    }

    /// `log` of a series with constant term 1.
    pub fn log(&self) -> Series {
        assert!(self.constant().is_one(), "log needs constant term 1");
        let x = self.sub(&Self::one(self.nvars, self.order));
        let mut out = Self::zero(self.nvars, self.order);
        let mut pw = x.clone();
        let mut k = 1i64;
        while !pw.is_zero() {
            let c = if k % 2 == 1 { Q::one() } else { -Q::one() } / q(k);
            out = out.add(&pw.scale(&c));
            pw = pw.mul(&x);
            k += 1;
        }
        out
    }

    /// `exp` of a series with constant term 0.
    pub fn exp(&self) -> Series {
        assert!(self.constant().is_zero(), "exp needs constant term 0");
        let mut out = Self::one(self.nvars, self.order);
        let mut term = Self::one(self.nvars, self.order);
        let mut k = 1i64;
        loop {
            term = term.mul(self).scale(&(Q::one() / q(k)));
            if term.is_zero() {
                break;
            }
            out = out.add(&term);
            k += 1;
        }
        out
    }

    /// Integer power of a series with constant term 1.
    pub fn pow(&self, e: i64) -> Series {
        match e {
            0 => Self::one(self.nvars, self.order),
            1 => self.clone(),
            _ => self.log().scale(&q(e)).exp(),
        }
    }
}
