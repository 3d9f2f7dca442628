//! Wall-crossing automorphisms stored by their action on the generators
//! `z^{f_j}`, their composition, and extraction of the leading logarithm.

use super::laurent::Laurent;
use super::series::{mono_add, mono_deg, Mono, Series};
use super::univariate::Uni;
use crate::error::{Error, Result};
use crate::lattice_seed::{FixedData, Seed};
use crate::rational::{dot_i, q, qf, Q};
use num_traits::{One, Zero};
use std::collections::HashMap;

/// The variables `y_i = z^{v_i}` of a seed, one per unfrozen index.
#[derive(Clone, Debug)]
pub struct Frame {
    pub fd: FixedData,
    pub seed: Seed,
    pub uf: Vec<usize>,
    /// `e_i` (initial coordinates) for each unfrozen `i`
    pub e: Vec<Vec<i64>>,
    /// `v_i = p1^*(e_i)` for each unfrozen `i`
    pub v: Vec<Vec<i64>>,
}

impl Frame {
    pub fn new(fd: &FixedData, seed: &Seed) -> Self {
        let uf = fd.unfrozen();
        let e: Vec<Vec<i64>> = uf.iter().map(|&i| seed.e(i).to_vec()).collect();
        let v = e.iter().map(|x| fd.pstar(x)).collect();
        Frame { fd: fd.clone(), seed: seed.clone(), uf, e, v }
    }

    pub fn nvars(&self) -> usize {
        self.uf.len()
    }

    pub fn rank(&self) -> usize {
        self.fd.rank()
    }

    /// `n = sum c_i e_i` in initial coordinates.
    pub fn n_of(&self, c: &[u32]) -> Vec<i64> {
        let mut n = vec![0i64; self.rank()];
        for (ci, e) in c.iter().zip(&self.e) {
            if *ci != 0 {
                for (a, b) in n.iter_mut().zip(e) {
                    *a += *ci as i64 * b;
                }
            }
        }
        n
    }

    /// `p1^*(n(c)) = sum c_i v_i`.
    pub fn m_of(&self, c: &[u32]) -> Vec<i64> {
        let mut m = vec![0i64; self.rank()];
        for (ci, v) in c.iter().zip(&self.v) {
            if *ci != 0 {
                for (a, b) in m.iter_mut().zip(v) {
                    *a += *ci as i64 * b;
                }
            }
        }
        m
    }

    /// Seed coordinates of `n` on the unfrozen indices, if `n` lies in `N^+ ∪ {0}`.
    pub fn mono_of(&self, n: &[i64]) -> Option<Mono> {
        let c = self.seed.seed_coords(n);
        let mut out = Vec::with_capacity(self.uf.len());
        for (i, x) in c.iter().enumerate() {
            let frozen = self.fd.frozen[i];
            if frozen {
                if !x.is_zero() {
                    return None;
                }
            } else {
                let v = crate::rational::to_i64(x)?;
                if v < 0 {
                    return None;
                }
                out.push(v as u32);
            }
        }
        Some(out)
    }

    /// The unique `c >= 0` with `m_of(c) = m`, if any (uses injectivity of `p1^*`).
    pub fn mono_of_m(&self, m: &[i64]) -> Option<Mono> {
        if m.iter().all(|&x| x == 0) {
            return Some(vec![0; self.nvars()]);
        }
        let a: Vec<Vec<Q>> = (0..self.rank()).map(|i| self.v.iter().map(|v| q(v[i])).collect()).collect();
        let b: Vec<Q> = m.iter().map(|&x| q(x)).collect();
        let c = crate::linalg::solve(&a, &b, self.nvars())?;
        let mut out = Vec::with_capacity(c.len());
        for x in &c {
            let v = crate::rational::to_i64(x)?;
            if v < 0 {
                return None;
            }
            out.push(v as u32);
        }
        if self.m_of(&out) != m {
            return None;
        }
        Some(out)
    }

    /// The grading `d(n)` = sum of unfrozen seed coordinates.
    pub fn degree(&self, n: &[i64]) -> Q {
        let c = self.seed.seed_coords(n);
        self.uf.iter().map(|&i| c[i].clone()).sum()
    }

    pub fn to_laurent(&self, base: &[i64], s: &Series) -> Laurent {
        let mut l = Laurent::zero();
        for (c, x) in &s.terms {
            let m = self.m_of(c);
            let e: Vec<i64> = base.iter().zip(&m).map(|(a, b)| a + b).collect();
            l.add_term(e, x.clone());
        }
        l
    }
}

/// Wall function data: `1 + sum coeffs[l-1] t^l` with `t = z^{p1^*(n0)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallFunction {
    pub n0: Vec<i64>,
    pub coeffs: Vec<Q>,
}

impl WallFunction {
    pub fn binomial(n0: Vec<i64>) -> Self {
        WallFunction { n0, coeffs: vec![Q::one()] }
    }

    pub fn uni(&self, len: usize) -> Uni {
        Uni::from_wall(&self.coeffs, len)
    }

    pub fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// One signed crossing of a wall, prepared for repeated application.
#[derive(Clone, Debug)]
pub struct Crossing {
    /// seed coordinates of the primitive normal
    pub c0: Mono,
    /// primitive `N°` covector of the normal
    pub cov: Vec<i64>,
    pub f: Uni,
    pub sign: i64,
    /// `cov . v_l` for each variable
    a: Vec<i64>,
}

impl Crossing {
    pub fn new(frame: &Frame, wf: &WallFunction, sign: i64, order: u32) -> Self {
        let c0 = frame.mono_of(&wf.n0).expect("wall normal is not in N+");
        let d0 = mono_deg(&c0).max(1);
        let len = (order / d0) as usize + 1;
        let cov = frame.fd.n_covector(&wf.n0);
        let a = frame.v.iter().map(|v| dot_i(&cov, v)).collect();
        Crossing { c0, cov, f: wf.uni(len), sign, a }
    }

    /// Applies the crossing to `z^{base} S(y)` and returns the new `S`.
    pub fn apply(&self, base: &[i64], s: &Series, cache: &mut HashMap<i64, Uni>) -> Series {
        let order = s.order;
        let d0 = mono_deg(&self.c0);
        let b0 = dot_i(&self.cov, base);
        let mut out = Series::zero(s.nvars, order);
        for (c, x) in &s.terms {
            let dc = mono_deg(c);
            let e = self.sign * (b0 + c.iter().zip(&self.a).map(|(ci, ai)| *ci as i64 * ai).sum::<i64>());
            if e == 0 {
                out.add_term(c.clone(), x.clone());
                continue;
            }
            let p = cache.entry(e).or_insert_with(|| self.f.pow(e));
            let mut j = 0u32;
            let mut m = c.clone();
            while dc + j * d0 <= order && (j as usize) < p.len() {
                let pj = &p.c[j as usize];
                if !pj.is_zero() {
                    out.add_term(m.clone(), x * pj);
                }
                j += 1;
                m = mono_add(&m, &self.c0);
            }
        }
        out
    }
}

/// `z^{f_j} -> units[j] z^{f_j}` for every generator index `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingAutomorphism {
    pub order: u32,
    pub units: Vec<Series>,
}

impl RingAutomorphism {
    pub fn identity(frame: &Frame, order: u32) -> Self {
        RingAutomorphism { order, units: vec![Series::one(frame.nvars(), order); frame.rank()] }
    }

    pub fn is_identity(&self) -> bool {
        self.units.iter().all(|u| u.is_one())
    }

    /// `crossing ∘ self`.
    pub fn then(&self, frame: &Frame, x: &Crossing) -> Self {
        let mut cache = HashMap::new();
        let r = frame.rank();
        let units = (0..r)
            .map(|j| {
                let mut base = vec![0i64; r];
                base[j] = 1;
                x.apply(&base, &self.units[j], &mut cache)
            })
            .collect();
        RingAutomorphism { order: self.order, units }
    }

    /// Applies the automorphism to `z^{base} S(y)`.
    pub fn apply(&self, frame: &Frame, base: &[i64], s: &Series) -> Series {
        let order = s.order.min(self.order);
        let logs: Vec<Series> = self.units.iter().map(|u| u.truncate(order).log()).collect();
        let lin = |m: &[i64], ord: u32| -> Series {
            let mut acc = Series::zero(frame.nvars(), ord);
            for (mj, lj) in m.iter().zip(&logs) {
                if *mj != 0 {
                    acc = acc.add(&lj.truncate(ord).scale(&q(*mj)));
                }
            }
            acc.exp()
        };
        let mut out = Series::zero(frame.nvars(), order);
        for (c, x) in &s.terms {
            let dc = mono_deg(c);
            if dc > order {
                continue;
            }
            let w = lin(&frame.m_of(c), order - dc);
            out = out.add(&w.with_order(order).mul_mono(c, x));
        }
        out.mul(&lin(base, order))
    }

    /// `self ∘ other`.
    pub fn compose(&self, frame: &Frame, other: &RingAutomorphism) -> Self {
        let r = frame.rank();
        let units = (0..r)
            .map(|j| {
                let mut base = vec![0i64; r];
                base[j] = 1;
                self.apply(frame, &base, &other.units[j])
            })
            .collect();
        RingAutomorphism { order: self.order.min(other.order), units }
    }

    pub fn truncate(&self, order: u32) -> Self {
        RingAutomorphism { order, units: self.units.iter().map(|u| u.truncate(order)).collect() }
    }

    /// A generator index and the first differing image when `self != other`.
    pub fn first_difference(&self, other: &RingAutomorphism) -> Option<(usize, Series, Series)> {
        let o = self.order.min(other.order);
        for (j, (a, b)) in self.units.iter().zip(&other.units).enumerate() {
            let (a, b) = (a.truncate(o), b.truncate(o));
            if a != b {
                return Some((j, a, b));
            }
        }
        None
    }
}

/// The automorphism of crossing a wall with function `wf` in direction `sign`.
pub fn wall_automorphism(frame: &Frame, wf: &WallFunction, sign: i64, order: u32) -> RingAutomorphism {
    RingAutomorphism::identity(frame, order).then(frame, &Crossing::new(frame, wf, sign, order))
}

/// `f^{sign <n0', m>} z^m`, truncated at `order` in the grading.
pub fn wall_crossing(frame: &Frame, wf: &WallFunction, m: &[i64], sign: i64, order: u32) -> Laurent {
    let x = Crossing::new(frame, wf, sign, order);
    let s = x.apply(m, &Series::one(frame.nvars(), order), &mut HashMap::new());
    frame.to_laurent(m, &s)
}

/// Degree `order` components `c_n` with `theta = exp(sum c_n z^{p*(n)} ∂_n)`
/// modulo degree `order + 1`, given that `theta` is trivial below `order`.
pub fn log_leading(frame: &Frame, theta: &RingAutomorphism, order: u32) -> Result<Vec<(Vec<i64>, Q)>> {
    for u in &theta.units {
        for c in u.terms.keys() {
            let d = mono_deg(c);
            if d > 0 && d < order {
                return Err(Error::NotTrivialBelow(order));
            }
        }
    }
    let mut monos: Vec<Mono> =
        theta.units.iter().flat_map(|u| u.terms.keys().filter(|c| mono_deg(c) == order).cloned()).collect();
    monos.sort();
    monos.dedup();
    let d = &frame.fd.d;
    let mut out = Vec::new();
    for c in monos {
        let n = frame.n_of(&c);
        let j0 = n.iter().position(|&a| a != 0).expect("zero lattice vector");
        let cn = theta.units[j0].coeff(&c) * qf(d[j0], n[j0]);
        for (j, u) in theta.units.iter().enumerate() {
            if u.coeff(&c) != &cn * qf(n[j], d[j]) {
                return Err(Error::Degenerate("loop automorphism is not a derivation exponential".into()));
            }
        }
        if !cn.is_zero() {
            out.push((n, cn));
        }
    }
    Ok(out)
}

/// `exp(sum c_n z^{p*(n)} ∂_n)` as a ring automorphism.
pub fn exp_derivation(frame: &Frame, terms: &[(Vec<i64>, Q)], order: u32) -> RingAutomorphism {
    let r = frame.rank();
    let nv = frame.nvars();
    let parts: Vec<(Mono, Vec<i64>, Q)> =
        terms.iter().map(|(n, c)| (frame.mono_of(n).expect("derivation outside N+"), n.clone(), c.clone())).collect();
    let units = (0..r)
        .map(|j| {
            let mut base = vec![Q::zero(); r];
            base[j] = Q::one();
            let apply_d = |s: &Series| -> Series {
                let mut out = Series::zero(nv, order);
                for (cm, x) in &s.terms {
                    let m: Vec<Q> = frame.m_of(cm).iter().zip(&base).map(|(a, b)| q(*a) + b).collect();
                    for (c, n, cn) in &parts {
                        let p = frame.fd.pair(n, &m);
                        if !p.is_zero() {
                            out.add_term(mono_add(cm, c), x * cn * p);
                        }
                    }
                }
                out
            };
            let mut total = Series::one(nv, order);
            let mut term = Series::one(nv, order);
            let mut k = 1i64;
            loop {
                term = apply_d(&term).scale(&(Q::one() / q(k)));
                if term.is_zero() {
                    break;
                }
                total = total.add(&term);
                k += 1;
            }
            total
        })
        .collect();
    RingAutomorphism { order, units }
}
