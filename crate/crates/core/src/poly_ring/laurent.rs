//! Exact Laurent polynomials in the global f-coordinates, with canonical
//! text rendering `c*A1^a*...*Xn^b`.

use crate::error::{Error, Result};
use crate::rational::{fmt_q, parse_q, q, Q};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Laurent {
    pub terms: BTreeMap<Vec<i64>, Q>,
}

/// How coordinates are named: the first `a_vars` are `A1..`, the rest `X1..`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Naming {
    pub a_vars: usize,
}

impl Naming {
    pub fn plain(rank: usize) -> Self {
        Naming { a_vars: rank }
    }

    pub fn var(&self, i: usize) -> String {
        if i < self.a_vars {
            format!("A{}", i + 1)
        } else {
            format!("X{}", i - self.a_vars + 1)
        }
    }
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(e: Vec<i64>, c: Q) -> Self {
        let mut l = Self::zero();
        l.add_term(e, c);
        l
    }

    pub fn constant(rank: usize, c: Q) -> Self {
        Self::monomial(vec![0; rank], c)
    }

    pub fn add_term(&mut self, e: Vec<i64>, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn coeff(&self, e: &[i64]) -> Q {
        self.terms.get(e).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        let mut s = self.clone();
        for (e, c) in &o.terms {
            s.add_term(e.clone(), c.clone());
        }
        s
    }

    pub fn sub(&self, o: &Laurent) -> Laurent {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn scale(&self, k: &Q) -> Laurent {
        if k.is_zero() {
            return Laurent::zero();
        }
        Laurent { terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect() }
    }

    pub fn mul(&self, o: &Laurent) -> Laurent {
        let mut s = Laurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                s.add_term(e, c1 * c2);
            }
        }
        s
    }

    pub fn pow(&self, k: u32, rank: usize) -> Laurent {
        let mut out = Laurent::constant(rank, Q::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn shift(&self, e: &[i64]) -> Laurent {
        Laurent { terms: self.terms.iter().map(|(x, c)| (x.iter().zip(e).map(|(a, b)| a + b).collect(), c.clone())).collect() }
    }

    /// Exact division; fails when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Laurent) -> Result<Laurent> {
        if d.is_zero() {
            return Err(Error::Invalid("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Laurent::zero());
        }
        let rank = d.terms.keys().next().unwrap().len();
        // coordinate ranges of Newton polytopes add under multiplication
        let range = |l: &Laurent, i: usize| -> (i64, i64) {
            let it = l.terms.keys().map(|e| e[i]);
            (it.clone().min().unwrap(), it.max().unwrap())
        };
        let bounds: Vec<(i64, i64)> = (0..rank)
            .map(|i| {
                let (a, b) = range(self, i);
                let (c, e) = range(d, i);
                (a - c, b - e)
            })
            .collect();
        let (lead_e, lead_c) = d.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut rem = self.clone();
        let mut quot = Laurent::zero();
        while let Some((e, c)) = rem.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let qe: Vec<i64> = e.iter().zip(&lead_e).map(|(a, b)| a - b).collect();
            if qe.iter().zip(&bounds).any(|(x, (lo, hi))| x < lo || x > hi) {
                return Err(Error::Invalid("Laurent division is not exact".into()));
            }
            let qc = c / &lead_c;
            quot.add_term(qe.clone(), qc.clone());
            rem = rem.sub(&d.shift(&qe).scale(&qc));
        }
        Ok(quot)
    }

    pub fn all_coefficients_positive_integers(&self) -> bool {
        self.terms.values().all(|c| c.is_integer() && c.is_positive())
    }

    pub fn render(&self, naming: Naming) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms.iter().map(|(e, c)| render_term(e, c, naming)).collect::<Vec<_>>().join(" + ")
    }

    /// Parses the canonical rendering produced by [`Laurent::render`].
    pub fn parse(s: &str, rank: usize, naming: Naming) -> Result<Laurent> {
        let mut out = Laurent::zero();
        let s = s.trim();
        if s == "0" {
            return Ok(out);
        }
        for term in s.split(" + ") {
            let mut e = vec![0i64; rank];
            let mut coef = Q::one();
            let mut t = term.trim();
            if let Some(rest) = t.strip_prefix('-') {
                if rest.starts_with(['A', 'X']) {
                    coef = -Q::one();
                    t = rest;
                }
            }
            for f in t.split('*') {
                let f = f.trim();
                if f.starts_with(['A', 'X']) {
                    let (name, pow) = match f.split_once('^') {
                        Some((a, b)) => (a, b.parse::<i64>().map_err(|_| bad(term))?),
                        None => (f, 1),
                    };
                    let idx: usize = name[1..].parse().map_err(|_| bad(term))?;
                    if idx == 0 {
                        return Err(bad(term));
                    }
                    let i = if name.starts_with('A') { idx - 1 } else { naming.a_vars + idx - 1 };
                    if i >= rank {
                        return Err(bad(term));
                    }
                    e[i] += pow;
                } else {
                    coef *= parse_q(f).ok_or_else(|| bad(term))?;
                }
            }
            out.add_term(e, coef);
        }
        Ok(out)
    }
}

fn bad(t: &str) -> Error {
    Error::Document(format!("cannot parse Laurent term '{t}'"))
}

fn render_term(e: &[i64], c: &Q, naming: Naming) -> String {
    let factors: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| if x == 1 { naming.var(i) } else { format!("{}^{}", naming.var(i), x) })
        .collect();
    if factors.is_empty() {
        return fmt_q(c);
    }
    let mono = factors.join("*");
    if c.is_one() {
        mono
    } else if *c == -Q::one() {
        format!("-{mono}")
    } else {
        format!("{}*{}", fmt_q(c), mono)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rank = self.terms.keys().next().map(|e| e.len()).unwrap_or(0);
        write!(f, "{}", self.render(Naming::plain(rank)))
    }
}

/// Min-plus evaluation of a positive Laurent polynomial at `x` in `N_R`
/// (initial e-coordinates). The default is `min <m, -x>`; `geometric` selects
/// `min <m, x>`.
pub fn tropicalize(g: &Laurent, x: &[Q], d: &[i64], geometric: bool) -> Result<Q> {
    if g.is_zero() {
        return Err(Error::Invalid("tropicalization of the zero polynomial".into()));
    }
    if g.terms.values().any(|c| !c.is_positive()) {
        return Err(Error::Invalid("tropicalization needs positive coefficients".into()));
    }
    let vals = g.terms.keys().map(|m| {
        let p: Q = m.iter().zip(x).zip(d).map(|((a, b), di)| b * Q::new((*a).into(), (*di).into())).sum();
        if geometric {
            p
        } else {
            -p
        }
    });
    Ok(vals.min().unwrap())
}

pub fn qi(x: i64) -> Q {
    q(x)
}
