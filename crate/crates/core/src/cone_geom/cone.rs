//! Rational polyhedral cones in H-representation with a canonical form.
//!
//! Points are rational vectors; constraints are integer covectors paired by
//! the plain dot product.

use super::lp::relint_and_implicit;
use crate::linalg::rref;
use crate::rational::{dot_iq, primitive, q, Q};
use num_traits::{Signed, Zero};
use rand::Rng;
use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

#[derive(Clone, Debug)]
pub struct Cone {
    pub dim: usize,
    /// primitive rows of the reduced row echelon form of the linear span's annihilator
    pub eqs: Vec<Vec<i64>>,
    /// primitive, irredundant, reduced modulo `eqs`, sorted
    pub ineqs: Vec<Vec<i64>>,
    witness: Vec<Q>,
}

impl PartialEq for Cone {
    fn eq(&self, o: &Self) -> bool {
        self.dim == o.dim && self.eqs == o.eqs && self.ineqs == o.ineqs
    }
}

impl Eq for Cone {}

impl Hash for Cone {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.dim.hash(h);
        self.eqs.hash(h);
        self.ineqs.hash(h);
    }
}

impl PartialOrd for Cone {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Cone {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.dim, &self.eqs, &self.ineqs).cmp(&(o.dim, &o.eqs, &o.ineqs))
    }
}

fn to_q(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

fn prim(v: &[Q]) -> Option<Vec<i64>> {
    if v.iter().all(|x| x.is_zero()) {
        None
    } else {
        primitive(v)
    }
}

/// Canonical primitive basis of the row space of `rows`.
pub fn canonical_rows(rows: &[Vec<i64>], dim: usize) -> Vec<Vec<i64>> {
    let qr: Vec<Vec<Q>> = rows.iter().map(|r| to_q(r)).collect();
    let (r, piv) = rref(&qr, dim);
    r.iter().take(piv.len()).filter_map(|row| prim(row)).collect()
}

/// `v` with the pivot columns of the echelon rows `eqs` cleared.
fn reduce(v: &[i64], eqs: &[Vec<i64>]) -> Vec<Q> {
    let mut x = to_q(v);
    for e in eqs {
        let p = e.iter().position(|&a| a != 0).unwrap();
        if !x[p].is_zero() {
            let f = &x[p] / q(e[p]);
            for (xi, ei) in x.iter_mut().zip(e) {
                *xi -= &f * q(*ei);
            }
        }
    }
    x
}

impl Cone {
    /// Builds the cone `{x : E x = 0, B x >= 0}` in canonical form.
    pub fn new(dim: usize, eqs: Vec<Vec<i64>>, ineqs: Vec<Vec<i64>>) -> Cone {
        let mut eqs = canonical_rows(&eqs, dim);
        let mut ineqs: Vec<Vec<i64>> = ineqs.iter().filter_map(|b| prim(&reduce(b, &eqs))).collect();
        ineqs.sort();
        ineqs.dedup();
        let (witness, implicit) = relint_and_implicit(dim, &eqs, &ineqs);
        if !implicit.is_empty() {
            let mut all = eqs.clone();
            all.extend(implicit.iter().map(|&i| ineqs[i].clone()));
            eqs = canonical_rows(&all, dim);
            let keep: Vec<Vec<i64>> = ineqs
                .iter()
                .enumerate()
                .filter(|(i, _)| !implicit.contains(i))
                .filter_map(|(_, b)| prim(&reduce(b, &eqs)))
                .collect();
            ineqs = keep;
            ineqs.sort();
            ineqs.dedup();
        }
        // drop redundant inequalities one at a time
        let mut i = 0;
        while i < ineqs.len() {
            let mut others = ineqs.clone();
            let b = others.remove(i);
            if implied(dim, &eqs, &others, &b) {
                ineqs = others;
            } else {
                i += 1;
            }
        }
        Cone { dim, eqs, ineqs, witness }
    }

    pub fn full(dim: usize) -> Cone {
        Cone { dim, eqs: vec![], ineqs: vec![], witness: vec![Q::zero(); dim] }
    }

    pub fn hyperplane(dim: usize, n: &[i64]) -> Cone {
        Cone::new(dim, vec![n.to_vec()], vec![])
    }

    pub fn halfspace(dim: usize, b: &[i64]) -> Cone {
        Cone::new(dim, vec![], vec![b.to_vec()])
    }

    /// Dimension of the linear span.
    pub fn dimension(&self) -> usize {
        self.dim - self.eqs.len()
    }

    /// A point of the relative interior.
    pub fn point(&self) -> &[Q] {
        &self.witness
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        self.eqs.iter().all(|e| dot_iq(e, x).is_zero()) && self.ineqs.iter().all(|b| !dot_iq(b, x).is_negative())
    }

    pub fn in_relint(&self, x: &[Q]) -> bool {
        self.eqs.iter().all(|e| dot_iq(e, x).is_zero()) && self.ineqs.iter().all(|b| dot_iq(b, x).is_positive())
    }

    /// Indices of inequalities that are tight at `x`.
    pub fn tight(&self, x: &[Q]) -> Vec<usize> {
        (0..self.ineqs.len()).filter(|&i| dot_iq(&self.ineqs[i], x).is_zero()).collect()
    }

    pub fn intersect(&self, o: &Cone) -> Cone {
        let mut eqs = self.eqs.clone();
        eqs.extend(o.eqs.iter().cloned());
        let mut ineqs = self.ineqs.clone();
        ineqs.extend(o.ineqs.iter().cloned());
        Cone::new(self.dim, eqs, ineqs)
    }

    pub fn with_eq(&self, e: &[i64]) -> Cone {
        let mut eqs = self.eqs.clone();
        eqs.push(e.to_vec());
        Cone::new(self.dim, eqs, self.ineqs.clone())
    }

    pub fn with_ineq(&self, b: &[i64]) -> Cone {
        let mut ineqs = self.ineqs.clone();
        ineqs.push(b.to_vec());
        Cone::new(self.dim, self.eqs.clone(), ineqs)
    }

    /// Whether `b >= 0` holds on the whole cone.
    pub fn implies(&self, b: &[i64]) -> bool {
        implied(self.dim, &self.eqs, &self.ineqs, b)
    }

    /// `o ⊆ self`.
    pub fn contains_cone(&self, o: &Cone) -> bool {
        self.eqs.iter().all(|e| {
            let neg: Vec<i64> = e.iter().map(|x| -x).collect();
            o.implies(e) && o.implies(&neg)
        }) && self.ineqs.iter().all(|b| o.implies(b))
    }

    /// `self ∪ o` when that union is itself a cone with the same span.
    pub fn convex_union(&self, o: &Cone) -> Option<Cone> {
        if self.eqs != o.eqs {
            return None;
        }
        // the union is convex iff it equals the hull cut out by the
        // inequalities of either cone that hold on the other
        let (mine, theirs): (Vec<_>, Vec<_>) = self.ineqs.iter().partition(|b| o.implies(b));
        let kept: Vec<Vec<i64>> = mine.into_iter().chain(o.ineqs.iter().filter(|b| self.implies(b))).cloned().collect();
        let hull = Cone::new(self.dim, self.eqs.clone(), kept);
        theirs.iter().all(|b| o.contains_cone(&hull.with_ineq(&b.iter().map(|x| -x).collect::<Vec<_>>()))).then_some(hull)
    }

    /// The two closed pieces cut by `h`, when `h` properly splits the cone.
    pub fn split(&self, h: &[i64]) -> Option<(Cone, Cone)> {
        let neg: Vec<i64> = h.iter().map(|x| -x).collect();
        if self.implies(h) || self.implies(&neg) {
            return None;
        }
        Some((self.with_ineq(h), self.with_ineq(&neg)))
    }

    /// Facets as cones, one per irredundant inequality.
    pub fn facets(&self) -> Vec<Cone> {
        (0..self.ineqs.len())
            .map(|i| {
                let mut eqs = self.eqs.clone();
                eqs.push(self.ineqs[i].clone());
                let mut ineqs = self.ineqs.clone();
                ineqs.remove(i);
                Cone::new(self.dim, eqs, ineqs)
            })
            .collect()
    }

    /// A basis of the linear span.
    pub fn span_basis(&self) -> Vec<Vec<Q>> {
        let rows: Vec<Vec<Q>> = self.eqs.iter().map(|e| to_q(e)).collect();
        crate::linalg::nullspace(&rows, self.dim)
    }

    /// The preimage under a linear map, given its action on covectors.
    pub fn pullback(&self, dim: usize, f: impl Fn(&[i64]) -> Vec<i64>) -> Cone {
        Cone::new(dim, self.eqs.iter().map(|e| f(e)).collect(), self.ineqs.iter().map(|b| f(b)).collect())
    }

    /// A random point of the relative interior.
    pub fn random_point<R: Rng>(&self, rng: &mut R) -> Vec<Q> {
        let x0 = self.witness.clone();
        let basis = self.span_basis();
        if basis.is_empty() {
            return x0;
        }
        let mut u = vec![Q::zero(); self.dim];
        for b in &basis {
            let c = q(rng.gen_range(-1000..=1000));
            for (ui, bi) in u.iter_mut().zip(b) {
                *ui += &c * bi;
            }
        }
        let mut eps = q(rng.gen_range(1..=64)) / q(16);
        for b in &self.ineqs {
            let bu = dot_iq(b, &u);
            if bu.is_negative() {
                let lim = dot_iq(b, &x0) / -bu;
                if lim < eps {
                    eps = lim;
                }
            }
        }
        let eps = eps * q(rng.gen_range(1..=999)) / q(1000);
        x0.iter().zip(&u).map(|(a, b)| a + &eps * b).collect()
    }
}

/// Whether `b >= 0` is implied by `E x = 0, B x >= 0`.
pub fn implied(dim: usize, eqs: &[Vec<i64>], ineqs: &[Vec<i64>], b: &[i64]) -> bool {
    let mut all = ineqs.to_vec();
    all.push(b.iter().map(|x| -x).collect());
    let (_, imp) = relint_and_implicit(dim, eqs, &all);
    imp.contains(&ineqs.len())
}
