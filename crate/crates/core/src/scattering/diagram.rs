//! Walls and scattering diagrams.

use crate::cone_geom::Cone;
use crate::lattice_seed::{FixedData, Seed};
use crate::poly_ring::{Frame, Uni, WallFunction};
use crate::rational::{to_i64, Q};
use num_traits::{Signed, Zero};

/// Trust value for walls whose function is known exactly.
pub const EXACT: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    /// primitive normal in `N^+` of the diagram's seed (initial coordinates)
    pub normal: Vec<i64>,
    /// primitive `N°` covector cutting out the wall's hyperplane
    pub cov: Vec<i64>,
    pub support: Cone,
    /// `f = 1 + sum coeffs[l-1] t^l`, `t = z^{p1^*(normal)}`
    pub coeffs: Vec<Q>,
    /// coefficients of `t^l` are exact for `l <= trust`
    pub trust: u32,
}

impl Wall {
    pub fn function(&self) -> WallFunction {
        WallFunction { n0: self.normal.clone(), coeffs: self.coeffs.clone() }
    }

    pub fn uni(&self, len: usize) -> Uni {
        Uni::from_wall(&self.coeffs, len)
    }

    pub fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Whether the wall contains its own direction `p1^*(n0)`.
    pub fn is_incoming(&self, fd: &FixedData) -> bool {
        let p: Vec<Q> = fd.pstar(&self.normal).iter().map(|&x| Q::from_integer(x.into())).collect();
        self.support.contains(&p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    pub fd: FixedData,
    pub seed: Seed,
    /// truncation order in the grading of `seed`
    pub order: u32,
    pub walls: Vec<Wall>,
    /// mutations applied after construction, oldest first; empty for a
    /// diagram built directly in `seed`
    pub shears: Vec<Shear>,
}

/// One application of the piecewise-linear mutation `T_k` at `seed`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shear {
    pub k: usize,
    pub seed: Seed,
}

impl Diagram {
    pub fn rank(&self) -> usize {
        self.fd.rank()
    }

    pub fn frame(&self) -> Frame {
        Frame::new(&self.fd, &self.seed)
    }

    /// `d(n)` in the grading of the diagram's seed.
    pub fn degree(&self, n: &[i64]) -> i64 {
        let s = self.frame().degree(n);
        to_i64(&s).expect("normal outside the lattice")
    }

    /// The largest `l` such that the coefficient of `t^l` in the product of
    /// functions along the hyperplane of `normal` near `x` is reliable.
    pub fn trust_at(&self, normal: &[i64], x: &[Q]) -> u32 {
        let mut n = normal.to_vec();
        let mut x = x.to_vec();
        for sh in self.shears.iter().rev() {
            let c = sh.seed.e_covector(&self.fd, sh.k);
            let t = crate::rational::dot_iq(&c, &x);
            if t.is_positive() {
                let ek = sh.seed.e(sh.k);
                let dk = self.fd.d[sh.k];
                let b = to_i64(&(self.fd.form(&n, ek) * Q::from_integer(dk.into()))).expect("non-integral form value");
                n = n.iter().zip(ek).map(|(a, e)| a - b * e).collect();
                x = crate::lattice_seed::tropical_mutation_inv(&self.fd, &sh.seed, sh.k, &x);
            }
        }
        let base = self.shears.first().map(|s| &s.seed).unwrap_or(&self.seed);
        let deg = Frame::new(&self.fd, base).degree(&n);
        if !deg.is_positive() {
            return EXACT;
        }
        to_i64(&(Q::from_integer((self.order as i64).into()) / deg).floor()).unwrap() as u32
    }

    /// Distinct hyperplane covectors, sorted.
    pub fn hyperplanes(&self) -> Vec<Vec<i64>> {
        let mut h: Vec<Vec<i64>> = self.walls.iter().map(|w| w.cov.clone()).collect();
        h.sort();
        h.dedup();
        h
    }

    /// Product of the functions of walls in the hyperplane `cov` that contain `x`.
    pub fn function_at(&self, cov: &[i64], x: &[Q], len: usize) -> Uni {
        let mut f = Uni::one(len);
        for w in &self.walls {
            if w.cov == cov && w.support.contains(x) {
                f = f.mul(&w.uni(len));
            }
        }
        f
    }

    pub fn sort_walls(&mut self) {
        self.walls.sort_by(|a, b| (&a.normal, &a.support, &a.coeffs).cmp(&(&b.normal, &b.support, &b.coeffs)));
    }

    /// Multiplies together walls with identical support and drops trivial ones.
    pub fn merge(&mut self) {
        self.sort_walls();
        let mut out: Vec<Wall> = Vec::with_capacity(self.walls.len());
        for w in self.walls.drain(..) {
            if let Some(last) = out.last_mut() {
                if last.normal == w.normal && last.support == w.support {
                    let len = last.coeffs.len().max(w.coeffs.len()) + 1;
                    let f = last.uni(len).mul(&w.uni(len));
                    last.coeffs = f.c[1..].to_vec();
                    last.trust = last.trust.min(w.trust);
                    continue;
                }
            }
            out.push(w);
        }
        for w in &mut out {
            while w.coeffs.last().is_some_and(|c| c.is_zero()) {
                w.coeffs.pop();
            }
        }
        out.retain(|w| !w.is_trivial());
        self.walls = out;
        self.coalesce();
    }

    /// Fuses pieces carrying the same function whose union is again a cone.
    fn coalesce(&mut self) {
        let mut i = 0;
        while i < self.walls.len() {
            let mut fused = false;
            for j in i + 1..self.walls.len() {
                let (a, b) = (&self.walls[i], &self.walls[j]);
                if a.normal != b.normal {
                    break;
                }
                if a.coeffs != b.coeffs || a.trust != b.trust {
                    continue;
                }
                if let Some(u) = a.support.convex_union(&b.support) {
                    self.walls[i].support = u;
                    self.walls.remove(j);
                    fused = true;
                    break;
                }
            }
            if !fused {
                i += 1;
            }
        }
        self.sort_walls();
    }
}
