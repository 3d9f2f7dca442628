//! Fixed data, seeds and their mutations, principal and Langlands dual data,
//! and the piecewise-linear tropical mutation maps.
//!
//! Coordinates are fixed by the initial seed. `N = Z^n` with basis `e_i`;
//! points of `M°` are integer vectors in the basis `f_i = e_i^*/d_i`, so that
//! `<n, m> = sum a_i m_i / d_i`. Covectors on `M°` are written in `N°`
//! coordinates, where the pairing is the plain dot product.

use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::rational::{dot, gcd_all, lcm_all, primitive, q, qf, to_i64, Q};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedData {
    pub skew: Mat,
    pub d: Vec<i64>,
    pub frozen: Vec<bool>,
}

impl FixedData {
    pub fn new(skew: Mat, d: Vec<i64>, frozen: &[usize]) -> Result<Self> {
        let n = d.len();
        if n == 0 || skew.len() != n || skew.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidData("matrix shape does not match rank".into()));
        }
        if d.iter().any(|&x| x <= 0) {
            return Err(Error::InvalidData("multipliers must be positive".into()));
        }
        if frozen.iter().any(|&i| i >= n) {
            return Err(Error::InvalidData("frozen index out of range".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if skew[i][j] != -skew[j][i].clone() {
                    return Err(Error::InvalidData("form is not skew-symmetric".into()));
                }
            }
        }
        if gcd_all(&d) != 1 {
            return Err(Error::InvalidData("gcd of multipliers is not 1".into()));
        }
        let mut fr = vec![false; n];
        for &i in frozen {
            fr[i] = true;
        }
        let fd = FixedData { skew, d, frozen: fr };
        let eps = fd.eps();
        for i in 0..n {
            for j in 0..n {
                if (!fd.frozen[i] || !fd.frozen[j]) && !eps[i][j].is_integer() {
                    return Err(Error::InvalidData(format!("epsilon[{i}][{j}] is not an integer")));
                }
            }
            if !fd.frozen[i] && fd.skew[i].iter().all(|x| x.is_zero()) {
                return Err(Error::InvalidData(format!("row {i} of the form is zero")));
            }
        }
        Ok(fd)
    }

    /// Skew-symmetric data with all multipliers 1 from an integer matrix.
    pub fn skew_symmetric(eps: &[Vec<i64>], frozen: &[usize]) -> Result<Self> {
        let n = eps.len();
        Self::new(linalg::to_qmat(eps), vec![1; n], frozen)
    }

    pub fn rank(&self) -> usize {
        self.d.len()
    }

    pub fn unfrozen(&self) -> Vec<usize> {
        (0..self.rank()).filter(|&i| !self.frozen[i]).collect()
    }

    /// `eps[i][j] = {e_i, e_j} d_j` in initial coordinates.
    pub fn eps(&self) -> Mat {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|j| &self.skew[i][j] * q(self.d[j])).collect()).collect()
    }

    /// `{a, b}` for `a, b` in `N` (initial coordinates).
    pub fn form(&self, a: &[i64], b: &[i64]) -> Q {
        let mut s = Q::zero();
        for i in 0..a.len() {
            if a[i] == 0 {
                continue;
            }
            for j in 0..b.len() {
                if b[j] != 0 {
                    s += &self.skew[i][j] * q(a[i] * b[j]);
                }
            }
        }
        s
    }

    /// `p1^*(n) = {n, .}` in f-coordinates. Panics if not integral, which cannot
    /// happen for `n` supported on unfrozen indices.
    pub fn pstar(&self, n: &[i64]) -> Vec<i64> {
        self.pstar_q(n).iter().map(|x| to_i64(x).expect("p* of a non-integral vector")).collect()
    }

    pub fn pstar_q(&self, n: &[i64]) -> Vec<Q> {
        let r = self.rank();
        (0..r)
            .map(|j| {
                let mut s = Q::zero();
                for i in 0..r {
                    if n[i] != 0 {
                        s += &self.skew[i][j] * q(n[i] * self.d[j]);
                    }
                }
                s
            })
            .collect()
    }

    /// `<n, m>` for `n` in `N`, `m` in f-coordinates.
    pub fn pair(&self, n: &[i64], m: &[Q]) -> Q {
        n.iter().zip(m).zip(&self.d).filter(|((a, _), _)| **a != 0).map(|((a, x), d)| x * qf(*a, *d)).sum()
    }

    /// The primitive generator of `R_{>=0} n ∩ N°`, written as an integer
    /// covector in `N°` coordinates.
    pub fn n_covector(&self, n: &[i64]) -> Vec<i64> {
        let v: Vec<Q> = n.iter().zip(&self.d).map(|(a, d)| qf(*a, *d)).collect();
        primitive(&v).expect("zero normal vector")
    }

    /// The rational `delta > 0` with `n_covector(n) = delta * n` (as elements of `N_Q`).
    pub fn n_scale(&self, n: &[i64]) -> Q {
        let c = self.n_covector(n);
        let i = n.iter().position(|&x| x != 0).expect("zero normal");
        // covector entry c_i corresponds to c_i * d_i * e_i
        qf(c[i] * self.d[i], n[i])
    }

    /// Positive integer multiple of the covector `<d_k e_k, .>` for an
    /// element `e` of `N` (initial coordinates), i.e. `d_k e_j / d_j`.
    pub fn nd_covector(&self, e: &[i64], dk: i64) -> Vec<i64> {
        e.iter().zip(&self.d).map(|(a, d)| to_i64(&qf(a * dk, *d)).expect("seed vector not in the scaled lattice")).collect()
    }
}

/// Lattice tags for coordinate vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Lattice {
    N,
    NCirc,
    MCirc,
    MTilde,
    NTilde,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePoint {
    pub coords: Vec<i64>,
    pub lattice: Lattice,
}

impl LatticePoint {
    pub fn new(coords: Vec<i64>, lattice: Lattice) -> Self {
        LatticePoint { coords, lattice }
    }
}

#[derive(Clone, Debug, Eq, Serialize, Deserialize)]
pub struct Seed {
    pub basis: Vec<Vec<i64>>,
    pub path: Vec<usize>,
}

impl PartialEq for Seed {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
    }
}

impl Seed {
    pub fn identity(n: usize) -> Self {
        Seed { basis: linalg::identity_i(n), path: Vec::new() }
    }

    pub fn from_path(fd: &FixedData, path: &[usize]) -> Result<Self> {
        let mut s = Seed::identity(fd.rank());
        for &k in path {
            s = s.mutate(fd, k)?;
        }
        Ok(s)
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn e(&self, i: usize) -> &[i64] {
        &self.basis[i]
    }

    /// `eps^s[i][j] = {e_i, e_j} d_j` for this seed.
    pub fn exchange_matrix(&self, fd: &FixedData) -> Mat {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|j| fd.form(&self.basis[i], &self.basis[j]) * q(fd.d[j])).collect()).collect()
    }

    pub fn eps_int(&self, fd: &FixedData, i: usize, j: usize) -> i64 {
        let v = fd.form(&self.basis[i], &self.basis[j]) * q(fd.d[j]);
        to_i64(&v).expect("exchange matrix entry is not an integer")
    }

    pub fn mutate(&self, fd: &FixedData, k: usize) -> Result<Seed> {
        if k >= self.rank() || fd.frozen[k] {
            return Err(Error::FrozenIndex(k));
        }
        let n = self.rank();
        let ek = self.basis[k].clone();
        let basis = (0..n)
            .map(|i| {
                if i == k {
                    ek.iter().map(|x| -x).collect()
                } else {
                    let c = self.eps_int(fd, i, k).max(0);
                    self.basis[i].iter().zip(&ek).map(|(a, b)| a + c * b).collect()
                }
            })
            .collect();
        let mut path = self.path.clone();
        path.push(k);
        Ok(Seed { basis, path })
    }

    /// `v_i = p1^*(e_i)` in f-coordinates.
    pub fn v(&self, fd: &FixedData, i: usize) -> Vec<i64> {
        fd.pstar(&self.basis[i])
    }

    /// Covector `<d_i e_i, .>` in `N°` coordinates.
    pub fn e_covector(&self, fd: &FixedData, i: usize) -> Vec<i64> {
        fd.nd_covector(&self.basis[i], fd.d[i])
    }

    /// The `N°` basis matrix: row `i` is `d_i e_i` in `N°` coordinates.
    pub fn n_circ_basis(&self, fd: &FixedData) -> Vec<Vec<i64>> {
        (0..self.rank()).map(|i| self.e_covector(fd, i)).collect()
    }

    /// The seed's f-basis in global f-coordinates: `f_i` is row `i` of the result.
    pub fn f_basis(&self, fd: &FixedData) -> Vec<Vec<i64>> {
        let c = linalg::to_qmat(&self.n_circ_basis(fd));
        let inv = linalg::inverse(&c).expect("seed is not a basis");
        let t = linalg::transpose(&inv);
        t.iter().map(|r| r.iter().map(|x| to_i64(x).expect("f-basis is not integral")).collect()).collect()
    }

    /// Coordinates of `n` (initial coordinates) in this seed's basis.
    pub fn seed_coords(&self, n: &[i64]) -> Vec<Q> {
        let bt = linalg::transpose(&linalg::to_qmat(&self.basis));
        let nq: Vec<Q> = n.iter().map(|&x| q(x)).collect();
        linalg::solve(&bt, &nq, self.rank()).expect("seed is not a basis")
    }

    pub fn seed_coords_int(&self, n: &[i64]) -> Vec<i64> {
        self.seed_coords(n).iter().map(|x| to_i64(x).expect("seed coordinates are not integral")).collect()
    }

    /// Converts seed coordinates to initial coordinates.
    pub fn from_seed_coords(&self, c: &[i64]) -> Vec<i64> {
        let n = self.rank();
        (0..n).map(|j| (0..n).map(|i| c[i] * self.basis[i][j]).sum()).collect()
    }

    pub fn det(&self) -> Q {
        linalg::det(&linalg::to_qmat(&self.basis))
    }
}

pub fn exchange_matrix(s: &Seed, fd: &FixedData) -> Mat {
    s.exchange_matrix(fd)
}

pub fn mutate_seed(s: &Seed, fd: &FixedData, k: usize) -> Result<Seed> {
    s.mutate(fd, k)
}

pub fn load_fixed_data(skew: Mat, d: Vec<i64>, frozen: &[usize]) -> Result<FixedData> {
    FixedData::new(skew, d, frozen)
}

/// True iff the vectors `v_i` for unfrozen `i` are linearly independent.
pub fn check_injectivity(fd: &FixedData, s: &Seed) -> bool {
    let uf = fd.unfrozen();
    let rows: Mat = uf.iter().map(|&i| fd.pstar_q(s.e(i))).collect();
    linalg::rank(&rows, fd.rank()) == uf.len()
}

/// Principal-coefficient data built on the seed `s`, written in the basis
/// `(e_i, 0), (0, f_i)`; the returned seed is the identity.
pub fn principal_extension(fd: &FixedData, s: &Seed) -> (FixedData, Seed) {
    let n = fd.rank();
    let mut skew = vec![vec![Q::zero(); 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            skew[i][j] = fd.form(s.e(i), s.e(j));
        }
        skew[i][n + i] = qf(1, fd.d[i]);
        skew[n + i][i] = qf(-1, fd.d[i]);
    }
    let mut d = fd.d.clone();
    d.extend_from_slice(&fd.d);
    let mut frozen: Vec<usize> = (0..n).filter(|&i| fd.frozen[i]).collect();
    frozen.extend(n..2 * n);
    let p = FixedData::new(skew, d, &frozen).expect("principal extension is valid fixed data");
    (p, Seed::identity(2 * n))
}

/// Langlands dual data, written in the basis `d_i e_i` of `N°`.
pub fn langlands_dual(fd: &FixedData, s: &Seed) -> (FixedData, Seed) {
    let n = fd.rank();
    let big_d = lcm_all(&fd.d);
    let dv: Vec<i64> = fd.d.iter().map(|x| big_d / x).collect();
    let skew = (0..n).map(|i| (0..n).map(|j| &fd.skew[i][j] * qf(fd.d[i] * fd.d[j], big_d)).collect()).collect();
    let frozen: Vec<usize> = (0..n).filter(|&i| fd.frozen[i]).collect();
    let dual = FixedData::new(skew, dv, &frozen).expect("dual data is valid");
    let basis = s.n_circ_basis(fd);
    (dual, Seed { basis, path: s.path.clone() })
}

/// Tropical mutation `T_k` at seed `s`.
pub fn tropical_mutation(fd: &FixedData, s: &Seed, k: usize, x: &[Q]) -> Vec<Q> {
    let c = s.e_covector(fd, k);
    let v = s.v(fd, k);
    let t = crate::rational::dot_iq(&c, x);
    if t.is_positive() {
        x.iter().zip(&v).map(|(a, b)| a + &t * q(*b)).collect()
    } else {
        x.to_vec()
    }
}

/// Inverse of [`tropical_mutation`].
pub fn tropical_mutation_inv(fd: &FixedData, s: &Seed, k: usize, x: &[Q]) -> Vec<Q> {
    let c = s.e_covector(fd, k);
    let v = s.v(fd, k);
    let t = crate::rational::dot_iq(&c, x);
    if t.is_positive() {
        x.iter().zip(&v).map(|(a, b)| a - &t * q(*b)).collect()
    } else {
        x.to_vec()
    }
}

/// Rows of the right block of the principal exchange matrix after replaying `path`.
pub fn c_vectors(fd: &FixedData, s0: &Seed, path: &[usize]) -> Result<Vec<Vec<i64>>> {
    let n = fd.rank();
    let (p, mut s) = principal_extension(fd, s0);
    for &k in path {
        if k >= n {
            return Err(Error::FrozenIndex(k));
        }
        s = s.mutate(&p, k)?;
    }
    Ok((0..n).map(|i| (0..n).map(|j| s.eps_int(&p, i, n + j)).collect()).collect())
}

pub fn is_sign_coherent(v: &[i64]) -> bool {
    v.iter().all(|&x| x >= 0) || v.iter().all(|&x| x <= 0)
}

/// Pairing helper used across modules: `c . x` for an integer covector.
pub fn covector_eval(c: &[i64], x: &[Q]) -> Q {
    crate::rational::dot_iq(c, x)
}

pub fn qdot(a: &[Q], b: &[Q]) -> Q {
    dot(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qvec;

    fn a2() -> FixedData {
        FixedData::skew_symmetric(&[vec![0, 1], vec![-1, 0]], &[]).unwrap()
    }

    fn bc(b: i64, c: i64) -> FixedData {
        FixedData::new(vec![qvec(&[0, 1]), qvec(&[-1, 0])], vec![b, c], &[]).unwrap()
    }

    #[test]
    fn validation_errors() {
        assert!(FixedData::new(vec![qvec(&[0])], vec![1], &[]).is_err());
        assert!(FixedData::new(vec![qvec(&[0, 1]), qvec(&[1, 0])], vec![1, 1], &[]).is_err());
        assert!(FixedData::new(vec![qvec(&[0, 1]), qvec(&[-1, 0])], vec![2, 2], &[]).is_err());
        let fd = FixedData::new(vec![qvec(&[0, 1]), qvec(&[-1, 0])], vec![2, 3], &[]).unwrap();
        assert_eq!(fd.eps(), vec![qvec(&[0, 3]), qvec(&[-2, 0])]);
        let half = FixedData::new(vec![vec![q(0), qf(1, 2)], vec![qf(-1, 2), q(0)]], vec![1, 1], &[]);
        assert!(half.is_err());
    }

    #[test]
    fn a2_mutation() {
        let fd = a2();
        let s = Seed::identity(2);
        assert_eq!(s.exchange_matrix(&fd), vec![qvec(&[0, 1]), qvec(&[-1, 0])]);
        let s1 = s.mutate(&fd, 0).unwrap();
        assert_eq!(s1.basis, vec![vec![-1, 0], vec![0, 1]]);
        assert_eq!(s1.path, vec![0]);
        assert!(s.mutate(&fd, 2).is_err());
    }

    #[test]
    fn g2_mutation_by_hand() {
        // b=1, c=3: eps = [[0,3],[-1,0]]; mu_2: e1' = e1 + [eps_12]_+ e2 = e1 + 3 e2
        let fd = bc(1, 3);
        let s = Seed::identity(2).mutate(&fd, 1).unwrap();
        assert_eq!(s.basis, vec![vec![1, 3], vec![0, -1]]);
        assert_eq!(s.exchange_matrix(&fd), vec![qvec(&[0, -3]), qvec(&[1, 0])]);
    }

    #[test]
    fn markov_matrix_and_injectivity() {
        let fd = FixedData::skew_symmetric(&[vec![0, 2, -2], vec![-2, 0, 2], vec![2, -2, 0]], &[]).unwrap();
        let s = Seed::identity(3);
        assert_eq!(s.exchange_matrix(&fd)[0], qvec(&[0, 2, -2]));
        assert!(!check_injectivity(&fd, &s));
        let (p, ps) = principal_extension(&fd, &s);
        assert!(check_injectivity(&p, &ps));
        assert!(check_injectivity(&a2(), &s));
    }

    #[test]
    fn principal_block_is_identity() {
        let fd = bc(1, 3);
        let c = c_vectors(&fd, &Seed::identity(2), &[]).unwrap();
        assert_eq!(c, vec![vec![1, 0], vec![0, 1]]);
        let c2 = c_vectors(&fd, &Seed::identity(2), &[1, 1]).unwrap();
        assert_eq!(c2, c);
    }

    #[test]
    fn f_basis_matches_f_mutation_formula() {
        let fd = bc(1, 3);
        let s = Seed::identity(2);
        for k in 0..2 {
            let s1 = s.mutate(&fd, k).unwrap();
            let f0 = s.f_basis(&fd);
            let f1 = s1.f_basis(&fd);
            let eps = s.exchange_matrix(&fd);
            for i in 0..2 {
                if i != k {
                    assert_eq!(f1[i], f0[i]);
                }
            }
            let mut expect: Vec<i64> = f0[k].iter().map(|x| -x).collect();
            for j in 0..2 {
                let c = to_i64(&-eps[k][j].clone()).unwrap().max(0);
                for t in 0..2 {
                    expect[t] += c * f0[j][t];
                }
            }
            assert_eq!(f1[k], expect);
        }
    }

    #[test]
    fn langlands_dual_examples() {
        let fd = bc(1, 3);
        let (dual, s) = langlands_dual(&fd, &Seed::identity(2));
        assert_eq!(dual.d, vec![3, 1]);
        assert_eq!(s.basis, vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(dual.exchange_matrix_of_identity(), vec![qvec(&[0, 1]), qvec(&[-3, 0])]);
        let (dd, _) = langlands_dual(&dual, &Seed::identity(2));
        assert_eq!(dd.exchange_matrix_of_identity(), fd.exchange_matrix_of_identity());
        // a non-identity seed maps to its scaled basis d_i e_i
        let s1 = Seed::identity(2).mutate(&fd, 1).unwrap();
        let (_, s1v) = langlands_dual(&fd, &s1);
        assert_eq!(s1v.basis, vec![vec![1, 1], vec![0, -1]]);
        let a = a2();
        assert_eq!(langlands_dual(&a, &Seed::identity(2)).0, a);
    }

    #[test]
    fn tropical_mutation_cases() {
        let fd = a2();
        let s = Seed::identity(2);
        // A2, k=1: v_1 = f_2, so T_1(f_1) = f_1 + f_2
        assert_eq!(tropical_mutation(&fd, &s, 0, &qvec(&[1, 0])), qvec(&[1, 1]));
        assert_eq!(tropical_mutation(&fd, &s, 0, &qvec(&[-1, 5])), qvec(&[-1, 5]));
    }

    impl FixedData {
        fn exchange_matrix_of_identity(&self) -> Mat {
            Seed::identity(self.rank()).exchange_matrix(self)
        }
    }
}
