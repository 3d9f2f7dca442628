//! g-vectors and cluster monomials computed by replaying exchange
//! relations, used as an independent oracle for theta functions.

use super::function::{generic_basepoint, theta_function};
use crate::error::{Error, Result};
use crate::lattice_seed::{principal_extension, FixedData, Seed};
use crate::poly_ring::Laurent;
use crate::rational::{q, to_i64, Q};
use crate::scattering::chambers::{orthant, seeds_along, transport_back};
use crate::scattering::Diagram;
use num_traits::One;
use rand::Rng;

fn check_monomial(fd: &FixedData, m: &[i64]) -> Result<()> {
    if m.len() != fd.rank() {
        return Err(Error::Invalid("exponent has the wrong length".into()));
    }
    if m.iter().zip(&fd.frozen).any(|(&a, &f)| !f && a < 0) {
        return Err(Error::Invalid("cluster monomial needs nonnegative unfrozen exponents".into()));
    }
    Ok(())
}

/// The g-vector (in initial f-coordinates) of the cluster monomial with
/// exponents `m` in the cluster variables of the seed reached by `path`.
pub fn g_vector(fd: &FixedData, s0: &Seed, path: &[usize], m: &[i64]) -> Result<Vec<i64>> {
    check_monomial(fd, m)?;
    let far = seeds_along(fd, s0, path)?.pop().unwrap();
    let fb = far.f_basis(fd);
    let r = fd.rank();
    let mut x = vec![q(0); r];
    for (a, f) in m.iter().zip(&fb) {
        for (xi, fi) in x.iter_mut().zip(f) {
            *xi += q(a * fi);
        }
    }
    let g = transport_back(fd, s0, path, &x)?;
    g.iter().map(|v| to_i64(v).ok_or_else(|| Error::Invalid("non-integral g-vector".into()))).collect()
}

/// Cluster variables of the seed reached by `path`, as Laurent polynomials
/// in the initial variables `A_i = z^{f_i}`.
pub fn cluster_variables(fd: &FixedData, s0: &Seed, path: &[usize]) -> Result<Vec<Laurent>> {
    let r = fd.rank();
    let mut x: Vec<Laurent> = (0..r)
        .map(|i| {
            let mut e = vec![0; r];
            e[i] = 1;
            Laurent::monomial(e, Q::one())
        })
        .collect();
    let mut s = s0.clone();
    for &k in path {
        let mut plus = Laurent::constant(r, Q::one());
        let mut minus = Laurent::constant(r, Q::one());
        for (i, xi) in x.iter().enumerate() {
            let e = s.eps_int(fd, k, i);
            if e > 0 {
                plus = plus.mul(&xi.pow(e as u32, r));
            } else if e < 0 {
                minus = minus.mul(&xi.pow((-e) as u32, r));
            }
        }
        x[k] = plus.add(&minus).div_exact(&x[k])?;
        s = s.mutate(fd, k)?;
    }
    Ok(x)
}

/// The cluster monomial `prod x_i^{m_i}` of the seed reached by `path`. With
/// `principal`, the data is first replaced by its principal extension and `m`
/// is padded with zeros.
pub fn cluster_monomial_laurent(fd: &FixedData, s0: &Seed, path: &[usize], m: &[i64], principal: bool) -> Result<Laurent> {
    if principal {
        let (p, ps) = principal_extension(fd, s0);
        let mut mm = m.to_vec();
        mm.resize(p.rank(), 0);
        return cluster_monomial_laurent(&p, &ps, path, &mm, false);
    }
    check_monomial(fd, m)?;
    let r = fd.rank();
    let vars = cluster_variables(fd, s0, path)?;
    let mut out = Laurent::constant(r, Q::one());
    for (xi, &a) in vars.iter().zip(m) {
        if a > 0 {
            out = out.mul(&xi.pow(a as u32, r));
        } else if a < 0 {
            // only frozen variables, which stay monomials
            let (e, c) = xi.terms.iter().next().unwrap();
            debug_assert_eq!(xi.len(), 1);
            let inv = Laurent::monomial(e.iter().map(|v| -v).collect(), Q::one() / c);
            out = out.mul(&inv.pow((-a) as u32, r));
        }
    }
    Ok(out)
}

/// Degree of `l` over `z^{g}`, the largest `d(n)` with `z^{g + p^*(n)}` a term.
pub fn height_over(d: &Diagram, g: &[i64], l: &Laurent) -> Option<u32> {
    let frame = d.frame();
    let mut h = 0;
    for e in l.terms.keys() {
        let diff: Vec<i64> = e.iter().zip(g).map(|(a, b)| a - b).collect();
        let c = frame.mono_of_m(&diff)?;
        h = h.max(c.iter().sum());
    }
    Some(h)
}

/// Outcome of comparing a theta function with a cluster monomial.
#[derive(Clone, Debug)]
pub struct ClusterComparison {
    pub g: Vec<i64>,
    pub theta: Laurent,
    pub monomial: Laurent,
    /// degree over `z^g` needed to see the whole monomial
    pub needed: Option<u32>,
}

impl ClusterComparison {
    pub fn equal(&self) -> bool {
        self.theta == self.monomial
    }
}

/// Compares `theta_{Q,g}` for `Q` in the positive chamber of `d`'s seed with
/// the cluster monomial `m` at the seed reached by `path`, both truncated at
/// `order`. `d` must be the diagram of `(fd, s0)`.
pub fn compare_theta_with_cluster_monomial<R: Rng>(
    d: &Diagram,
    path: &[usize],
    m: &[i64],
    order: u32,
    rng: &mut R,
) -> Result<ClusterComparison> {
    let fd = &d.fd;
    let s0 = &d.seed;
    let g = g_vector(fd, s0, path, m)?;
    let monomial = cluster_monomial_laurent(fd, s0, path, m, false)?;
    let needed = height_over(d, &g, &monomial);
    let cone = orthant(fd, s0, 1);
    let mut last = Err(Error::GenericityExhausted(0));
    for _ in 0..crate::scattering::construct::MAX_ATTEMPTS {
        let x = generic_basepoint(d, &cone, rng)?;
        last = theta_function(d, &g, &x, order);
        if !matches!(last, Err(Error::Degenerate(_))) {
            break;
        }
    }
    let theta = last?.poly;
    let monomial = super::function::truncate_over(&d.frame(), &g, &monomial, order);
    Ok(ClusterComparison { g, theta, monomial, needed })
}

/// [`compare_theta_with_cluster_monomial`] on a freshly built diagram.
pub fn theta_equals_cluster_monomial<R: Rng>(
    fd: &FixedData,
    s0: &Seed,
    path: &[usize],
    m: &[i64],
    order: u32,
    rng: &mut R,
) -> Result<bool> {
    let d = crate::scattering::scatter(fd, s0, order)?;
    Ok(compare_theta_with_cluster_monomial(&d, path, m, order, rng)?.equal())
}
