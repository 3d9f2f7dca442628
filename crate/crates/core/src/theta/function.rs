//! Theta functions as sums over broken lines, and their transport along
//! paths and under mutation.

use super::broken::{broken_lines, BrokenLine};
use crate::cone_geom::Cone;
use crate::error::{Error, Result};
use crate::lattice_seed::tropical_mutation;
use crate::poly_ring::series::mono_deg;
use crate::poly_ring::{Frame, Laurent, Series};
use crate::rational::{dot_i, dot_iq, q, to_i64, Q};
use crate::scattering::construct::{off_hyperplanes, MAX_ATTEMPTS};
use crate::scattering::{mutate_diagram, path_ordered_product, Diagram};
use num_traits::{One, Signed, Zero};
use rand::Rng;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaExpansion {
    pub basepoint: Vec<Q>,
    /// mutation path of the cluster chamber holding the basepoint, when known
    pub chamber: Option<Vec<usize>>,
    pub m0: Vec<i64>,
    pub order: u32,
    pub poly: Laurent,
    pub lines: usize,
}

/// `theta_{Q,m0}` modulo degree `order + 1` over `z^{m0}`.
pub fn theta_function(d: &Diagram, m0: &[i64], basepoint: &[Q], order: u32) -> Result<ThetaExpansion> {
    let mut out = ThetaExpansion {
        basepoint: basepoint.to_vec(),
        chamber: None,
        m0: m0.to_vec(),
        order,
        poly: Laurent::constant(d.rank(), Q::one()),
        lines: 0,
    };
    if m0.iter().all(|&x| x == 0) {
        return Ok(out);
    }
    let lines = broken_lines(d, m0, basepoint, order)?;
    out.poly = sum_lines(d.rank(), &lines);
    out.lines = lines.len();
    Ok(out)
}

pub fn sum_lines(rank: usize, lines: &[BrokenLine]) -> Laurent {
    let mut l = Laurent::zero();
    for line in lines {
        let (e, c) = line.monomial();
        debug_assert_eq!(e.len(), rank);
        l.add_term(e, c);
    }
    l
}

/// A random point of the interior of `cone` off every wall hyperplane.
pub fn generic_basepoint<R: Rng>(d: &Diagram, cone: &Cone, rng: &mut R) -> Result<Vec<Q>> {
    for _ in 0..MAX_ATTEMPTS {
        let x = cone.random_point(rng);
        if cone.in_relint(&x) && off_hyperplanes(d, &x) {
            return Ok(x);
        }
    }
    Err(Error::GenericityExhausted(MAX_ATTEMPTS))
}

/// [`theta_function`] at a basepoint sampled in `cone`, re-sampling when a
/// traced line turns out to be non-generic.
pub fn theta_in<R: Rng>(d: &Diagram, m0: &[i64], cone: &Cone, order: u32, rng: &mut R) -> Result<ThetaExpansion> {
    for _ in 0..MAX_ATTEMPTS {
        let x = generic_basepoint(d, cone, rng)?;
        match theta_function(d, m0, &x, order) {
            Err(Error::Degenerate(_)) => continue,
            r => return r,
        }
    }
    Err(Error::GenericityExhausted(MAX_ATTEMPTS))
}

/// `l` as `z^{base} S(y)`; terms outside `base + p^*(N^+)` are reported.
pub fn to_series(frame: &Frame, base: &[i64], l: &Laurent, order: u32) -> Result<Series> {
    let mut s = Series::zero(frame.nvars(), order);
    for (e, c) in &l.terms {
        let diff: Vec<i64> = e.iter().zip(base).map(|(a, b)| a - b).collect();
        let m = frame.mono_of_m(&diff).ok_or_else(|| Error::Invalid(format!("exponent {e:?} is not above {base:?}")))?;
        s.add_term(m, c.clone());
    }
    Ok(s)
}

/// Drops the terms of `l` of degree above `order` over `z^{base}`.
pub fn truncate_over(frame: &Frame, base: &[i64], l: &Laurent, order: u32) -> Laurent {
    let mut out = Laurent::zero();
    for (e, c) in &l.terms {
        let diff: Vec<i64> = e.iter().zip(base).map(|(a, b)| a - b).collect();
        match frame.mono_of_m(&diff) {
            Some(m) if mono_deg(&m) > order => {}
            _ => out.add_term(e.clone(), c.clone()),
        }
    }
    out
}

/// Checks `theta_{Q2,m0} = theta_gamma(theta_{Q1,m0})` for a path `gamma`
/// from `q1` to `q2` (straight, or through a random waypoint when the
/// straight path meets a joint).
pub fn theta_path_invariance<R: Rng>(d: &Diagram, m0: &[i64], q1: &[Q], q2: &[Q], order: u32, rng: &mut R) -> Result<bool> {
    let frame = d.frame();
    let t1 = theta_function(d, m0, q1, order)?;
    let t2 = theta_function(d, m0, q2, order)?;
    let mut path = vec![q1.to_vec(), q2.to_vec()];
    let mut gamma = path_ordered_product(d, &frame, &path, order);
    let mut tries = 0;
    while matches!(gamma, Err(Error::Degenerate(_))) && tries < MAX_ATTEMPTS {
        let mid: Vec<Q> = q1.iter().zip(q2).map(|(a, b)| (a + b) / q(2) + q(rng.gen_range(-500..=500)) / q(97)).collect();
        path = vec![q1.to_vec(), mid, q2.to_vec()];
        gamma = path_ordered_product(d, &frame, &path, order);
        tries += 1;
    }
    let gamma = gamma?;
    let s1 = to_series(&frame, m0, &t1.poly, order)?;
    let moved = frame.to_laurent(m0, &gamma.apply(&frame, m0, &s1));
    Ok(moved == t2.poly)
}

/// Checks `theta^{mu_k s}_{T_k(Q), T_k(m0)} = T_{k,±}(theta^s_{Q,m0})`
/// against the diagram produced by `mutate_diagram`. Terms are compared up
/// to degree `order` in the grading of `d`.
pub fn theta_mutation_invariance(d: &Diagram, k: usize, m0: &[i64], basepoint: &[Q], order: u32) -> Result<bool> {
    let fd = &d.fd;
    let s = &d.seed;
    let frame = d.frame();
    let ck = s.e_covector(fd, k);
    let vk = s.v(fd, k);
    let side = dot_iq(&ck, basepoint);
    if side.is_zero() {
        return Err(Error::Degenerate("basepoint on the mutation hyperplane".into()));
    }
    let lin = |m: &[i64]| -> Vec<i64> {
        if side.is_positive() {
            let t = dot_i(&ck, m);
            m.iter().zip(&vk).map(|(a, b)| a + t * b).collect()
        } else {
            m.to_vec()
        }
    };
    let unlin = |m: &[i64]| -> Vec<i64> {
        if side.is_positive() {
            let t = dot_i(&ck, m);
            m.iter().zip(&vk).map(|(a, b)| a - t * b).collect()
        } else {
            m.to_vec()
        }
    };
    let left = theta_function(d, m0, basepoint, order)?;
    let mut moved = Laurent::zero();
    for (e, c) in &left.poly.terms {
        moved.add_term(lin(e), c.clone());
    }
    let dm = mutate_diagram(d, k)?;
    let qm = tropical_mutation(fd, s, k, basepoint);
    let m0q: Vec<Q> = m0.iter().map(|&x| q(x)).collect();
    let m0m: Vec<i64> = tropical_mutation(fd, s, k, &m0q).iter().map(|x| to_i64(x).expect("exponent out of range")).collect();
    let spread = fd.unfrozen().iter().map(|&i| s.eps_int(fd, i, k).abs()).max().unwrap_or(0);
    let budget = order as i64 * (1 + spread) + dot_i(&ck, m0).abs();
    let right = theta_function(&dm, &m0m, &qm, budget as u32)?;
    let mut kept = Laurent::zero();
    for (e, c) in &right.poly.terms {
        let pre = unlin(e);
        let diff: Vec<i64> = pre.iter().zip(m0).map(|(a, b)| a - b).collect();
        match frame.mono_of_m(&diff) {
            Some(mm) if mono_deg(&mm) > order => {}
            _ => kept.add_term(e.clone(), c.clone()),
        }
    }
    Ok(kept == moved)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Stable,
    Growing,
}

/// Whether broken lines of degree exactly `order` exist for `m0` at `q`.
pub fn is_polynomial_up_to_order(d: &Diagram, m0: &[i64], basepoint: &[Q], order: u32) -> Result<Verdict> {
    if order == 0 || m0.iter().all(|&x| x == 0) {
        return Ok(Verdict::Stable);
    }
    let hi = broken_lines(d, m0, basepoint, order)?.len();
    let lo = broken_lines(d, m0, basepoint, order - 1)?.len();
    Ok(if hi == lo { Verdict::Stable } else { Verdict::Growing })
}
