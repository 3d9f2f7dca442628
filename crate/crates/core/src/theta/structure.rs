//! Structure constants of theta products and expansion in the theta basis.

use super::function::{theta_function, truncate_over};
use crate::error::{Error, Result};
use crate::linalg::solve;
use crate::poly_ring::series::{mono_deg, monomials_up_to, Mono};
use crate::poly_ring::{Frame, Laurent};
use crate::rational::{dot_iq, fmt_q, q, to_i64, Q};
use crate::scattering::construct::{off_hyperplanes, MAX_ATTEMPTS};
use crate::scattering::Diagram;
use num_traits::{Signed, Zero};
use rand::Rng;
use std::collections::BTreeMap;

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `alpha_z(p1, p2, q)`: the sum of `c(g1) c(g2)` over pairs of broken lines
/// ending at `z` with `F(g1) + F(g2) = q`.
pub fn alpha_at(d: &Diagram, p1: &[i64], p2: &[i64], target: &[i64], z: &[Q], order: u32) -> Result<Q> {
    let t1 = theta_function(d, p1, z, order)?.poly;
    let t2 = theta_function(d, p2, z, order)?.poly;
    let mut s = Q::zero();
    for (f1, c1) in &t1.terms {
        let c2 = t2.coeff(&sub(target, f1));
        if !c2.is_zero() {
            s += c1 * c2;
        }
    }
    Ok(s)
}

/// Largest l1 norm among all covectors describing walls, used to keep the
/// sample point `z(q)` away from walls that miss `q`.
fn wall_scale(d: &Diagram) -> i64 {
    let l1 = |r: &[i64]| r.iter().map(|x| x.abs()).sum::<i64>();
    d.walls
        .iter()
        .flat_map(|w| std::iter::once(l1(&w.cov)).chain(w.support.eqs.iter().chain(&w.support.ineqs).map(|r| l1(r))))
        .max()
        .unwrap_or(1)
}

/// `alpha(p1, p2, q)` with `z(q)` sampled near `q` at two scales `delta` and
/// `delta / 2`; the two values must agree.
pub fn structure_constant<R: Rng>(d: &Diagram, p1: &[i64], p2: &[i64], target: &[i64], order: u32, rng: &mut R) -> Result<Q> {
    let frame = d.frame();
    let Some(n) = frame.mono_of_m(&sub(target, &add(p1, p2))) else {
        return Ok(Q::zero());
    };
    let deg = mono_deg(&n);
    if deg > order {
        return Err(Error::Invalid(format!("q - p1 - p2 has degree {deg} above {order}")));
    }
    let scale = wall_scale(d);
    let qq: Vec<Q> = target.iter().map(|&x| q(x)).collect();
    let mut last = None;
    for attempt in 0..MAX_ATTEMPTS {
        let w: Vec<i64> = (0..d.rank()).map(|_| rng.gen_range(-50..=50)).collect();
        let big = w.iter().map(|x| x.abs()).max().unwrap_or(0);
        if big == 0 {
            continue;
        }
        let delta = Q::new(1.into(), (1 + 2 * scale * big).into()) / q(1 << (attempt / 8));
        let at = |dl: &Q| -> Vec<Q> { qq.iter().zip(&w).map(|(a, b)| a + dl * q(*b)).collect() };
        let (z1, z2) = (at(&delta), at(&(&delta / q(2))));
        if !off_hyperplanes(d, &z1) || !off_hyperplanes(d, &z2) {
            continue;
        }
        let a1 = match alpha_at(d, p1, p2, target, &z1, deg) {
            Err(Error::Degenerate(_)) => continue,
            r => r?,
        };
        let a2 = match alpha_at(d, p1, p2, target, &z2, deg) {
            Err(Error::Degenerate(_)) => continue,
            r => r?,
        };
        if a1 == a2 {
            return Ok(a1);
        }
        last = Some((a1, a2));
    }
    match last {
        Some((a, b)) => Err(Error::NotStable(fmt_q(&a), fmt_q(&b))),
        None => Err(Error::GenericityExhausted(MAX_ATTEMPTS)),
    }
}

/// All nonzero `alpha(p1, p2, q)` with `q - p1 - p2` of degree at most `order`.
pub fn theta_product<R: Rng>(d: &Diagram, p1: &[i64], p2: &[i64], order: u32, rng: &mut R) -> Result<BTreeMap<Vec<i64>, Q>> {
    let frame = d.frame();
    let base = add(p1, p2);
    let mut out = BTreeMap::new();
    let mut cands: Vec<Mono> = vec![vec![0; frame.nvars()]];
    cands.extend(monomials_up_to(frame.nvars(), order));
    for c in cands {
        let target = add(&base, &frame.m_of(&c));
        let a = structure_constant(d, p1, p2, &target, order, rng)?;
        if !a.is_zero() {
            out.insert(target, a);
        }
    }
    Ok(out)
}

/// Checks `sum alpha(q) theta_{Q,q} = theta_{Q,p1} theta_{Q,p2}` up to
/// degree `order` over `z^{p1+p2}`.
pub fn product_identity(
    d: &Diagram,
    p1: &[i64],
    p2: &[i64],
    basepoint: &[Q],
    table: &BTreeMap<Vec<i64>, Q>,
    order: u32,
) -> Result<bool> {
    let frame = d.frame();
    let base = add(p1, p2);
    let rhs = theta_function(d, p1, basepoint, order)?.poly.mul(&theta_function(d, p2, basepoint, order)?.poly);
    let rhs = truncate_over(&frame, &base, &rhs, order);
    let mut lhs = Laurent::zero();
    for (target, a) in table {
        let Some(n) = frame.mono_of_m(&sub(target, &base)) else {
            return Ok(false);
        };
        let left = order - mono_deg(&n).min(order);
        lhs = lhs.add(&theta_function(d, target, basepoint, left)?.poly.scale(a));
    }
    Ok(truncate_over(&frame, &base, &lhs, order) == rhs)
}

/// A linear functional with `phi(v_i) = 1` for every unfrozen `i`, so that
/// `phi(m + p^*(n)) = phi(m) + d(n)`.
pub fn grading_functional(frame: &Frame) -> Result<Vec<Q>> {
    let a: Vec<Vec<Q>> = frame.v.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect();
    let b = vec![q(1); frame.nvars()];
    solve(&a, &b, frame.rank()).ok_or(Error::NotInjective)
}

/// Coefficients `alpha(q)` with `g = sum alpha(q) theta_{Q,q}` modulo terms
/// of degree above `order` over the lowest terms of `g`, by peeling off the
/// lowest remaining term.
pub fn expand_in_theta_basis(g: &Laurent, d: &Diagram, basepoint: &[Q], order: u32) -> Result<BTreeMap<Vec<i64>, Q>> {
    let phi = grading_functional(&d.frame())?;
    let h = |e: &[i64]| dot_iq(e, &phi);
    let mut out = BTreeMap::new();
    let Some(low) = g.terms.keys().map(|e| h(e)).min() else {
        return Ok(out);
    };
    let limit = low + q(order as i64);
    let mut rem = g.clone();
    loop {
        rem.terms.retain(|e, _| h(e) <= limit);
        let Some((e, c)) = rem.terms.iter().min_by(|a, b| h(a.0).cmp(&h(b.0)).then(a.0.cmp(b.0))) else {
            break;
        };
        let (e, c) = (e.clone(), c.clone());
        let budget = (&limit - h(&e)).floor();
        if budget.is_negative() {
            break;
        }
        let budget = to_i64(&budget).unwrap_or(i64::MAX).min(u32::MAX as i64) as u32;
        let th = theta_function(d, &e, basepoint, budget)?;
        rem = rem.sub(&th.poly.scale(&c));
        out.insert(e, c);
    }
    Ok(out)
}
