//! Order-by-order construction: find the joints of the current diagram, take
//! the loop automorphism around each, and add walls cancelling its leading
//! logarithm.

use super::diagram::{Diagram, Wall, EXACT};
use crate::cone_geom::cone::canonical_rows;
use crate::cone_geom::{cmp_angle, crossing_sign, refine, Cone, Quotient, P2};
use crate::error::{Error, Result};
use crate::lattice_seed::{check_injectivity, FixedData, Seed};
use crate::poly_ring::{log_leading, Crossing, Frame, RingAutomorphism};
use crate::rational::{dot_i, dot_iq, gcd_all, q, Q};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeSet;
use std::hash::{Hash, Hasher};

/// Attempts at drawing a generic point before giving up.
pub const MAX_ATTEMPTS: usize = 64;

/// A cell of a codimension two cone along which walls meet, together with
/// the walls whose supports contain it.
#[derive(Clone, Debug)]
pub struct JointCell {
    pub quotient: Quotient,
    pub cell: Cone,
    pub walls: Vec<usize>,
}

impl JointCell {
    /// Whether every wall through the cell has `p1^*(normal)` in the cell's span.
    pub fn is_parallel(&self, d: &Diagram) -> bool {
        self.walls.iter().all(|&i| {
            let p = d.fd.pstar(&d.walls[i].normal);
            self.quotient.h.iter().all(|h| dot_i(h, &p) == 0)
        })
    }
}

/// A wall's local picture near a point of a joint cell.
#[derive(Clone, Debug)]
pub struct Germ {
    pub wall: usize,
    pub ray: P2,
    /// quotient coordinates of the wall's covector
    pub a: P2,
}

fn in_span(span: &[Vec<i64>], v: &[i64], dim: usize) -> bool {
    let mut rows = span.to_vec();
    rows.push(v.to_vec());
    canonical_rows(&rows, dim).len() == span.len()
}

/// All joint cells of the diagram.
pub fn joint_cells(d: &Diagram) -> Vec<JointCell> {
    let r = d.rank();
    if r < 2 {
        return vec![];
    }
    let hyps = d.hyperplanes();
    let mut spans: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
    for i in 0..hyps.len() {
        for j in i + 1..hyps.len() {
            spans.insert(canonical_rows(&[hyps[i].clone(), hyps[j].clone()], r));
        }
    }
    for w in &d.walls {
        for b in &w.support.ineqs {
            spans.insert(canonical_rows(&[w.cov.clone(), b.clone()], r));
        }
    }
    let spans: Vec<Vec<Vec<i64>>> = spans.into_iter().filter(|s| s.len() == 2).collect();
    spans.par_iter().flat_map_iter(|span| cells_in_span(d, span)).collect()
}

fn cells_in_span(d: &Diagram, span: &[Vec<i64>]) -> Vec<JointCell> {
    let r = d.rank();
    let h = Cone::new(r, span.to_vec(), vec![]);
    let mut pieces = Vec::new();
    for (i, w) in d.walls.iter().enumerate() {
        if !in_span(span, &w.cov, r) {
            continue;
        }
        let p = w.support.intersect(&h);
        if p.dimension() + 2 == r {
            pieces.push((i, p));
        }
    }
    if pieces.is_empty() {
        return vec![];
    }
    let mut cuts: Vec<Vec<i64>> = pieces.iter().flat_map(|(_, p)| p.ineqs.iter().cloned()).collect();
    cuts.sort();
    cuts.dedup();
    let mut cells = BTreeSet::new();
    for (_, p) in &pieces {
        for c in refine(p, &cuts) {
            cells.insert(c);
        }
    }
    let quotient = Quotient::new(span[0].clone(), span[1].clone());
    cells
        .into_iter()
        .map(|cell| {
            let x = cell.point().to_vec();
            let walls = pieces.iter().filter(|(_, p)| p.contains(&x)).map(|(i, _)| *i).collect();
            JointCell { quotient: quotient.clone(), cell, walls }
        })
        .collect()
}

/// Germs of the walls at `x` in the cell, or `None` if `x` is not generic.
pub fn germs_at(d: &Diagram, jc: &JointCell, x: &[Q], max_degree: i64) -> Option<Vec<Germ>> {
    let r = d.rank();
    let span: Vec<Vec<i64>> = jc.quotient.h.to_vec();
    let mut out = Vec::new();
    for (i, w) in d.walls.iter().enumerate() {
        if !w.support.contains(x) {
            continue;
        }
        if !jc.walls.contains(&i) {
            return None;
        }
        if d.degree(&w.normal) > max_degree {
            continue;
        }
        let a = jc.quotient.coords(&w.cov)?;
        let tight = w.support.tight(x);
        match tight.len() {
            0 => {
                let dir = [-a[1].clone(), a[0].clone()];
                let neg = [-dir[0].clone(), -dir[1].clone()];
                out.push(Germ { wall: i, ray: dir, a: a.clone() });
                out.push(Germ { wall: i, ray: neg, a });
            }
            1 if in_span(&span, &w.support.ineqs[tight[0]], r) => {
                let ray = jc.quotient.project(w.support.point());
                out.push(Germ { wall: i, ray, a });
            }
            _ => return None,
        }
    }
    out.sort_by(|g, h| cmp_angle(&g.ray, &h.ray));
    Some(out)
}

fn cell_rng(salt: u64, cell: &Cone) -> ChaCha8Rng {
    let mut h = DefaultHasher::new();
    salt.hash(&mut h);
    cell.hash(&mut h);
    ChaCha8Rng::seed_from_u64(h.finish())
}

/// A generic point of the cell and the germs there.
pub fn generic_germs(d: &Diagram, jc: &JointCell, max_degree: i64, salt: u64) -> Result<(Vec<Q>, Vec<Germ>)> {
    let mut rng = cell_rng(salt, &jc.cell);
    for _ in 0..MAX_ATTEMPTS {
        let x = jc.cell.random_point(&mut rng);
        if let Some(g) = germs_at(d, jc, &x, max_degree) {
            return Ok((x, g));
        }
    }
    Err(Error::GenericityExhausted(MAX_ATTEMPTS))
}

/// The counterclockwise loop automorphism around a joint cell, modulo
/// degree `order + 1`.
pub fn loop_automorphism(d: &Diagram, frame: &Frame, germs: &[Germ], order: u32) -> RingAutomorphism {
    let mut theta = RingAutomorphism::identity(frame, order);
    for g in germs {
        let w = &d.walls[g.wall];
        let s = crossing_sign(&g.a, &g.ray);
        theta = theta.then(frame, &Crossing::new(frame, &w.function(), s, order));
    }
    theta
}

/// Walls of degree `order` cancelling the loop around one joint cell.
fn walls_for_cell(d: &Diagram, frame: &Frame, jc: &JointCell, order: u32, target: u32) -> Result<Vec<Wall>> {
    let r = d.rank();
    let (_, germs) = generic_germs(d, jc, order as i64, order as u64)?;
    if germs.is_empty() {
        return Ok(vec![]);
    }
    let theta = loop_automorphism(d, frame, &germs, order);
    let terms = log_leading(frame, &theta, order)?;
    let mut out = Vec::new();
    for (n, c) in terms {
        let p = d.fd.pstar(&n);
        if p.iter().all(|&x| x == 0) {
            return Err(Error::NotInjective);
        }
        let hp: Vec<i64> = jc.quotient.h.iter().map(|h| dot_i(h, &p)).collect();
        if hp.iter().all(|&x| x == 0) {
            // parallel joint: nothing to add
            continue;
        }
        let g = gcd_all(&n);
        let n0: Vec<i64> = n.iter().map(|x| x / g).collect();
        let ell = g as usize;
        let cov = d.fd.n_covector(&n0);
        let a =
            jc.quotient.coords(&cov).ok_or_else(|| Error::Degenerate("loop term normal does not vanish on the joint".into()))?;
        let pq: Vec<Q> = p.iter().map(|&x| q(x)).collect();
        let pi = jc.quotient.project(&pq);
        let ray = [-pi[0].clone(), -pi[1].clone()];
        let sign = crossing_sign(&a, &ray);
        let delta = d.fd.n_scale(&n0);
        let coeff = -q(sign) * &c * q(g) / delta;
        // sweep the cell backwards along p
        let k = if hp[0] != 0 { 0 } else { 1 };
        let h = &jc.quotient.h[k];
        let hpk = hp[k];
        let sg = hpk.signum();
        let mut ineqs: Vec<Vec<i64>> = jc
            .cell
            .ineqs
            .iter()
            .map(|b| {
                let bp = dot_i(b, &p);
                b.iter().zip(h).map(|(bi, hi)| sg * (hpk * bi - bp * hi)).collect()
            })
            .collect();
        ineqs.push(h.iter().map(|x| -sg * x).collect());
        let support = Cone::new(r, vec![cov.clone()], ineqs);
        debug_assert_eq!(support.dimension() + 1, r);
        let mut coeffs = vec![Q::zero(); ell];
        coeffs[ell - 1] = coeff;
        let deg = d.degree(&n0).max(1) as u32;
        out.push(Wall { normal: n0, cov, support, coeffs, trust: target / deg });
    }
    Ok(out)
}

/// The diagram with only the incoming walls `(e_i^perp, 1 + z^{v_i})`.
pub fn initial_diagram(fd: &FixedData, seed: &Seed) -> Diagram {
    let r = fd.rank();
    let walls = fd
        .unfrozen()
        .into_iter()
        .map(|i| {
            let normal = seed.e(i).to_vec();
            let cov = fd.n_covector(&normal);
            Wall { support: Cone::hyperplane(r, &cov), normal, cov, coeffs: vec![Q::from_integer(1.into())], trust: EXACT }
        })
        .collect();
    let mut d = Diagram { fd: fd.clone(), seed: seed.clone(), order: 1, walls, shears: vec![] };
    d.sort_walls();
    d
}

/// The consistent scattering diagram modulo degree `order + 1`.
pub fn scatter(fd: &FixedData, seed: &Seed, order: u32) -> Result<Diagram> {
    if !check_injectivity(fd, seed) {
        return Err(Error::NotInjective);
    }
    let mut d = initial_diagram(fd, seed);
    extend(&mut d, order)?;
    Ok(d)
}

/// Raises the order of a diagram built by [`scatter`].
pub fn extend(d: &mut Diagram, order: u32) -> Result<()> {
    if !d.shears.is_empty() {
        return Err(Error::Invalid("cannot extend a mutated diagram".into()));
    }
    let frame = d.frame();
    for w in &mut d.walls {
        if w.trust != EXACT {
            let deg = frame.degree(&w.normal);
            w.trust = crate::rational::to_i64(&(q(order as i64) / deg).floor()).unwrap() as u32;
        }
    }
    for k in d.order + 1..=order {
        let cells = joint_cells(d);
        let found: Vec<Result<Vec<Wall>>> = cells.par_iter().map(|jc| walls_for_cell(d, &frame, jc, k, order)).collect();
        for f in found {
            d.walls.extend(f?);
        }
        d.merge();
        d.order = k;
    }
    d.order = d.order.max(order);
    Ok(())
}

/// Whether `x` lies in the support of some wall of degree at most `order`.
pub fn on_walls(d: &Diagram, x: &[Q]) -> bool {
    d.walls.iter().any(|w| dot_iq(&w.cov, x).is_zero() && w.support.contains(x))
}

/// Whether `x` avoids every wall hyperplane.
pub fn off_hyperplanes(d: &Diagram, x: &[Q]) -> bool {
    d.walls.iter().all(|w| !dot_iq(&w.cov, x).is_zero())
}
