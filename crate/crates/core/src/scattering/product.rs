//! Path-ordered products along polygonal paths and consistency checks.

use super::construct::{generic_germs, joint_cells, loop_automorphism};
use super::diagram::Diagram;
use crate::cone_geom::{segment_hit, Hit};
use crate::error::{Error, Result};
use crate::linalg::solve;
use crate::poly_ring::{Crossing, Frame, RingAutomorphism};
use crate::rational::{q, Q};
use rand::Rng;

/// The crossings of the segment `p -> q`, in order: `(t, wall, sign)`.
pub fn segment_crossings(d: &Diagram, p: &[Q], q: &[Q], max_degree: i64) -> Result<Vec<(Q, usize, i64)>> {
    let mut hits = Vec::new();
    for (i, w) in d.walls.iter().enumerate() {
        if d.degree(&w.normal) > max_degree {
            continue;
        }
        match segment_hit(&w.support, &w.cov, p, q) {
            Hit::Miss => {}
            Hit::Cross(t, s) => hits.push((t, i, s)),
            Hit::Singular => return Err(Error::Degenerate("path meets a wall non-generically".into())),
        }
    }
    hits.sort_by(|a, b| a.0.cmp(&b.0));
    for pair in hits.windows(2) {
        if pair[0].0 == pair[1].0 && d.walls[pair[0].1].cov != d.walls[pair[1].1].cov {
            return Err(Error::Degenerate("path passes through a joint".into()));
        }
    }
    Ok(hits)
}

/// `theta_{gamma}` for the polygonal path through `points`, modulo degree `order + 1`.
pub fn path_ordered_product(d: &Diagram, frame: &Frame, points: &[Vec<Q>], order: u32) -> Result<RingAutomorphism> {
    let mut theta = RingAutomorphism::identity(frame, order);
    for seg in points.windows(2) {
        for (_, i, s) in segment_crossings(d, &seg[0], &seg[1], order as i64)? {
            theta = theta.then(frame, &Crossing::new(frame, &d.walls[i].function(), s, order));
        }
    }
    Ok(theta)
}

/// Outcome of a consistency check.
#[derive(Clone, Debug, Default)]
pub struct ConsistencyReport {
    pub joints: usize,
    pub loops: usize,
    pub failures: Vec<String>,
}

impl ConsistencyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn random_point<R: Rng>(r: usize, rng: &mut R) -> Vec<Q> {
    (0..r).map(|_| q(rng.gen_range(-60..=60)) / q(rng.gen_range(1..=7))).collect()
}

/// Checks that loops around joints (by germs and by explicit small squares)
/// and random closed triangles all give the identity modulo degree `order + 1`.
pub fn check_consistency<R: Rng>(d: &Diagram, order: u32, triangles: usize, rng: &mut R) -> Result<ConsistencyReport> {
    let frame = d.frame();
    let r = d.rank();
    let mut rep = ConsistencyReport::default();
    for jc in joint_cells(d) {
        rep.joints += 1;
        let (x, germs) = generic_germs(d, &jc, order as i64, 0xC0FFEE)?;
        let theta = loop_automorphism(d, &frame, &germs, order);
        if !theta.is_identity() {
            rep.failures.push(format!("loop around joint cell {:?} is not trivial", jc.cell.eqs));
            continue;
        }
        // explicit square around x
        let h = &jc.quotient.h;
        let rows: Vec<Vec<Q>> = h.iter().map(|v| v.iter().map(|&a| q(a)).collect()).collect();
        let w1 = solve(&rows, &[q(1), q(0)], r).ok_or_else(|| Error::Degenerate("joint span".into()))?;
        let w2 = solve(&rows, &[q(0), q(1)], r).ok_or_else(|| Error::Degenerate("joint span".into()))?;
        let mut rho = q(1);
        let mut done = false;
        for attempt in 0..60 {
            // a slightly irregular quadrilateral so corners avoid rational walls
            let jit: Vec<Q> = (0..8).map(|_| q(rng.gen_range(-99..=99)) / q(400)).collect();
            let corner = |a: i64, b: i64, k: usize| -> Vec<Q> {
                let ca = q(a) + &jit[2 * k];
                let cb = q(b) + &jit[2 * k + 1];
                (0..r).map(|i| &x[i] + &rho * (&ca * &w1[i] + &cb * &w2[i])).collect()
            };
            let c0 = corner(1, 1, 0);
            let path = vec![c0.clone(), corner(-1, 1, 1), corner(-1, -1, 2), corner(1, -1, 3), c0];
            let mut crossed_all_contain_x = true;
            let mut generic = true;
            for seg in path.windows(2) {
                match segment_crossings(d, &seg[0], &seg[1], order as i64) {
                    Ok(hits) => {
                        for (_, i, _) in hits {
                            if !d.walls[i].support.contains(&x) {
                                crossed_all_contain_x = false;
                            }
                        }
                    }
                    Err(_) => generic = false,
                }
            }
            if generic && crossed_all_contain_x {
                rep.loops += 1;
                let th = path_ordered_product(d, &frame, &path, order)?;
                if !th.is_identity() {
                    rep.failures.push(format!("square loop at {:?} is not trivial", x));
                }
                done = true;
                break;
            }
            if attempt % 3 == 2 {
                rho /= q(2);
            }
        }
        if !done {
            rep.failures.push("could not isolate a joint cell by a square loop".into());
        }
    }
    let mut made = 0;
    let mut tries = 0;
    while made < triangles && tries < 20 * triangles + 20 {
        tries += 1;
        let a = random_point(r, rng);
        let b = random_point(r, rng);
        let c = random_point(r, rng);
        match path_ordered_product(d, &frame, &[a.clone(), b, c, a], order) {
            Ok(th) => {
                made += 1;
                rep.loops += 1;
                if !th.is_identity() {
                    rep.failures.push("closed triangle has nontrivial product".into());
                }
            }
            Err(Error::Degenerate(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(rep)
}
