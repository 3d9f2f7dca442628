//! The mutated diagram `T_k(D)` and a region-by-region equivalence test.

use super::diagram::{Diagram, Shear, Wall, EXACT};
use crate::cone_geom::{refine, Cone};
use crate::error::{Error, Result};
use crate::poly_ring::Uni;
use crate::rational::{dot_i, to_i64, Q};
use num_traits::One;
use rand::Rng;
use std::collections::BTreeSet;

/// `T_k(D)`: walls are cut along `e_k^perp`, the pieces on the positive side
/// are transported by the linear branch of `T_k`, and the wall
/// `(e_k^perp, 1 + z^{-v_k})` replaces `(e_k^perp, 1 + z^{v_k})`.
pub fn mutate_diagram(d: &Diagram, k: usize) -> Result<Diagram> {
    let fd = &d.fd;
    let r = d.rank();
    if k >= r || fd.frozen[k] {
        return Err(Error::FrozenIndex(k));
    }
    let s = &d.seed;
    let ek = s.e(k).to_vec();
    let ck = s.e_covector(fd, k);
    let vk = s.v(fd, k);
    let dk = fd.d[k];
    let neg_ck: Vec<i64> = ck.iter().map(|x| -x).collect();
    let mut walls = Vec::new();
    for w in &d.walls {
        if w.normal == ek {
            if w.coeffs != vec![Q::one()] {
                return Err(Error::Degenerate("unexpected wall function on the mutation hyperplane".into()));
            }
            continue;
        }
        let minus = w.support.with_ineq(&neg_ck);
        if minus.dimension() + 1 == r {
            walls.push(Wall { support: minus, ..w.clone() });
        }
        let plus = w.support.with_ineq(&ck);
        if plus.dimension() + 1 == r {
            let push = |a: &[i64]| -> Vec<i64> {
                let av = dot_i(a, &vk);
                a.iter().zip(&ck).map(|(x, c)| x - av * c).collect()
            };
            let support = plus.pullback(r, push);
            let b = to_i64(&(fd.form(&w.normal, &ek) * Q::from_integer(dk.into()))).expect("non-integral form value");
            let normal: Vec<i64> = w.normal.iter().zip(&ek).map(|(a, e)| a + b * e).collect();
            let cov = fd.n_covector(&normal);
            debug_assert!(support.eqs.len() == 1);
            walls.push(Wall { normal, cov, support, coeffs: w.coeffs.clone(), trust: w.trust });
        }
    }
    let normal: Vec<i64> = ek.iter().map(|x| -x).collect();
    let cov = fd.n_covector(&normal);
    walls.push(Wall { support: Cone::hyperplane(r, &cov), normal, cov, coeffs: vec![Q::one()], trust: EXACT });
    let mut shears = d.shears.clone();
    shears.push(Shear { k, seed: s.clone() });
    let mut out = Diagram { fd: fd.clone(), seed: s.mutate(fd, k)?, order: d.order, walls, shears };
    out.merge();
    Ok(out)
}

/// A point where two diagrams disagree.
#[derive(Clone, Debug)]
pub struct Mismatch {
    pub cov: Vec<i64>,
    pub point: Vec<Q>,
    pub left: Vec<Q>,
    pub right: Vec<Q>,
}

/// Compares `g_x` along every wall hyperplane of either diagram, one generic
/// point per region cut out by wall boundaries, up to the coefficients both
/// diagrams determine. Diagrams built in the same seed without mutation are
/// also compared by path-ordered products along `trials` random segments.
pub fn equivalent<R: Rng>(d1: &Diagram, d2: &Diagram, trials: usize, rng: &mut R) -> Result<Option<Mismatch>> {
    let r = d1.rank();
    let mut covs: BTreeSet<Vec<i64>> = d1.hyperplanes().into_iter().collect();
    covs.extend(d2.hyperplanes());
    for cov in covs {
        let on: Vec<&Wall> = d1.walls.iter().chain(&d2.walls).filter(|w| w.cov == cov).collect();
        let normal = on[0].normal.clone();
        let mut cuts: Vec<Vec<i64>> = on.iter().flat_map(|w| w.support.ineqs.iter().cloned()).collect();
        cuts.sort();
        cuts.dedup();
        for cell in refine(&Cone::hyperplane(r, &cov), &cuts) {
            let x = cell.random_point(rng);
            let t1 = d1.trust_at(&normal, &x);
            let t2 = d2.trust_at(&normal, &x);
            let len = (t1.min(t2).min(d1.order.max(d2.order)) as usize) + 1;
            let f1: Uni = d1.function_at(&cov, &x, len);
            let f2: Uni = d2.function_at(&cov, &x, len);
            if f1 != f2 {
                return Ok(Some(Mismatch { cov, point: x, left: f1.c, right: f2.c }));
            }
        }
    }
    if d1.shears.is_empty() && d2.shears.is_empty() && d1.seed == d2.seed {
        let frame = d1.frame();
        let order = d1.order.min(d2.order);
        let mut done = 0;
        let mut tries = 0;
        while done < trials && tries < 20 * trials + 20 {
            tries += 1;
            let p: Vec<Q> = (0..r).map(|_| Q::new(rng.gen_range(-50..=50).into(), rng.gen_range(1..=7).into())).collect();
            let q: Vec<Q> = (0..r).map(|_| Q::new(rng.gen_range(-50..=50).into(), rng.gen_range(1..=7).into())).collect();
            let path = vec![p, q];
            let a = super::product::path_ordered_product(d1, &frame, &path, order);
            let b = super::product::path_ordered_product(d2, &frame, &path, order);
            match (a, b) {
                (Ok(a), Ok(b)) => {
                    done += 1;
                    if let Some((j, _, _)) = a.first_difference(&b) {
                        return Ok(Some(Mismatch { cov: vec![j as i64], point: path[0].clone(), left: vec![], right: vec![] }));
                    }
                }
                (Err(Error::Degenerate(_)), _) | (_, Err(Error::Degenerate(_))) => continue,
                (Err(e), _) | (_, Err(e)) => return Err(e),
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice_seed::{principal_extension, FixedData, Seed};
    use crate::linalg::to_qmat;
    use crate::rational::q;
    use crate::scattering::scatter;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn a2_mutation_matches_direct_construction() {
        let fd = FixedData::skew_symmetric(&[vec![0, 1], vec![-1, 0]], &[]).unwrap();
        let s = Seed::identity(2);
        let d = scatter(&fd, &s, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for k in 0..2 {
            let t = mutate_diagram(&d, k).unwrap();
            let direct = scatter(&fd, &s.mutate(&fd, k).unwrap(), 5).unwrap();
            assert!(equivalent(&t, &direct, 5, &mut rng).unwrap().is_none());
        }
        assert!(equivalent(&d, &d, 5, &mut rng).unwrap().is_none());
        let mut bad = d.clone();
        bad.walls[0].coeffs = vec![q(2)];
        assert!(equivalent(&d, &bad, 5, &mut rng).unwrap().is_some());
    }

    #[test]
    fn kronecker_and_principal_a3_mutations() {
        let kr = FixedData::new(to_qmat(&[vec![0, 2], vec![-2, 0]]), vec![1, 1], &[]).unwrap();
        let a3 = FixedData::skew_symmetric(&[vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]], &[]).unwrap();
        let (pa3, ps) = principal_extension(&a3, &Seed::identity(3));
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for (fd, s, uf) in [(kr, Seed::identity(2), 2), (pa3, ps, 3)] {
            let d = scatter(&fd, &s, 5).unwrap();
            for k in 0..uf {
                let t = mutate_diagram(&d, k).unwrap();
                let direct = scatter(&fd, &s.mutate(&fd, k).unwrap(), 5).unwrap();
                let m = equivalent(&t, &direct, 5, &mut rng).unwrap();
                assert!(m.is_none(), "k={k}: {m:?}");
                // mutating twice lands on the diagram of the twice-mutated seed
                let back = mutate_diagram(&t, k).unwrap();
                let s2 = s.mutate(&fd, k).unwrap().mutate(&fd, k).unwrap();
                let m = equivalent(&back, &scatter(&fd, &s2, 5).unwrap(), 0, &mut rng).unwrap();
                assert!(m.is_none(), "back k={k}: {m:?}");
            }
        }
    }
}
