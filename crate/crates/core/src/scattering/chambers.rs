//! Cluster chambers `T_v^{-1}(C^{±}_{s_v})` obtained by pulling the orthant
//! chambers of mutated seeds back through the linear branches of `T_k`.

use crate::cone_geom::Cone;
use crate::error::{Error, Result};
use crate::lattice_seed::{tropical_mutation_inv, FixedData, Seed};
use crate::rational::{dot_i, dot_iq, Q};
use num_traits::Signed;
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chamber {
    pub cone: Cone,
    /// mutation path from the initial seed
    pub path: Vec<usize>,
    /// `+1` for `C^+`, `-1` for `C^-`
    pub sign: i64,
}

/// Seeds along `path` starting at `s0`, including both ends.
pub fn seeds_along(fd: &FixedData, s0: &Seed, path: &[usize]) -> Result<Vec<Seed>> {
    let mut out = vec![s0.clone()];
    for &k in path {
        let next = out.last().unwrap().mutate(fd, k)?;
        out.push(next);
    }
    Ok(out)
}

/// `{x : sign <e_i, x> >= 0}` for the unfrozen `e_i` of `s`.
pub fn orthant(fd: &FixedData, s: &Seed, sign: i64) -> Cone {
    let ineqs = fd.unfrozen().into_iter().map(|i| s.e_covector(fd, i).iter().map(|x| sign * x).collect()).collect();
    Cone::new(fd.rank(), vec![], ineqs)
}

/// The cluster chamber of the seed reached from `s0` by `path`.
pub fn chamber(fd: &FixedData, s0: &Seed, path: &[usize], sign: i64) -> Result<Cone> {
    let seeds = seeds_along(fd, s0, path)?;
    let r = fd.rank();
    let mut cone = orthant(fd, seeds.last().unwrap(), sign);
    for j in (0..path.len()).rev() {
        let k = path[j];
        let s = &seeds[j];
        let ck = s.e_covector(fd, k);
        let vk = s.v(fd, k);
        let t = dot_iq(&ck, cone.point());
        if t.is_positive() {
            let pulled = cone.pullback(r, |a| {
                let av = dot_i(a, &vk);
                a.iter().zip(&ck).map(|(x, c)| x + av * c).collect()
            });
            cone = pulled.with_ineq(&ck);
        } else if t.is_negative() {
            cone = cone.with_ineq(&ck.iter().map(|x| -x).collect::<Vec<_>>());
        } else {
            return Err(Error::Degenerate("chamber straddles a mutation hyperplane".into()));
        }
    }
    Ok(cone)
}

/// All chambers for mutation paths of length at most `depth` (no immediate
/// repetitions), deduplicated by cone.
pub fn cluster_chambers(fd: &FixedData, s0: &Seed, depth: usize, sign: i64) -> Result<Vec<Chamber>> {
    let uf = fd.unfrozen();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<usize>> = vec![vec![]];
    for level in 0..=depth {
        let mut next = Vec::new();
        for path in frontier {
            let cone = chamber(fd, s0, &path, sign)?;
            if seen.insert(cone.clone()) {
                out.push(Chamber { cone, path: path.clone(), sign });
            }
            if level < depth {
                for &k in &uf {
                    if path.last() != Some(&k) {
                        let mut p = path.clone();
                        p.push(k);
                        next.push(p);
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(out)
}

/// The chamber whose interior contains `x`.
pub fn lookup<'a>(chambers: &'a [Chamber], x: &[Q]) -> Option<&'a Chamber> {
    chambers.iter().find(|c| c.cone.in_relint(x))
}

/// `T_v^{-1}(m)`: transports a point of the far seed's frame back to the initial one.
pub fn transport_back(fd: &FixedData, s0: &Seed, path: &[usize], m: &[Q]) -> Result<Vec<Q>> {
    let seeds = seeds_along(fd, s0, path)?;
    let mut x = m.to_vec();
    for j in (0..path.len()).rev() {
        x = tropical_mutation_inv(fd, &seeds[j], path[j], &x);
    }
    Ok(x)
}
