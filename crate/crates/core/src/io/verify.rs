//! Verification suites shared by the CLI and the acceptance harness.

use super::documents::CheckResult;
use crate::cone_geom::Cone;
use crate::error::{Error, Result};
use crate::lattice_seed::{c_vectors, is_sign_coherent, FixedData, Seed};
use crate::poly_ring::factor_binomial_powers;
use crate::rational::Q;
use crate::scattering::construct::extend;
use crate::scattering::{check_consistency, equivalent, mutate_diagram, scatter, Diagram, EXACT};
use crate::theta::{compare_theta_with_cluster_monomial, g_vector, generic_basepoint, theta_path_invariance};
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Consistency,
    Positivity,
    Mutation,
    Signs,
    ClusterTheta,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Consistency, Suite::Positivity, Suite::Mutation, Suite::Signs, Suite::ClusterTheta];

    pub fn parse(s: &str) -> Option<Vec<Suite>> {
        Some(match s {
            "consistency" => vec![Suite::Consistency],
            "positivity" => vec![Suite::Positivity],
            "mutation" => vec![Suite::Mutation],
            "signs" => vec![Suite::Signs],
            "cluster-theta" => vec![Suite::ClusterTheta],
            "all" => Suite::ALL.to_vec(),
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Consistency => "consistency",
            Suite::Positivity => "positivity",
            Suite::Mutation => "mutation",
            Suite::Signs => "signs",
            Suite::ClusterTheta => "cluster-theta",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub order: u32,
    pub rng_seed: u64,
    /// random closed loops on top of the per-joint loops
    pub loops: usize,
    /// basepoint pairs for theta transport
    pub pairs: usize,
    pub sign_paths: usize,
    pub sign_length: usize,
    /// mutation depth for the cluster-monomial comparison
    pub cluster_depth: usize,
    pub equivalence_trials: usize,
    pub timings: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            order: 5,
            rng_seed: 0,
            loops: 50,
            pairs: 20,
            sign_paths: 200,
            sign_length: 8,
            cluster_depth: 2,
            equivalence_trials: 20,
            timings: false,
        }
    }
}

/// What a suite runs on: the seed data as given, the data the diagram is
/// built from (possibly principal), and the diagram itself.
pub struct Target {
    pub base: FixedData,
    pub fd: FixedData,
    pub seed: Seed,
    pub diagram: Diagram,
}

impl Target {
    pub fn build(base: FixedData, fd: FixedData, seed: Seed, order: u32) -> Result<Self> {
        let diagram = scatter(&fd, &seed, order)?;
        Ok(Target { base, fd, seed, diagram })
    }
}

fn check(name: &str, pass: bool, detail: String, witnesses: Vec<String>) -> CheckResult {
    CheckResult { name: name.to_string(), pass, detail, witnesses, millis: None }
}

fn failed(name: &str, e: &Error) -> CheckResult {
    check(name, false, format!("error: {e}"), vec![])
}

pub fn run(t: &Target, suites: &[Suite], opts: &Options) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for (i, s) in suites.iter().enumerate() {
        let start = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(opts.rng_seed.wrapping_mul(31).wrapping_add(i as u64));
        let mut res = match s {
            Suite::Consistency => consistency(t, opts, &mut rng),
            Suite::Positivity => vec![positivity(&t.diagram)],
            Suite::Mutation => mutation(t, opts, &mut rng),
            Suite::Signs => vec![signs(&t.base, opts, &mut rng)],
            Suite::ClusterTheta => vec![cluster_theta(t, opts, &mut rng)],
        };
        if opts.timings {
            let ms = start.elapsed().as_millis() as u64;
            for r in &mut res {
                r.millis = Some(ms);
            }
        }
        out.extend(res);
    }
    out
}

pub fn consistency(t: &Target, opts: &Options, rng: &mut ChaCha8Rng) -> Vec<CheckResult> {
    let d = &t.diagram;
    let mut out = vec![match check_consistency(d, opts.order.min(d.order), opts.loops, rng) {
        Ok(rep) => check(
            "consistency",
            rep.ok(),
            format!("{} joints, {} loops", rep.joints, rep.loops),
            rep.failures.into_iter().take(5).collect(),
        ),
        Err(e) => failed("consistency", &e),
    }];
    out.push(theta_transport(d, opts.pairs, opts.order.min(d.order).min(4), rng));
    out
}

/// Random basepoint pairs satisfying the theta transport identity.
pub fn theta_transport(d: &Diagram, pairs: usize, order: u32, rng: &mut ChaCha8Rng) -> CheckResult {
    let r = d.rank();
    let full = Cone::full(r);
    let mut done = 0;
    let mut bad = Vec::new();
    let mut tries = 0;
    while done < pairs && tries < 10 * pairs + 10 {
        tries += 1;
        let m0: Vec<i64> = (0..r).map(|_| rng.gen_range(-2..=2)).collect();
        if m0.iter().all(|&x| x == 0) {
            continue;
        }
        let (Ok(x), Ok(y)) = (generic_basepoint(d, &full, rng), generic_basepoint(d, &full, rng)) else {
            continue;
        };
        match theta_path_invariance(d, &m0, &x, &y, order, rng) {
            Ok(true) => done += 1,
            Ok(false) => {
                done += 1;
                bad.push(format!("m0 {m0:?}"));
            }
            Err(Error::Degenerate(_)) => continue,
            Err(e) => return failed("theta-transport", &e),
        }
    }
    let pass = bad.is_empty() && done == pairs;
    check("theta-transport", pass, format!("{done} basepoint pairs at order {order}"), bad)
}

/// Every wall function is `prod (1 + t^l)^{c_l}` with nonnegative integer `c_l`
/// up to the reliable order.
pub fn positivity(d: &Diagram) -> CheckResult {
    let mut bad = Vec::new();
    for w in &d.walls {
        let reliable = reliable_len(w.trust, &w.coeffs);
        let fac = factor_binomial_powers(&w.uni(reliable + 1));
        if fac.iter().any(|(_, c)| !c.is_integer() || c.is_negative()) {
            bad.push(format!(
                "normal {:?}: exponents {:?}",
                w.normal,
                fac.iter().map(|(l, c)| (l, c.to_string())).collect::<Vec<_>>()
            ));
        }
    }
    check("positivity", bad.is_empty(), format!("{} walls", d.walls.len()), bad)
}

pub fn mutation(t: &Target, opts: &Options, rng: &mut ChaCha8Rng) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for k in t.fd.unfrozen() {
        let name = format!("mutation-{k}");
        let res = (|| -> Result<CheckResult> {
            let lhs = mutate_diagram(&t.diagram, k)?;
            let rhs = scatter(&t.fd, &t.seed.mutate(&t.fd, k)?, t.diagram.order)?;
            Ok(match equivalent(&lhs, &rhs, opts.equivalence_trials, rng)? {
                None => check(&name, true, format!("T_{k}(D) matches the mutated seed's diagram"), vec![]),
                Some(m) => check(&name, false, "diagrams differ".into(), vec![format!("{m:?}")]),
            })
        })();
        out.push(res.unwrap_or_else(|e| failed(&name, &e)));
    }
    out
}

/// A random mutation path without immediate repetitions.
pub fn random_path(fd: &FixedData, max_len: usize, rng: &mut impl Rng) -> Vec<usize> {
    let uf = fd.unfrozen();
    let len = rng.gen_range(1..=max_len.max(1));
    let mut p: Vec<usize> = Vec::with_capacity(len);
    while p.len() < len {
        let k = uf[rng.gen_range(0..uf.len())];
        if p.last() != Some(&k) {
            p.push(k);
        }
    }
    p
}

/// c-vectors and g-vector families along random mutation paths.
pub fn signs(fd: &FixedData, opts: &Options, rng: &mut ChaCha8Rng) -> CheckResult {
    let s0 = Seed::identity(fd.rank());
    let uf = fd.unfrozen();
    let mut bad = Vec::new();
    for _ in 0..opts.sign_paths {
        let path = random_path(fd, opts.sign_length, rng);
        let res = (|| -> Result<()> {
            let c = c_vectors(fd, &s0, &path)?;
            for &i in &uf {
                if !is_sign_coherent(&c[i]) {
                    bad.push(format!("path {path:?}: c-vector {:?}", c[i]));
                }
            }
            let gs = uf
                .iter()
                .map(|&i| {
                    let mut m = vec![0; fd.rank()];
                    m[i] = 1;
                    g_vector(fd, &s0, &path, &m)
                })
                .collect::<Result<Vec<_>>>()?;
            for &j in &uf {
                let col: Vec<i64> = gs.iter().map(|g| g[j]).collect();
                if !is_sign_coherent(&col) {
                    bad.push(format!("path {path:?}: g-vectors {gs:?} in coordinate {j}"));
                }
            }
            Ok(())
        })();
        if let Err(e) = res {
            return failed("signs", &e);
        }
    }
    check("signs", bad.is_empty(), format!("{} random paths of length <= {}", opts.sign_paths, opts.sign_length), bad)
}

/// All paths of length at most `depth` without immediate repetitions.
pub fn all_paths(fd: &FixedData, depth: usize) -> Vec<Vec<usize>> {
    let uf = fd.unfrozen();
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..depth {
        let mut next = Vec::new();
        for p in &frontier {
            for &k in &uf {
                if p.last() != Some(&k) {
                    let mut q: Vec<usize> = p.clone();
                    q.push(k);
                    next.push(q);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Theta functions at g-vectors against cluster monomials built from
/// exchange relations, for every seed within `cluster_depth` mutations.
pub fn cluster_theta(t: &Target, opts: &Options, rng: &mut ChaCha8Rng) -> CheckResult {
    match cluster_theta_at_depth(t, opts.cluster_depth, rng) {
        Ok(r) => r,
        Err(e) => failed("cluster-theta", &e),
    }
}

pub fn cluster_theta_at_depth(t: &Target, depth: usize, rng: &mut ChaCha8Rng) -> Result<CheckResult> {
    let fd = &t.fd;
    let uf = fd.unfrozen();
    let r = fd.rank();
    let mut monomials: Vec<Vec<i64>> = uf
        .iter()
        .map(|&i| {
            let mut m = vec![0; r];
            m[i] = 1;
            m
        })
        .collect();
    let mut all = vec![0; r];
    for &i in &uf {
        all[i] = 1;
    }
    monomials.push(all);
    let mut cases = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for path in all_paths(fd, depth) {
        for m in &monomials {
            let g = g_vector(fd, &t.seed, &path, m)?;
            if seen.insert(g) {
                cases.push((path.clone(), m.clone()));
            }
        }
    }
    // the order needed to see every cluster monomial in full
    let mut d = t.diagram.clone();
    let mut need = 0;
    for (path, m) in &cases {
        let c = compare_theta_with_cluster_monomial(&d, path, m, 0, rng)?;
        need = need.max(c.needed.ok_or_else(|| Error::Invalid("cluster monomial outside g + p^*(N^+)".into()))?);
    }
    if need > d.order {
        extend(&mut d, need)?;
    }
    let mut bad = Vec::new();
    for (path, m) in &cases {
        let c = compare_theta_with_cluster_monomial(&d, path, m, need, rng)?;
        if !c.equal() {
            bad.push(format!("path {path:?} monomial {m:?}: theta {} vs {}", c.theta, c.monomial));
        }
    }
    Ok(check(
        "cluster-theta",
        bad.is_empty(),
        format!("{} distinct g-vectors from paths of length <= {depth}, order {need}", cases.len()),
        bad,
    ))
}

pub fn all_pass(res: &[CheckResult]) -> bool {
    res.iter().all(|r| r.pass)
}

/// Number of wall coefficients that are reliable.
pub fn reliable_len(trust: u32, coeffs: &[Q]) -> usize {
    if trust == EXACT {
        coeffs.len()
    } else {
        (trust as usize).min(coeffs.len())
    }
}
