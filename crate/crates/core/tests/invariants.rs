//! Property tests for the invariants each module promises.

#![allow(clippy::needless_range_loop)]

use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;
use wallcross::cone_geom::{segment_hit, Cone, Hit};
use wallcross::io::{emit, DiagramDocument};
use wallcross::lattice_seed::{
    c_vectors, check_injectivity, is_sign_coherent, langlands_dual, principal_extension, tropical_mutation, tropical_mutation_inv,
};
use wallcross::poly_ring::{
    exp_derivation, expand_binomial_powers, factor_binomial_powers, log_leading, tropicalize, wall_automorphism, wall_crossing,
    Frame, Laurent, Uni, WallFunction,
};
use wallcross::rational::{qvec, Q};
use wallcross::scattering::chambers::chamber;
use wallcross::scattering::construct::on_walls;
use wallcross::scattering::{initial_diagram, scatter, segment_crossings, Diagram};
use wallcross::theta::function::truncate_over;
use wallcross::theta::{broken_lines, generic_basepoint, structure_constant, theta_function, theta_in};
use wallcross::{FixedData, Seed};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

/// Skew-symmetrizable data from an integer skew form and multipliers.
fn fixed_data() -> impl Strategy<Value = FixedData> {
    (2usize..=4)
        .prop_flat_map(|r| (prop::collection::vec(-2i64..=2, r * (r - 1) / 2), prop::collection::vec(1i64..=3, r)))
        .prop_filter_map("every vertex needs an arrow", |(upper, d)| {
            let r = d.len();
            let mut skew = vec![vec![Q::zero(); r]; r];
            let mut it = upper.into_iter();
            for i in 0..r {
                for j in i + 1..r {
                    let x = Q::from_integer(it.next().unwrap().into());
                    skew[j][i] = -x.clone();
                    skew[i][j] = x;
                }
            }
            FixedData::new(skew, d, &[]).ok()
        })
}

fn path(len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..4, 0..=len)
}

fn replay(fd: &FixedData, raw: &[usize]) -> Vec<usize> {
    raw.iter().map(|k| k % fd.rank()).collect()
}

fn a2() -> FixedData {
    FixedData::skew_symmetric(&[vec![0, 1], vec![-1, 0]], &[]).unwrap()
}

fn kronecker() -> FixedData {
    FixedData::skew_symmetric(&[vec![0, 2], vec![-2, 0]], &[]).unwrap()
}

fn a2_diagram() -> &'static Diagram {
    static D: OnceLock<Diagram> = OnceLock::new();
    D.get_or_init(|| scatter(&a2(), &Seed::identity(2), 6).unwrap())
}

fn kronecker_diagram() -> &'static Diagram {
    static D: OnceLock<Diagram> = OnceLock::new();
    D.get_or_init(|| scatter(&kronecker(), &Seed::identity(2), 6).unwrap())
}

fn a2_principal() -> &'static Diagram {
    static D: OnceLock<Diagram> = OnceLock::new();
    D.get_or_init(|| {
        let (fd, s) = principal_extension(&a2(), &Seed::identity(2));
        scatter(&fd, &s, 4).unwrap()
    })
}

fn qv(v: &[i64]) -> Vec<Q> {
    qvec(v)
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn mutation_is_an_involution_on_exchange_matrices(fd in fixed_data(), raw in path(5), k in 0usize..4) {
        let s = Seed::from_path(&fd, &replay(&fd, &raw)).unwrap();
        let k = k % fd.rank();
        let back = s.mutate(&fd, k).unwrap().mutate(&fd, k).unwrap();
        prop_assert_eq!(back.exchange_matrix(&fd), s.exchange_matrix(&fd));
    }

    #[test]
    fn c_vectors_are_sign_coherent(fd in fixed_data(), raw in path(8)) {
        for c in c_vectors(&fd, &Seed::identity(fd.rank()), &replay(&fd, &raw)).unwrap() {
            prop_assert!(is_sign_coherent(&c), "{:?}", c);
        }
    }

    #[test]
    fn tropical_mutation_is_a_bijection(fd in fixed_data(), raw in path(4), k in 0usize..4, x in prop::collection::vec(-20i64..=20, 4)) {
        let s = Seed::from_path(&fd, &replay(&fd, &raw)).unwrap();
        let k = k % fd.rank();
        let x = qv(&x[..fd.rank()]);
        prop_assert_eq!(tropical_mutation_inv(&fd, &s, k, &tropical_mutation(&fd, &s, k, &x)), x.clone());
        prop_assert_eq!(tropical_mutation(&fd, &s, k, &tropical_mutation_inv(&fd, &s, k, &x)), x);
    }

    #[test]
    fn principal_data_is_injective(fd in fixed_data(), raw in path(4)) {
        let s = Seed::from_path(&fd, &replay(&fd, &raw)).unwrap();
        let (p, ps) = principal_extension(&fd, &s);
        prop_assert!(check_injectivity(&p, &ps));
    }

    #[test]
    fn langlands_double_dual(fd in fixed_data()) {
        let s = Seed::identity(fd.rank());
        let (d1, s1) = langlands_dual(&fd, &s);
        let (d2, s2) = langlands_dual(&d1, &s1);
        // the double dual is written in a rescaled basis of N; compare exchange matrices
        prop_assert_eq!(s2.exchange_matrix(&d2), s.exchange_matrix(&fd));
    }

    #[test]
    fn dual_exchange_matrix_is_minus_transpose(fd in fixed_data()) {
        let s = Seed::identity(fd.rank());
        let (d1, s1) = langlands_dual(&fd, &s);
        let e = s.exchange_matrix(&fd);
        let f = s1.exchange_matrix(&d1);
        for i in 0..fd.rank() {
            for j in 0..fd.rank() {
                prop_assert_eq!(&f[i][j], &-e[j][i].clone());
            }
        }
    }
}

fn wall_function() -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    (prop::collection::vec(0i64..=2, 2), prop::collection::vec(0i64..=3, 1..=3))
        .prop_filter("nonzero normal", |(n, _)| n.iter().any(|&x| x != 0))
}

fn to_wf(n: &[i64], c: &[i64]) -> WallFunction {
    WallFunction { n0: n.to_vec(), coeffs: c.iter().map(|&x| Q::from_integer(x.into())).collect() }
}

fn primitive(n: &[i64]) -> Vec<i64> {
    let g = n.iter().fold(0i64, |a, &b| num_integer::gcd(a, b));
    n.iter().map(|x| x / g).collect()
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn crossing_back_and_forth_is_identity((n, c) in wall_function(), m in prop::collection::vec(-3i64..=3, 2), k in 1u32..=8) {
        let fd = kronecker();
        let frame = Frame::new(&fd, &Seed::identity(2));
        let wf = to_wf(&primitive(&n), &c);
        let there = wall_crossing(&frame, &wf, &m, 1, k);
        let mut back = Laurent::zero();
        for (e, a) in &there.terms {
            back = back.add(&wall_crossing(&frame, &wf, e, -1, k).scale(a));
        }
        prop_assert_eq!(truncate_over(&frame, &m, &back, k), Laurent::monomial(m.clone(), Q::one()));
    }

    #[test]
    fn binomial_factorization_round_trips(c in prop::collection::vec(-4i64..=4, 1..=8)) {
        let coeffs: Vec<Q> = c.iter().map(|&x| Q::from_integer(x.into())).collect();
        let f = Uni::from_wall(&coeffs, coeffs.len() + 1);
        let fac = factor_binomial_powers(&f);
        prop_assert_eq!(expand_binomial_powers(&fac, f.len()), f);
    }
}

proptest! {
    #![proptest_config(config(40))]

    #[test]
    fn composition_is_associative(ws in prop::collection::vec(wall_function(), 3), signs in prop::collection::vec(prop::bool::ANY, 3), k in 1u32..=5) {
        let fd = a2();
        let frame = Frame::new(&fd, &Seed::identity(2));
        let a: Vec<_> = ws
            .iter()
            .zip(&signs)
            .map(|((n, c), s)| wall_automorphism(&frame, &to_wf(&primitive(n), c), if *s { 1 } else { -1 }, k))
            .collect();
        let left = a[0].compose(&frame, &a[1]).compose(&frame, &a[2]);
        let right = a[0].compose(&frame, &a[1].compose(&frame, &a[2]));
        prop_assert!(left.first_difference(&right).is_none());
    }

    #[test]
    fn log_inverts_exp(terms in prop::collection::vec((prop::collection::vec(0i64..=3, 2), -3i64..=3), 1..=4), k in 1i64..=3) {
        let fd = a2();
        let frame = Frame::new(&fd, &Seed::identity(2));
        // restrict to lattice points of degree exactly k, merged
        let mut derivation: std::collections::BTreeMap<Vec<i64>, Q> = Default::default();
        for (n, c) in terms {
            let n = vec![n[0].min(k), k - n[0].min(k)];
            *derivation.entry(n).or_insert_with(Q::zero) += Q::from_integer(c.into());
        }
        let want: Vec<(Vec<i64>, Q)> = derivation.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = k as u32;
        let theta = exp_derivation(&frame, &want, order);
        let mut got = log_leading(&frame, &theta, order).unwrap();
        got.sort();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn tropicalization_is_a_min_plus_homomorphism(
        g in prop::collection::btree_map(prop::collection::vec(-3i64..=3, 2), 1i64..=4, 1..=4),
        h in prop::collection::btree_map(prop::collection::vec(-3i64..=3, 2), 1i64..=4, 1..=4),
        x in prop::collection::vec(-9i64..=9, 2),
        geometric in prop::bool::ANY,
    ) {
        let to_l = |m: &std::collections::BTreeMap<Vec<i64>, i64>| {
            let mut l = Laurent::zero();
            for (e, c) in m {
                l.add_term(e.clone(), Q::from_integer((*c).into()));
            }
            l
        };
        let (g, h) = (to_l(&g), to_l(&h));
        let x = qv(&x);
        let d = [1, 2];
        let lhs = tropicalize(&g.mul(&h), &x, &d, geometric).unwrap();
        let rhs = tropicalize(&g, &x, &d, geometric).unwrap() + tropicalize(&h, &x, &d, geometric).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

fn small_cone() -> impl Strategy<Value = Cone> {
    (
        prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 0..=1),
        prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 0..=4),
    )
        .prop_map(|(eqs, ineqs)| Cone::new(3, eqs, ineqs))
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn containment_matches_brute_evaluation(eqs in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 0..=1),
                                             ineqs in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 0..=4),
                                             pts in prop::collection::vec(prop::collection::vec(-5i64..=5, 3), 50)) {
        let c = Cone::new(3, eqs.clone(), ineqs.clone());
        let dot = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>();
        for p in pts {
            let brute = eqs.iter().all(|e| dot(e, &p) == 0) && ineqs.iter().all(|b| dot(b, &p) >= 0);
            prop_assert_eq!(c.contains(&qv(&p)), brute);
        }
    }

    #[test]
    fn random_points_lie_in_the_relative_interior(c in small_cone(), seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = c.random_point(&mut rng);
        prop_assert!(c.in_relint(&x));
    }

    #[test]
    fn reversed_paths_reverse_crossings(seed in 0u64..10_000) {
        let d = kronecker_diagram();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let full = Cone::full(2);
        let (p, q) = (generic_basepoint(d, &full, &mut rng).unwrap(), generic_basepoint(d, &full, &mut rng).unwrap());
        let Ok(fwd) = segment_crossings(d, &p, &q, 6) else { return Ok(()) };
        let back = segment_crossings(d, &q, &p, 6).unwrap();
        prop_assert_eq!(fwd.len(), back.len());
        for (a, b) in fwd.iter().zip(back.iter().rev()) {
            prop_assert_eq!(&a.0, &(Q::one() - &b.0));
            prop_assert_eq!(a.1, b.1);
            prop_assert_eq!(a.2, -b.2);
        }
    }

    #[test]
    fn closed_loops_cross_each_hyperplane_evenly(seed in 0u64..10_000) {
        let d = kronecker_diagram();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let full = Cone::full(2);
        let pts: Vec<Vec<Q>> = (0..4).map(|_| generic_basepoint(d, &full, &mut rng).unwrap()).collect();
        for h in d.hyperplanes() {
            let plane = Cone::hyperplane(2, &h);
            let (mut net, mut count) = (0, 0);
            for i in 0..4 {
                match segment_hit(&plane, &h, &pts[i], &pts[(i + 1) % 4]) {
                    Hit::Cross(_, s) => {
                        net += s;
                        count += 1;
                    }
                    Hit::Miss => {}
                    Hit::Singular => return Ok(()),
                }
            }
            prop_assert_eq!(net, 0);
            prop_assert_eq!(count % 2, 0);
        }
    }
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn new_walls_are_outgoing(eps in prop::collection::vec(-2i64..=2, 3), order in 2u32..=4) {
        let m = vec![vec![0, eps[0], eps[1]], vec![-eps[0], 0, eps[2]], vec![-eps[1], -eps[2], 0]];
        let Ok(fd) = FixedData::skew_symmetric(&m, &[]) else { return Ok(()) };
        let (p, s) = principal_extension(&fd, &Seed::identity(3));
        let init = initial_diagram(&p, &s);
        let d = scatter(&p, &s, order).unwrap();
        for w in &d.walls {
            let initial = init.walls.iter().any(|v| v.normal == w.normal && v.support == w.support);
            prop_assert!(initial || !w.is_incoming(&p), "incoming wall {:?}", w.normal);
        }
    }

    #[test]
    fn chamber_interiors_avoid_walls(raw in path(4), seed in 0u64..1000) {
        let d = kronecker_diagram();
        let fd = &d.fd;
        let route = replay(fd, &raw);
        let c = chamber(fd, &d.seed, &route, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..5 {
            prop_assert!(!on_walls(d, &c.random_point(&mut rng)));
        }
    }

    #[test]
    fn documents_round_trip_byte_stably(eps in prop::collection::vec(-2i64..=2, 3), order in 1u32..=4, principal in prop::bool::ANY) {
        let m = vec![vec![0, eps[0], eps[1]], vec![-eps[0], 0, eps[2]], vec![-eps[1], -eps[2], 0]];
        let Ok(fd) = FixedData::skew_symmetric(&m, &[]) else { return Ok(()) };
        let (fd, s) = if principal { principal_extension(&fd, &Seed::identity(3)) } else { (fd, Seed::identity(3)) };
        let Ok(d) = scatter(&fd, &s, order) else { return Ok(()) };
        let text = emit(&DiagramDocument::of(&d, "fuzz", principal));
        let again = DiagramDocument::parse(&text).unwrap().diagram().unwrap();
        prop_assert_eq!(emit(&DiagramDocument::of(&again, "fuzz", principal)), text);
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn theta_functions_have_positive_integer_coefficients(m0 in prop::collection::vec(-3i64..=3, 2), seed in 0u64..1000, kron in prop::bool::ANY) {
        let d = if kron { kronecker_diagram() } else { a2_diagram() };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = theta_in(d, &m0, &Cone::full(2), 6, &mut rng).unwrap();
        prop_assert!(t.poly.all_coefficients_positive_integers(), "{}", t.poly);
    }

    #[test]
    fn principal_broken_lines_commute_with_translation(m in prop::collection::vec(-2i64..=2, 2), n in prop::collection::vec(-3i64..=3, 2), seed in 0u64..1000) {
        let d = a2_principal();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = generic_basepoint(d, &Cone::full(4), &mut rng).unwrap();
        let m0 = vec![m[0], m[1], 0, 0];
        let shifted = vec![m[0], m[1], n[0], n[1]];
        let shift = |e: &[i64]| vec![e[0], e[1], e[2] + n[0], e[3] + n[1]];
        let a = broken_lines(d, &m0, &x, 4).unwrap();
        let b = broken_lines(d, &shifted, &x, 4).unwrap();
        prop_assert_eq!(a.len(), b.len());
        let mut moved: Vec<(Vec<i64>, Q, usize)> = a.iter().map(|l| (shift(&l.last().exponent), l.last().coeff.clone(), l.bends())).collect();
        let mut other: Vec<(Vec<i64>, Q, usize)> = b.iter().map(|l| (l.last().exponent.clone(), l.last().coeff.clone(), l.bends())).collect();
        moved.sort();
        other.sort();
        prop_assert_eq!(moved, other);
    }

    #[test]
    fn rescaling_keeps_structure_constants_nonzero(p1 in prop::collection::vec(-2i64..=2, 2), p2 in prop::collection::vec(-2i64..=2, 2), shift in 0u32..=1, seed in 0u64..1000) {
        let d = a2_diagram();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let frame = d.frame();
        let target: Vec<i64> = p1.iter().zip(&p2).zip(frame.m_of(&[shift, 0])).map(|((a, b), c)| a + b + c).collect();
        let a = structure_constant(d, &p1, &p2, &target, 6, &mut rng).unwrap();
        prop_assert!(a.is_integer() && !a.is_negative());
        if !a.is_zero() {
            for k in [2, 3] {
                let s = |v: &[i64]| v.iter().map(|x| k * x).collect::<Vec<_>>();
                let b = structure_constant(d, &s(&p1), &s(&p2), &s(&target), 6, &mut rng).unwrap();
                prop_assert!(!b.is_zero(), "k={} kills alpha({:?}, {:?}, {:?})", k, p1, p2, target);
            }
        }
    }

    #[test]
    fn structure_constants_are_symmetric(p1 in prop::collection::vec(-2i64..=2, 2), p2 in prop::collection::vec(-2i64..=2, 2), seed in 0u64..1000) {
        let d = kronecker_diagram();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let target: Vec<i64> = p1.iter().zip(&p2).map(|(a, b)| a + b).collect();
        let a = structure_constant(d, &p1, &p2, &target, 6, &mut rng).unwrap();
        let b = structure_constant(d, &p2, &p1, &target, 6, &mut rng).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(a >= Q::one());
    }
}

/// Theta functions of cluster variables outside the positive chamber are
/// proper Laurent: each monomial has a negative exponent.
#[test]
fn proper_laurent_property() {
    let d = a2_diagram();
    let x = qv(&[5, 3]);
    for g in [[-1, 0], [1, -1], [0, -1]] {
        let t = theta_function(d, &g, &x, 6).unwrap();
        for e in t.poly.terms.keys() {
            assert!(e.iter().any(|a| a.is_negative()), "theta {g:?} has the monomial {e:?}");
        }
    }
}
