//! Randomized cross-checks of the two coordinate changes: exact round
//! trips in rational arithmetic, the edgewise inverse identity on
//! unbalanced inputs, equivariance under the integer Möbius action (which
//! subsumes independence of any base-edge convention), the square-sum
//! identity, and the norm and quasisymmetry-ratio bounds.

use std::collections::BTreeMap;

use coords::{
    check_finite_balanced, h_identity_check, l2_norm, phi, phi_at, psi, qs_ratio, CoordFn,
    CoordKind, Rat,
};
use farey_core::{FareyEdge, IntegerMobius, Rational};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Absolute-vs-relative tolerance for `f64` identities that are exact in
/// rational arithmetic.
const F64_IDENTITY_TOL: f64 = 1e-12;

/// Tolerance for bounds evaluated through sums of exponentials.
const RATIO_BOUND_TOL: f64 = 1e-9;

fn edge_pool(max_gen: usize) -> Vec<FareyEdge> {
    FareyEdge::by_generation(max_gen).into_iter().flatten().collect()
}

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    Rat::new(BigInt::from(rng.gen_range(-9..=9i64)), BigInt::from(rng.gen_range(1..=9i64)))
}

fn random_rat_fn(
    rng: &mut ChaCha8Rng,
    kind: CoordKind,
    pool: &[FareyEdge],
    max_edges: usize,
) -> CoordFn<Rat> {
    let n = rng.gen_range(1..=max_edges);
    let entries = (0..n).map(|_| {
        let e = pool.choose(rng).expect("pool is non-empty").clone();
        (e, random_rat(rng))
    });
    CoordFn::from_entries(kind, entries)
}

fn random_f64_fn(
    rng: &mut ChaCha8Rng,
    kind: CoordKind,
    pool: &[FareyEdge],
    max_edges: usize,
    amp: f64,
) -> CoordFn<f64> {
    let n = rng.gen_range(1..=max_edges);
    let entries = (0..n).map(|_| {
        let e = pool.choose(rng).expect("pool is non-empty").clone();
        (e, rng.gen_range(-amp..amp))
    });
    CoordFn::from_entries(kind, entries)
}

fn entries_of<T: coords::CoordScalar>(f: &CoordFn<T>) -> BTreeMap<FareyEdge, T> {
    f.support().map(|(e, v)| (e.clone(), v.clone())).collect()
}

/// A random word in the translation and inversion generators of the
/// integer Möbius group, which acts on the tessellation preserving
/// orientation, edges, triangles and fans.
fn random_modular(rng: &mut ChaCha8Rng) -> IntegerMobius {
    let s = IntegerMobius::new(0, -1, 1, 0).expect("inversion is unimodular");
    let mut g = IntegerMobius::identity();
    for _ in 0..rng.gen_range(1..=6usize) {
        let t = match rng.gen_range(0..3u8) {
            0 => IntegerMobius::translation(1),
            1 => IntegerMobius::translation(-1),
            _ => s.clone(),
        };
        g = g.compose(&t);
    }
    g
}

fn transport<T: coords::CoordScalar>(g: &IntegerMobius, f: &CoordFn<T>) -> CoordFn<T> {
    CoordFn::from_entries(
        f.kind(),
        f.support().map(|(e, v)| (g.apply_edge(e), v.clone())),
    )
}

#[test]
fn round_trip_is_exact_on_random_rational_diamonds() {
    let pool = edge_pool(5);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for _ in 0..1000 {
        let theta = random_rat_fn(&mut rng, CoordKind::Diamond, &pool, 6);
        let s = phi(&theta).expect("finite diamond input");
        assert!(check_finite_balanced(&s).unwrap(), "shear images are balanced");
        let back = psi(&s).expect("finite shear input").materialize().expect("balanced image");
        assert_eq!(entries_of(&back), entries_of(&theta));
    }
}

#[test]
fn shear_to_diamond_is_an_edgewise_right_inverse() {
    // psi is defined on every finite shear function, balanced or not; its
    // image is lazy with possibly infinite support, but applying the
    // diamond-to-shear change edge by edge must restore the input exactly.
    let support_pool = edge_pool(4);
    let check_pool = edge_pool(6);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    for _ in 0..60 {
        let s = random_rat_fn(&mut rng, CoordKind::Shear, &support_pool, 5);
        let t = psi(&s).expect("finite shear input");
        for e in &check_pool {
            assert_eq!(phi_at(&t, e), s.value(e), "mismatch at {e:?}");
        }
    }
}

#[test]
fn coordinate_changes_commute_with_the_modular_action() {
    // Both changes of coordinates are defined by the local combinatorics
    // of quadrilaterals and fans, so they commute with every tessellation
    // symmetry; in particular no choice of base edge or fan origin leaks
    // into the values.
    let pool = edge_pool(4);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    for _ in 0..300 {
        let theta = random_rat_fn(&mut rng, CoordKind::Diamond, &pool, 5);
        let g = random_modular(&mut rng);

        let s = phi(&theta).expect("finite diamond input");
        let s_of_transport = phi(&transport(&g, &theta)).expect("finite diamond input");
        assert_eq!(entries_of(&s_of_transport), entries_of(&transport(&g, &s)));

        let back = psi(&s).unwrap().materialize().expect("balanced image");
        let back_of_transport =
            psi(&transport(&g, &s)).unwrap().materialize().expect("balance is intrinsic");
        assert_eq!(entries_of(&back_of_transport), entries_of(&transport(&g, &back)));
    }
}

#[test]
fn shear_image_norm_is_bounded_by_sixteen_times_the_input() {
    // Each input edge feeds the four sides of its quadrilateral and each
    // output edge collects from at most four quadrilaterals, so the change
    // of coordinates has operator norm at most 4 on squared sums.
    let pool = edge_pool(5);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    for _ in 0..500 {
        let theta = random_f64_fn(&mut rng, CoordKind::Diamond, &pool, 8, 3.0);
        let s = phi(&theta).expect("finite diamond input");
        let lhs = l2_norm(&s).unwrap();
        let rhs = 16.0 * l2_norm(&theta).unwrap();
        assert!(
            lhs <= rhs * (1.0 + F64_IDENTITY_TOL),
            "norm bound violated: {lhs} > 16 * {}",
            rhs / 16.0
        );
    }
}

#[test]
fn square_sum_identity_is_exact_in_rational_arithmetic() {
    let pool = edge_pool(4);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    for _ in 0..200 {
        let theta = random_rat_fn(&mut rng, CoordKind::Diamond, &pool, 5);
        let (lhs, rhs) = h_identity_check(&theta).expect("finite diamond input");
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn square_sum_identity_holds_in_floating_point() {
    let pool = edge_pool(5);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    for _ in 0..1000 {
        let theta = random_f64_fn(&mut rng, CoordKind::Diamond, &pool, 8, 3.0);
        let (lhs, rhs) = h_identity_check(&theta).expect("finite diamond input");
        assert!(
            (lhs - rhs).abs() <= F64_IDENTITY_TOL * rhs.max(1.0),
            "identity drift: lhs = {lhs}, rhs = {rhs}"
        );
    }
}

#[test]
fn quasisymmetry_ratios_respect_the_exponential_bounds() {
    // Pairing the j-th numerator term with the j-th denominator term shows
    // every ratio lies between exp(-A) and exp(A), where A is the total
    // absolute value of the shear function.
    let pool = edge_pool(4);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    for _ in 0..200 {
        let s = random_f64_fn(&mut rng, CoordKind::Shear, &pool, 5, 2.0);
        let a: f64 = s.support().map(|(_, v)| v.abs()).sum();
        let bound = a.exp() * (1.0 + RATIO_BOUND_TOL);

        let mut vertices: Vec<Rational> = vec![Rational::infinity(), Rational::zero()];
        for (e, _) in s.support() {
            vertices.push(e.a().clone());
            vertices.push(e.b().clone());
        }
        for v in &vertices {
            for k in -3..=3i64 {
                for n in 0..=4usize {
                    let r = qs_ratio(&s, v, k, n).unwrap();
                    assert!(
                        r <= bound && r >= 1.0 / bound,
                        "ratio {r} escapes [{}, {}] at v = {v}, k = {k}, n = {n}",
                        1.0 / bound,
                        bound
                    );
                }
            }
        }
    }
}

#[test]
fn quasisymmetry_ratio_of_the_zero_function_is_one() {
    let s: CoordFn<f64> = CoordFn::new(CoordKind::Shear);
    for k in -2..=2i64 {
        for n in 0..=5usize {
            assert_eq!(qs_ratio(&s, &Rational::infinity(), k, n).unwrap(), 1.0);
        }
    }
}
