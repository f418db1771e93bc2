//! Randomized property suites. Every runner is seeded: by default from a
//! fixed constant, or from `ELLRANK_SEED` when set.

use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use ellrank_core::algebra::fp::reduce_rat;
use ellrank_core::algebra::{factor_rationals, Field, Fp, FqField, Poly, Qt, Rat, RatFunc, Ring};
use ellrank_core::ellcurve::{pullback_square, CurvePoint, WeierstrassCurve};
use ellrank_core::heights::{norm_map, HeightContext};
use ellrank_core::mestre::nagao::NagaoModels;
use ellrank_core::mestre::registry;
use ellrank_core::surfcount::{affine_points_brute_force, fibre_count, BasePoint, SurfaceModel};

const DEFAULT_SEED: u64 = 0x5eed_0013;

fn runner(cases: u32) -> TestRunner {
    let seed = std::env::var("ELLRANK_SEED")
        .ok()
        .and_then(|s| s.parse::<u64>().ok())
        .unwrap_or(DEFAULT_SEED);
    let mut bytes = [0u8; 32];
    for (i, chunk) in bytes.chunks_mut(8).enumerate() {
        chunk.copy_from_slice(&seed.wrapping_add(i as u64).to_le_bytes());
    }
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &bytes))
}

fn check<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>)
where
    S::Value: std::fmt::Debug,
{
    if let Err(e) = runner(cases).run(&strategy, test) {
        panic!("{e}");
    }
}

const SMALL_PRIMES: [u64; 6] = [5, 7, 11, 13, 17, 19];

/// A point with the given abscissa or the next one that lifts.
fn lift(e: &WeierstrassCurve<Fp>, p: u64, x0: u64) -> CurvePoint<Fp> {
    for dx in 0..p {
        let x = Fp::new(((x0 + dx) % p) as i64, p);
        let rhs = x.clone() * &x * &x + &(e.a4.clone() * &x) + &e.a6;
        if let Some(y) = rhs.sqrt() {
            return CurvePoint::Affine(x, y);
        }
    }
    CurvePoint::Infinity
}

fn naive_order(e: &WeierstrassCurve<Fp>, p: u64) -> i64 {
    let mut n = 1;
    for x in 0..p as i64 {
        for y in 0..p as i64 {
            if e.contains(&CurvePoint::Affine(Fp::new(x, p), Fp::new(y, p))) {
                n += 1;
            }
        }
    }
    n
}

#[test]
fn group_law_over_prime_fields() {
    let s = (0..SMALL_PRIMES.len(), 0u64..19, 0u64..19, 0u64..19, 0u64..19, 0u64..19);
    check(64, s, |(i, a, b, x1, x2, x3)| {
        let p = SMALL_PRIMES[i];
        let e = WeierstrassCurve::short(Fp::new(a as i64, p), Fp::new(b as i64, p));
        prop_assume!(e.is_ok());
        let e = e.unwrap();
        let (u, v, w) = (lift(&e, p, x1), lift(&e, p, x2), lift(&e, p, x3));
        let o = CurvePoint::Infinity;
        prop_assert_eq!(e.add_unchecked(&u, &o), u.clone());
        prop_assert!(e.add_unchecked(&u, &e.neg(&u)).is_infinity());
        prop_assert_eq!(e.add_unchecked(&u, &v), e.add_unchecked(&v, &u));
        prop_assert_eq!(
            e.add_unchecked(&e.add_unchecked(&u, &v), &w),
            e.add_unchecked(&u, &e.add_unchecked(&v, &w))
        );
        prop_assert_eq!(e.mul(&u, 3), e.add_unchecked(&u, &e.double(&u)));
        // Lagrange: the group order kills every point
        prop_assert!(e.mul(&u, naive_order(&e, p)).is_infinity());
        Ok(())
    });
}

#[test]
fn group_law_on_the_generators() {
    let gens = registry::generators();
    let e = pullback_square(&registry::nagao_minimal_u());
    let n = gens.len();
    check(6, (0..n, 0..n, 0..n), |(i, j, k)| {
        let (p, q, r) = (&gens[i], &gens[j], &gens[k]);
        let pq = e.add_unchecked(p, q);
        prop_assert!(e.contains(&pq));
        prop_assert_eq!(e.add_unchecked(&pq, r), e.add_unchecked(p, &e.add_unchecked(q, r)));
        prop_assert_eq!(pq, e.add_unchecked(q, p));
        prop_assert!(e.add_unchecked(p, &e.neg(p)).is_infinity());
        Ok(())
    });
}

struct Rational {
    curve: WeierstrassCurve<Qt>,
    norms: Vec<CurvePoint<Qt>>,
}

fn rational_surface() -> Rational {
    let m = NagaoModels::build().unwrap();
    let norms = registry::generators()
        .iter()
        .map(|p| norm_map(&m.u_curve, &m.t_curve, p).unwrap())
        .filter(|p| !p.is_infinity())
        .collect();
    Rational { curve: m.u_curve, norms }
}

#[test]
fn height_is_a_quadratic_form() {
    let s = rational_surface();
    let (e, pts) = (&s.curve, &s.norms);
    let ctx = HeightContext::new(e).unwrap();
    let n = pts.len();
    check(8, (0..n, 0..n, -2i64..=2, -2i64..=2), |(i, j, a, b)| {
        let (p, q) = (&pts[i], &pts[j]);
        let h = |x: &CurvePoint<Qt>| ctx.height(x).unwrap().value;
        let hp = h(p);
        let hq = h(q);
        let pq = ctx.pairing(p, q).unwrap();
        prop_assert_eq!(pq.clone(), ctx.pairing(q, p).unwrap());
        let combo = e.add_unchecked(&e.mul(p, a), &e.mul(q, b));
        let expected = Rat::from_i64(a * a) * &hp + &(Rat::from_i64(2 * a * b) * &pq) + &(Rat::from_i64(b * b) * &hq);
        prop_assert_eq!(h(&combo), expected);
        let par = h(&e.add_unchecked(p, q)) + &h(&e.sub_unchecked(p, q));
        prop_assert_eq!(par, Rat::from_i64(2) * &(hp + &hq));
        prop_assert!(h(p) >= Rat::zero());
        Ok(())
    });
}

#[test]
fn limit_and_shioda_heights_agree() {
    let s = rational_surface();
    let ctx = HeightContext::new(&s.curve).unwrap();
    let n = s.norms.len();
    // exact doubling on single points, modular doubling on sums
    check(2, (0..n, 0..n), |(i, j)| {
        let p = &s.norms[i];
        let shioda = ctx.shioda_height(p).unwrap().value;
        prop_assert_eq!(ctx.canonical_height_limit(p).unwrap().value, shioda);
        let sum = s.curve.add_unchecked(p, &s.norms[j]);
        prop_assume!(!sum.is_infinity());
        let modular = ctx.canonical_height_limit_modular(&sum, 2).unwrap().value;
        prop_assert_eq!(modular, ctx.shioda_height(&sum).unwrap().value);
        Ok(())
    });
}

fn linear(a: i64, b: i64) -> Poly<Rat> {
    Poly::from_i64s(&[b, a])
}

#[test]
fn squarefree_and_factorization_round_trips() {
    let factor = (1i64..5, -9i64..9, 1usize..4);
    let s = (prop::collection::vec(factor, 1..4), 1i64..7, -5i64..5);
    check(48, s, |(lins, c, k)| {
        let mut f = Poly::from_i64s(&[c, 0, 1]);
        if k != 0 {
            f = f.scale(&Rat::from_i64(k));
        }
        for (a, b, e) in &lins {
            f = f * &linear(*a, *b).pow(*e as u32);
        }
        // squarefree decomposition multiplies back to f / lc(f)
        let parts = f.squarefree_decomposition().unwrap();
        let back = parts.iter().fold(Poly::one(), |acc, (g, k)| acc * &g.pow(*k as u32));
        prop_assert_eq!(back, f.monic());
        for (g, _) in &parts {
            prop_assert!(g.is_squarefree());
        }
        // factorization multiplies back to f, factors irreducible of degree <= 2
        let fac = factor_rationals(&f);
        prop_assert_eq!(fac.expand(), f.clone());
        for (g, _) in &fac.factors {
            prop_assert!(g.deg() <= 2);
            prop_assert!(g.deg() < 2 || (-(g.coeff(0) * &Rat::from_i64(4)) + &(g.coeff(1) * &g.coeff(1))).sqrt().is_none());
        }
        // the same over F_p for the reduction
        let p = 101u64;
        let fp: Poly<Fp> = Poly::new(f.coeffs().iter().map(|c| reduce_rat(c, p).unwrap()).collect());
        prop_assume!(fp.deg() == f.deg());
        let parts = fp.squarefree_decomposition().unwrap();
        let back = parts.iter().fold(Poly::one(), |acc: Poly<Fp>, (g, k)| acc * &g.pow(*k as u32));
        prop_assert_eq!(back, fp.monic());
        Ok(())
    });
}

/// `y^2 = x^3 + a x + (t + b)`, a rational surface with II* at infinity.
fn ii_star_family(a: i64, b: i64) -> SurfaceModel {
    let t = Qt::var();
    let e = WeierstrassCurve::short(Qt::from_i64(a), t + &Qt::from_i64(b)).unwrap();
    SurfaceModel::new(&e).unwrap()
}

#[test]
fn fibre_counts_match_brute_force() {
    let s = (1i64..7, -6i64..7, 0usize..4, 1u32..3);
    check(16, s, |(a, b, i, n)| {
        let p = [5u64, 7, 11, 13][i];
        let n = if p > 7 { 1 } else { n };
        let m = ii_star_family(a, b);
        let q = p.pow(n);
        let field = FqField::new(p, n).unwrap();
        let mut finite = 0;
        for t in field.elements() {
            finite += fibre_count(&m, p, n, BasePoint::T(t)).unwrap();
        }
        let inf = fibre_count(&m, p, n, BasePoint::S(0)).unwrap();
        prop_assert_eq!(inf, 9 * q + 1);
        // one point at infinity of the cubic per finite fibre
        prop_assert_eq!(finite, affine_points_brute_force(&[a], &[b, 1], p, n) + q);
        Ok(())
    });
}

fn reduced_coeffs(f: &Poly<Rat>, p: u64) -> Vec<u32> {
    f.coeffs().iter().map(|c| reduce_rat(c, p).unwrap().value() as u32).collect()
}

#[test]
fn k3_fibres_over_f53_against_a_double_loop() {
    let m = SurfaceModel::new(&pullback_square(&registry::nagao_minimal_u())).unwrap();
    let p = 53u64;
    let f = FqField::new(p, 1).unwrap();
    let (a, b) = (reduced_coeffs(&m.a, p), reduced_coeffs(&m.b, p));
    check(20, 0u32..53, |t| {
        let (at, bt) = (f.eval_fp_poly(&a, t), f.eval_fp_poly(&b, t));
        let mut naive = 1u64;
        for x in f.elements() {
            let rhs = f.add(f.add(f.pow(x, 3), f.mul(at, x)), bt);
            naive += f.elements().filter(|&y| f.mul(y, y) == rhs).count() as u64;
        }
        prop_assert_eq!(fibre_count(&m, p, 1, BasePoint::T(t)).unwrap(), naive);
        let disc = f.add(f.mul(4, f.pow(at, 3)), f.mul(27, f.mul(bt, bt)));
        if disc != 0 {
            let dev = naive as i64 - p as i64 - 1;
            prop_assert!(dev * dev <= 4 * p as i64, "Hasse bound fails at t = {}", t);
        }
        Ok(())
    });
}

#[test]
fn charts_agree_away_from_zero_and_infinity() {
    let m = SurfaceModel::new(&pullback_square(&registry::nagao_minimal_u())).unwrap();
    let s = (prop::sample::select(vec![(53u64, 1u32), (71, 1), (53, 2)]), 1u32..2809);
    check(24, s, |((p, n), t)| {
        let f = FqField::new(p, n).unwrap();
        let t = t % (f.order() as u32 - 1) + 1;
        let s = f.inv(t).unwrap();
        let via_t = fibre_count(&m, p, n, BasePoint::T(t)).unwrap();
        let via_s = fibre_count(&m, p, n, BasePoint::S(s)).unwrap();
        prop_assert_eq!(via_t, via_s);
        Ok(())
    });
}

#[test]
fn runner_is_deterministic() {
    let draw = || {
        let mut r = runner(1);
        (0..5).map(|_| (0u64..1_000_000).new_tree(&mut r).unwrap().current()).collect::<Vec<_>>()
    };
    assert_eq!(draw(), draw());
}

#[test]
fn quadratic_coefficients_are_tagged() {
    // to_quadratic moves every constant into the field of Q
    let e = registry::to_quadratic(&registry::nagao_minimal_u(), -3);
    let q = registry::q_point();
    assert!(e.contains(&q));
    let untagged = |c: &RatFunc<_>| c.num().coeffs().iter().any(|k: &ellrank_core::algebra::QuadExt| k.d() == 0);
    assert!(!untagged(&e.a4) && !untagged(&e.a6));
}
