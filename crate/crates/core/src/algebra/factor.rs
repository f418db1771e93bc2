//! Factorization of rational polynomials.
//!
//! Squarefree decomposition over Q, then for each squarefree part:
//! factor modulo a small prime (distinct-degree + Cantor–Zassenhaus),
//! quadratic Hensel lifting of every modular factor, and recombination of
//! lifted factors by increasing subset size.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::big_pow;
use super::rat::{gcd_numerators, lcm_denominators};
use super::{primes_up_to, Fp, Poly, Rat, Ring};

/// `content * prod f_i^{k_i}` with every `f_i` monic irreducible over Q.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub content: Rat,
    pub factors: Vec<(Poly<Rat>, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> Poly<Rat> {
        self.factors
            .iter()
            .fold(Poly::constant(self.content.clone()), |acc, (f, k)| {
                acc * &f.pow(*k as u32)
            })
    }

    /// Rational roots with multiplicity.
    pub fn rational_roots(&self) -> Vec<(Rat, usize)> {
        self.factors
            .iter()
            .filter(|(f, _)| f.deg() == 1)
            .map(|(f, k)| (-f.coeff(0), *k))
            .collect()
    }
}

/// Complete factorization over Q into monic irreducibles times the leading
/// coefficient. The zero polynomial yields content 0 and no factors.
pub fn factor_rationals(f: &Poly<Rat>) -> Factorization {
    if f.is_zero() {
        return Factorization {
            content: Rat::zero(),
            factors: Vec::new(),
        };
    }
    let content = f.lc();
    let mut factors = Vec::new();
    for (part, k) in f.squarefree_decomposition().expect("nonzero") {
        for g in factor_squarefree(&part) {
            factors.push((g, k));
        }
    }
    factors.sort_by(|(a, ka), (b, kb)| {
        a.deg()
            .cmp(&b.deg())
            .then_with(|| ka.cmp(kb))
            .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
    });
    Factorization { content, factors }
}

/// Primitive integer polynomial with positive leading coefficient that is a
/// rational multiple of `f`.
pub fn primitive_integer(f: &Poly<Rat>) -> Vec<BigInt> {
    let l = lcm_denominators(f.coeffs());
    let lr = Rat::from_int(l);
    let scaled: Vec<Rat> = f.coeffs().iter().map(|c| c.clone() * &lr).collect();
    let g = gcd_numerators(&scaled);
    let mut out: Vec<BigInt> = scaled.iter().map(|c| c.numer() / &g).collect();
    if out.last().is_some_and(|c| c.is_negative()) {
        for c in out.iter_mut() {
            *c = -c.clone();
        }
    }
    out
}

fn zpoly_to_rat(z: &[BigInt]) -> Poly<Rat> {
    Poly::new(z.iter().map(|c| Rat::from_int(c.clone())).collect())
}

fn to_fp(z: &[BigInt], p: u64) -> Poly<Fp> {
    let pb = BigInt::from(p);
    Poly::new(
        z.iter()
            .map(|c| Fp::new(c.mod_floor(&pb).to_i64().unwrap(), p))
            .collect(),
    )
}

fn factor_squarefree(g: &Poly<Rat>) -> Vec<Poly<Rat>> {
    if g.deg() <= 1 {
        return vec![g.monic()];
    }
    let z = primitive_integer(g);
    let lc = z.last().unwrap().clone();

    // pick the admissible prime with the fewest modular factors
    let mut best: Option<(u64, Vec<Poly<Fp>>)> = None;
    let mut tried = 0;
    for p in primes_up_to(2000).into_iter().skip(1) {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = to_fp(&z, p);
        if !fp.is_squarefree() {
            continue;
        }
        let facs = factor_mod_p(&fp.monic(), p);
        let better = best.as_ref().is_none_or(|(_, b)| facs.len() < b.len());
        if better {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 6 {
            break;
        }
    }
    let (p, modular) = best.expect("some prime keeps a squarefree polynomial squarefree");
    if modular.len() == 1 {
        return vec![g.monic()];
    }

    let bound = coefficient_bound(&z);
    let target = BigInt::from(2) * bound;
    let lifted: Vec<Vec<BigInt>> = (0..modular.len())
        .map(|i| lift_factor(&z, &modular, i, p, &target))
        .collect();
    let modulus = lifted_modulus(p, &target);
    recombine(&z, lifted, &modulus)
}

/// Root-free certificate helper: degrees of the monic irreducible factors of
/// `f mod p`, or `None` if `p` is inadmissible (divides the leading
/// coefficient or breaks squarefreeness).
pub fn mod_p_degree_pattern(f: &Poly<Rat>, p: u64) -> Option<Vec<usize>> {
    let z = primitive_integer(f);
    if (z.last()? % BigInt::from(p)).is_zero() {
        return None;
    }
    let fp = to_fp(&z, p);
    if !fp.is_squarefree() {
        return None;
    }
    let mut d: Vec<usize> = factor_mod_p(&fp.monic(), p)
        .iter()
        .map(|g| g.deg() as usize)
        .collect();
    d.sort();
    Some(d)
}

/// Monic irreducible factors of a monic squarefree polynomial over F_p.
pub fn factor_mod_p(f: &Poly<Fp>, p: u64) -> Vec<Poly<Fp>> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 ^ p);
    for (g, d) in distinct_degree(f, p) {
        equal_degree(&g, d, p, &mut rng, &mut out);
    }
    out.sort_by(|a, b| {
        a.deg().cmp(&b.deg()).then_with(|| {
            let ka: Vec<u64> = a.coeffs().iter().map(|c| c.value_mod(p)).collect();
            let kb: Vec<u64> = b.coeffs().iter().map(|c| c.value_mod(p)).collect();
            ka.cmp(&kb)
        })
    });
    out
}

fn x_fp(p: u64) -> Poly<Fp> {
    Poly::new(vec![Fp::new(0, p), Fp::new(1, p)])
}

pub fn distinct_degree(f: &Poly<Fp>, p: u64) -> Vec<(Poly<Fp>, usize)> {
    let mut res = Vec::new();
    let mut rest = f.clone();
    let x = x_fp(p);
    let mut h = x.clone();
    let pe = BigUint::from(p);
    let mut i = 1usize;
    while rest.deg() >= 2 * i as i64 {
        h = h.pow_mod(&pe, &rest);
        let g = (h.clone() - &x).gcd(&rest);
        if g.deg() > 0 {
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
            res.push((g, i));
        }
        i += 1;
    }
    if rest.deg() > 0 {
        let d = rest.deg() as usize;
        res.push((rest.monic(), d));
    }
    res
}

fn equal_degree(
    g: &Poly<Fp>,
    d: usize,
    p: u64,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<Poly<Fp>>,
) {
    let n = g.deg() as usize;
    if n == d {
        out.push(g.monic());
        return;
    }
    let e = (big_pow(p, d as u32) - BigUint::one()) / BigUint::from(2u32);
    loop {
        let a = Poly::new(
            (0..n)
                .map(|_| Fp::new(rng.gen_range(0..p) as i64, p))
                .collect(),
        );
        if a.deg() <= 0 {
            continue;
        }
        let b = a.pow_mod(&e, g) - &Poly::constant(Fp::new(1, p));
        let c = b.gcd(g);
        if c.deg() > 0 && c.deg() < g.deg() {
            let other = g.div_rem(&c).0.monic();
            equal_degree(&c, d, p, rng, out);
            equal_degree(&other, d, p, rng, out);
            return;
        }
    }
}

/// Bound on `lc(f) * |coefficients|` of any integer factor of `f`.
fn coefficient_bound(z: &[BigInt]) -> BigInt {
    let n = z.len() - 1;
    let norm2: BigInt = z.iter().map(|c| c * c).sum();
    let root = norm2.sqrt() + BigInt::one();
    let lc = z.last().unwrap().abs();
    (BigInt::one() << n) * root * lc
}

fn lifted_modulus(p: u64, target: &BigInt) -> BigInt {
    let mut m = BigInt::from(p);
    while &m <= target {
        m = &m * &m;
    }
    m
}

// --- integer polynomials modulo m -------------------------------------

fn zmod(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = a.iter().map(|c| c.mod_floor(m)).collect();
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn zadd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default()
        })
        .collect()
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default()
        })
        .collect()
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c
}

/// Division by a monic polynomial modulo m.
fn zdivrem_monic(a: &[BigInt], h: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let a = zmod(a, m);
    let dh = h.len() - 1;
    if a.len() <= dh {
        return (Vec::new(), a);
    }
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - dh];
    for k in (0..q.len()).rev() {
        let f = r[k + dh].mod_floor(m);
        if f.is_zero() {
            continue;
        }
        for (j, b) in h.iter().enumerate() {
            r[k + j] = (&r[k + j] - &f * b).mod_floor(m);
        }
        q[k] = f;
    }
    r.truncate(dh);
    (zmod(&q, m), zmod(&r, m))
}

fn fp_to_z(f: &Poly<Fp>, p: u64) -> Vec<BigInt> {
    f.coeffs().iter().map(|c| BigInt::from(c.value_mod(p))).collect()
}

/// Lifts the `i`-th monic modular factor of `z` to a monic factor modulo a
/// power of `p` exceeding `target`.
fn lift_factor(z: &[BigInt], modular: &[Poly<Fp>], i: usize, p: u64, target: &BigInt) -> Vec<BigInt> {
    let lc = z.last().unwrap();
    let pb = BigInt::from(p);
    let lc_p = Fp::new(lc.mod_floor(&pb).to_i64().unwrap(), p);
    let h_p = modular[i].clone();
    let g_p = modular
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != i)
        .fold(Poly::constant(lc_p), |acc, (_, f)| acc * f);
    let (one, s_p, t_p) = g_p.ext_gcd(&h_p);
    debug_assert_eq!(one.deg(), 0);
    let mut g = fp_to_z(&g_p, p);
    let mut h = fp_to_z(&h_p, p);
    let mut s = fp_to_z(&s_p, p);
    let mut t = fp_to_z(&t_p, p);
    let mut m = pb;
    while &m <= target {
        let m2 = &m * &m;
        let e = zmod(&zsub(z, &zmul(&g, &h)), &m2);
        let (q, r) = zdivrem_monic(&zmul(&s, &e), &h, &m2);
        let g_new = zmod(&zadd(&zadd(&g, &zmul(&t, &e)), &zmul(&q, &g)), &m2);
        let h_new = zmod(&zadd(&h, &r), &m2);
        let mut b = zadd(&zmul(&s, &g_new), &zmul(&t, &h_new));
        if b.is_empty() {
            b.push(BigInt::zero());
        }
        b[0] -= BigInt::one();
        let b = zmod(&b, &m2);
        let (c, d) = zdivrem_monic(&zmul(&s, &b), &h_new, &m2);
        s = zmod(&zsub(&s, &d), &m2);
        t = zmod(&zsub(&zsub(&t, &zmul(&t, &b)), &zmul(&c, &g_new)), &m2);
        g = g_new;
        h = h_new;
        m = m2;
    }
    h
}

fn symmetric(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m / BigInt::from(2);
    a.iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect()
}

fn primitive_part(a: &[BigInt]) -> Vec<BigInt> {
    let g = a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return a.to_vec();
    }
    let mut v: Vec<BigInt> = a.iter().map(|c| c / &g).collect();
    if v.last().is_some_and(|c| c.sign() == Sign::Minus) {
        v = v.into_iter().map(|c| -c).collect();
    }
    v
}

fn recombine(z: &[BigInt], lifted: Vec<Vec<BigInt>>, m: &BigInt) -> Vec<Poly<Rat>> {
    let mut out = Vec::new();
    let mut remaining: Vec<Vec<BigInt>> = lifted;
    let mut f = z.to_vec();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut found = false;
        let n = remaining.len();
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let lc = f.last().unwrap().clone();
            let mut cand = vec![lc];
            for &i in &idx {
                cand = zmod(&zmul(&cand, &remaining[i]), m);
            }
            let cand = primitive_part(&symmetric(&cand, m));
            let fr = zpoly_to_rat(&f);
            let cr = zpoly_to_rat(&cand);
            if cr.deg() > 0 {
                if let Some(q) = fr.exact_div_poly(&cr) {
                    out.push(cr.monic());
                    f = primitive_integer(&q);
                    let mut keep = Vec::new();
                    for (i, g) in remaining.into_iter().enumerate() {
                        if !idx.contains(&i) {
                            keep.push(g);
                        }
                    }
                    remaining = keep;
                    found = true;
                    break;
                }
            }
            // next combination
            let mut k = size;
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                if idx[k] < n - size + k {
                    idx[k] += 1;
                    for j in k + 1..size {
                        idx[j] = idx[j - 1] + 1;
                    }
                    k = usize::MAX;
                    break;
                }
            }
            if k != usize::MAX {
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    if f.len() > 1 {
        out.push(zpoly_to_rat(&f).monic());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly<Rat> {
        Poly::from_i64s(c)
    }

    #[test]
    fn small_examples() {
        let f = factor_rationals(&p(&[-1, 0, 1]));
        assert_eq!(f.factors, vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1)]);
        let f = factor_rationals(&p(&[3, 0, 1]));
        assert_eq!(f.factors, vec![(p(&[3, 0, 1]), 1)]);
        let f = factor_rationals(&p(&[-429, 0, 1]));
        assert_eq!(f.factors.len(), 1);
    }

    #[test]
    fn swinnerton_dyer_like_product() {
        // (x^2 - 2)(x^2 - 3)(x^3 - x - 1)(2x + 5)^2
        let f = p(&[-2, 0, 1]) * &p(&[-3, 0, 1]) * &p(&[-1, -1, 0, 1]) * &p(&[5, 2]).pow(2);
        let fac = factor_rationals(&f.scale(&Rat::new(7, 3)));
        assert_eq!(fac.expand(), f.scale(&Rat::new(7, 3)));
        let degs: Vec<_> = fac.factors.iter().map(|(g, k)| (g.deg(), *k)).collect();
        assert_eq!(degs, vec![(1, 2), (2, 1), (2, 1), (3, 1)]);
    }

    #[test]
    fn irreducible_quartic_with_split_reductions() {
        // x^4 + 1 splits modulo every prime but is irreducible over Q
        let fac = factor_rationals(&p(&[1, 0, 0, 0, 1]));
        assert_eq!(fac.factors, vec![(p(&[1, 0, 0, 0, 1]), 1)]);
    }

    #[test]
    fn mod_p_factoring() {
        let q = 53;
        let f = Poly::new(vec![Fp::new(-2, q), Fp::new(0, q), Fp::new(1, q)]);
        // 2 is a non-residue mod 53 (53 = 5 mod 8)
        assert_eq!(factor_mod_p(&f, q).len(), 1);
        let g = Poly::new(vec![Fp::new(-36, q), Fp::new(0, q), Fp::new(1, q)]);
        assert_eq!(factor_mod_p(&g, q).len(), 2);
    }
}
