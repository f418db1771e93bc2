//! Multi-modular gcd of rational polynomials.
//!
//! Euclid over Q lets coefficients explode long before the remainders get
//! small. Instead: clear denominators, take gcds modulo word-sized primes,
//! lift by CRT until the primitive candidate stabilizes, and confirm by
//! trial division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Poly, Rat};

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_word(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn reduce(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().expect("residue")
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Monic gcd over F_p of two coefficient vectors (ascending).
fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let inv = inv_mod(*b.last().unwrap(), p);
        let db = b.len() - 1;
        while a.len() > db {
            let k = a.len() - 1 - db;
            let f = mul_mod(*a.last().unwrap(), inv, p);
            for (j, &bj) in b.iter().enumerate() {
                let t = mul_mod(f, bj, p);
                a[k + j] = (a[k + j] + p - t) % p;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&lc) = a.last() {
        let inv = inv_mod(lc, p);
        for c in a.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
    }
    a
}

/// Primitive integer polynomial proportional to `f`.
fn primitive(f: &Poly<Rat>) -> Vec<BigInt> {
    let den = f.coeffs().iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = f.coeffs().iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

fn primitive_int(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    let sign = if v.last().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
    v.iter().map(|c| c / &g * &sign).collect()
}

fn to_rat_poly(v: &[BigInt]) -> Poly<Rat> {
    Poly::new(v.iter().map(|c| Rat::from_int(c.clone())).collect())
}

/// Monic gcd of two rational polynomials, at least one nonzero.
pub fn gcd_rational(a: &Poly<Rat>, b: &Poly<Rat>) -> Poly<Rat> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.deg() == 0 || b.deg() == 0 {
        return Poly::one();
    }
    let (pa, pb) = (primitive(a), primitive(b));
    let lc_gcd = pa.last().unwrap().gcd(pb.last().unwrap());
    let (ra, rb) = (to_rat_poly(&pa), to_rat_poly(&pb));

    let mut p: u64 = (1 << 62) - 1;
    let mut deg = usize::MAX;
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut last: Option<Vec<BigInt>> = None;
    loop {
        p -= 2;
        while !is_prime_word(p) {
            p -= 2;
        }
        let g = reduce(&lc_gcd, p);
        if g == 0 || reduce(pa.last().unwrap(), p) == 0 || reduce(pb.last().unwrap(), p) == 0 {
            continue;
        }
        let am: Vec<u64> = pa.iter().map(|c| reduce(c, p)).collect();
        let bm: Vec<u64> = pb.iter().map(|c| reduce(c, p)).collect();
        let h = gcd_mod(&am, &bm, p);
        let d = h.len() - 1;
        if d == 0 {
            return Poly::one();
        }
        if d > deg {
            continue;
        }
        let image: Vec<u64> = h.iter().map(|&c| mul_mod(c, g, p)).collect();
        if d < deg {
            deg = d;
            acc = image.iter().map(|&c| BigInt::from(c)).collect();
            modulus = BigInt::from(p);
            last = None;
            continue;
        }
        // CRT: acc + modulus * ((image - acc) / modulus mod p)
        let minv = inv_mod(reduce(&modulus, p), p);
        for (c, &r) in acc.iter_mut().zip(&image) {
            let cm = reduce(c, p);
            let k = mul_mod((r + p - cm) % p, minv, p);
            *c += &modulus * k;
        }
        modulus *= p;
        let half = &modulus >> 1;
        let sym: Vec<BigInt> = acc
            .iter()
            .map(|c| if *c > half { c - &modulus } else { c.clone() })
            .collect();
        let cand = primitive_int(&sym);
        if last.as_ref() == Some(&cand) {
            let g = to_rat_poly(&cand);
            if ra.rem(&g).is_zero() && rb.rem(&g).is_zero() {
                return g.monic();
            }
        }
        last = Some(cand);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Ring;

    fn q(c: &[i64]) -> Poly<Rat> {
        Poly::new(c.iter().map(|&v| Rat::from_i64(v)).collect())
    }

    #[test]
    fn primes() {
        assert!(is_prime_word((1 << 61) - 1));
        assert!(!is_prime_word((1 << 62) - 1));
        assert!(is_prime_word(1_000_000_007));
        assert!(!is_prime_word(3_215_031_751));
    }

    #[test]
    fn agrees_with_euclid() {
        let g = q(&[3, -7, 0, 11]);
        let a = g.clone() * &q(&[123456789, 5, -987654321, 1]);
        let b = g.clone() * &q(&[-1, 0, 0, 0, 99999999977]) * &q(&[2, 3]);
        let want = g.monic();
        assert_eq!(gcd_rational(&a, &b), want);
        assert_eq!(gcd_rational(&q(&[1, 1]), &q(&[1, 2])), Poly::one());
        let half = Poly::new(vec![Rat::new(1, 2), Rat::new(3, 4)]);
        assert_eq!(gcd_rational(&(half.clone() * &a), &(half.clone() * &q(&[5, 1]))), half.monic());
    }
}
