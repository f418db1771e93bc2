//! Finite fields `F_{p^k}` with elements packed into `u32`.
//!
//! An element `c0 + c1 X + ... + c_{k-1} X^{k-1}` (reduced modulo the
//! defining polynomial) is stored as the integer `c0 + c1 p + ...`. Fields of
//! size at most 2^24 get exponent, logarithm, Zech and quadratic-character
//! tables; larger fields multiply coefficient vectors directly.

use num_bigint::BigUint;

use super::factor::distinct_degree;
use super::{is_prime_u64, prime_factors_u64, AlgebraError, Fp, Poly};

pub const TABLE_LIMIT: u64 = 1 << 24;

#[derive(Clone, Debug)]
struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    chi: Vec<i8>,
}

#[derive(Clone, Debug)]
pub struct FqField {
    p: u64,
    k: u32,
    q: u64,
    /// Monic coefficients `m_0..m_{k-1}` of the defining polynomial (the
    /// leading 1 omitted). Empty for a prime field.
    modulus: Vec<u64>,
    generator: u32,
    tables: Option<Tables>,
}

/// Sentinel for `log 0` and for Zech values of `1 + g^n = 0`.
pub const NO_LOG: u32 = u32::MAX;

impl FqField {
    /// `F_{p^k}` with the lexicographically first monic irreducible modulus.
    pub fn new(p: u64, k: u32) -> Result<Self, AlgebraError> {
        if !is_prime_u64(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        assert!(k >= 1);
        let q = p.checked_pow(k).filter(|&q| q < (1 << 32)).expect("field too large");
        let modulus = if k == 1 {
            Vec::new()
        } else {
            first_irreducible(p, k)
        };
        let mut f = FqField {
            p,
            k,
            q,
            modulus,
            generator: 0,
            tables: None,
        };
        f.generator = f.find_generator();
        if q <= TABLE_LIMIT {
            f.tables = Some(f.build_tables());
        }
        Ok(f)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    /// The defining polynomial over `F_p` (`X` for a prime field).
    pub fn modulus(&self) -> Poly<Fp> {
        let mut c: Vec<Fp> = self.modulus.iter().map(|&m| Fp::new(m as i64, self.p)).collect();
        if self.k == 1 {
            c = vec![Fp::new(0, self.p)];
        }
        c.push(Fp::new(1, self.p));
        Poly::new(c)
    }

    pub fn generator(&self) -> u32 {
        self.generator
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q as u32
    }

    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    pub fn from_fp(&self, x: Fp) -> u32 {
        x.value() as u32
    }

    fn digits(&self, a: u32) -> [u64; 8] {
        let mut d = [0u64; 8];
        let mut a = a as u64;
        for di in d.iter_mut().take(self.k as usize) {
            *di = a % self.p;
            a /= self.p;
        }
        d
    }

    fn pack(&self, d: &[u64]) -> u32 {
        let mut a = 0u64;
        for &c in d.iter().take(self.k as usize).rev() {
            a = a * self.p + c;
        }
        a as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            let s = a as u64 + b as u64;
            return (if s >= self.p { s - self.p } else { s }) as u32;
        }
        let (mut a, mut b) = (a as u64, b as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.k {
            let s = (a % self.p + b % self.p) % self.p;
            out += s * place;
            place *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        let d = self.digits(a);
        let n: Vec<u64> = d[..self.k as usize]
            .iter()
            .map(|&c| if c == 0 { 0 } else { self.p - c })
            .collect();
        self.pack(&n)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if let Some(t) = &self.tables {
            let s = t.log[a as usize] as u64 + t.log[b as usize] as u64;
            let n = self.q - 1;
            return t.exp[(if s >= n { s - n } else { s }) as usize];
        }
        self.mul_slow(a, b)
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u128;
        if self.k == 1 {
            return ((a as u128 * b as u128) % p) as u32;
        }
        let k = self.k as usize;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u128; 2 * k - 1];
        for i in 0..k {
            for j in 0..k {
                prod[i + j] = (prod[i + j] + da[i] as u128 * db[j] as u128) % p;
            }
        }
        // X^k = -(m_0 + ... + m_{k-1} X^{k-1})
        for top in (k..2 * k - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for (j, &m) in self.modulus.iter().enumerate() {
                let idx = top - k + j;
                prod[idx] = (prod[idx] + (p - c) * m as u128) % p;
            }
        }
        let out: Vec<u64> = prod[..k].iter().map(|&c| c as u64).collect();
        self.pack(&out)
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        if let Some(t) = &self.tables {
            let l = t.log[a as usize] as u64;
            let n = self.q - 1;
            return Some(t.exp[((n - l) % n) as usize]);
        }
        Some(self.pow(a, self.q - 2))
    }

    /// Discrete logarithm to the base of [`FqField::generator`].
    pub fn log(&self, a: u32) -> Option<u32> {
        let t = self.tables.as_ref()?;
        match t.log[a as usize] {
            NO_LOG => None,
            l => Some(l),
        }
    }

    pub fn exp(&self, n: u64) -> u32 {
        match &self.tables {
            Some(t) => t.exp[(n % (self.q - 1)) as usize],
            None => self.pow(self.generator, n),
        }
    }

    /// Zech logarithm: `g^zech(n) = 1 + g^n`, `None` when `1 + g^n = 0`.
    pub fn zech(&self, n: u64) -> Option<u32> {
        let t = self.tables.as_ref()?;
        match t.zech[(n % (self.q - 1)) as usize] {
            NO_LOG => None,
            z => Some(z),
        }
    }

    /// Quadratic character; requires odd characteristic.
    pub fn chi(&self, a: u32) -> i32 {
        if let Some(t) = &self.tables {
            return t.chi[a as usize] as i32;
        }
        if a == 0 {
            return 0;
        }
        if self.pow(a, (self.q - 1) / 2) == 1 {
            1
        } else {
            -1
        }
    }

    /// Squareness table indexed by packed element (`None` without tables).
    pub fn chi_table(&self) -> Option<&[i8]> {
        self.tables.as_ref().map(|t| t.chi.as_slice())
    }

    /// Evaluates a polynomial with `F_p` coefficients at `x`.
    pub fn eval_fp_poly(&self, coeffs: &[u32], x: u32) -> u32 {
        coeffs
            .iter()
            .rev()
            .fold(0u32, |acc, &c| self.add(self.mul(acc, x), c))
    }

    fn find_generator(&self) -> u32 {
        let n = self.q - 1;
        let ls = prime_factors_u64(n);
        (1..self.q as u32)
            .find(|&g| ls.iter().all(|&l| self.pow_slow(g, n / l) != 1))
            .expect("multiplicative group is cyclic")
    }

    fn pow_slow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    fn build_tables(&self) -> Tables {
        let n = (self.q - 1) as usize;
        let mut exp = vec![0u32; n];
        let mut log = vec![NO_LOG; self.q as usize];
        let mut cur = 1u32;
        for (i, e) in exp.iter_mut().enumerate() {
            *e = cur;
            log[cur as usize] = i as u32;
            cur = self.mul_slow(cur, self.generator);
        }
        assert_eq!(cur, 1, "generator order mismatch");
        let mut zech = vec![NO_LOG; n];
        for (i, z) in zech.iter_mut().enumerate() {
            *z = log[self.add(exp[i], 1) as usize];
        }
        let mut chi = vec![0i8; self.q as usize];
        if self.p != 2 {
            for (i, &e) in exp.iter().enumerate() {
                chi[e as usize] = if i % 2 == 0 { 1 } else { -1 };
            }
        } else {
            for &e in &exp {
                chi[e as usize] = 1;
            }
        }
        Tables { exp, log, zech, chi }
    }
}

fn first_irreducible(p: u64, k: u32) -> Vec<u64> {
    let count = p.pow(k);
    for idx in 0..count {
        let mut c = Vec::with_capacity(k as usize);
        let mut r = idx;
        for _ in 0..k {
            c.push(r % p);
            r /= p;
        }
        if c[0] == 0 {
            continue;
        }
        let mut coeffs: Vec<Fp> = c.iter().map(|&v| Fp::new(v as i64, p)).collect();
        coeffs.push(Fp::new(1, p));
        let f = Poly::new(coeffs);
        let dd = distinct_degree(&f, p);
        if dd.len() == 1 && dd[0].1 == k as usize {
            return c;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Quadratic character of `x` in `field`.
pub fn fq_char(field: &FqField, x: u32) -> Result<i32, AlgebraError> {
    if field.characteristic() == 2 {
        return Err(AlgebraError::EvenCharacteristic);
    }
    Ok(field.chi(x))
}

/// `p^k` as a big integer, for budget estimates.
pub fn field_size(p: u64, k: u32) -> BigUint {
    BigUint::from(p).pow(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn frobenius_fixes_everything() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, k) in [(53, 1), (53, 2), (71, 2), (7, 3)] {
            let f = FqField::new(p, k).unwrap();
            for _ in 0..200 {
                let x = rng.gen_range(0..f.order()) as u32;
                assert_eq!(f.pow(x, f.order()), x);
            }
        }
    }

    #[test]
    fn chi_is_multiplicative() {
        let f = FqField::new(53, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..500 {
            let x = rng.gen_range(0..f.order()) as u32;
            let y = rng.gen_range(0..f.order()) as u32;
            assert_eq!(f.chi(f.mul(x, y)), f.chi(x) * f.chi(y));
        }
    }

    #[test]
    fn prime_field_characters() {
        let f = FqField::new(53, 1).unwrap();
        assert_eq!(fq_char(&f, 36).unwrap(), 1);
        assert_eq!(fq_char(&f, 0).unwrap(), 0);
        assert_eq!(fq_char(&f, f.from_int(-3)).unwrap(), -1);
        let g = FqField::new(71, 1).unwrap();
        assert_eq!(fq_char(&g, g.from_int(-3)).unwrap(), -1);
        // every element of F_p is a square in F_{p^2}
        let h = FqField::new(71, 2).unwrap();
        assert_eq!(h.chi(h.from_int(-3)), 1);
        assert!(fq_char(&FqField::new(2, 3).unwrap(), 1).is_err());
    }

    #[test]
    fn zech_and_slow_paths_agree() {
        let f = FqField::new(13, 2).unwrap();
        for n in 0..(f.order() - 1) {
            let lhs = f.add(1, f.exp(n));
            match f.zech(n) {
                Some(z) => assert_eq!(f.exp(z as u64), lhs),
                None => assert_eq!(lhs, 0),
            }
        }
        for a in f.elements() {
            for b in [0u32, 1, 5, 100, 168] {
                assert_eq!(f.mul(a, b), f.mul_slow(a, b));
            }
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
    }
}
