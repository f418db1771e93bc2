use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{forward_div, forward_ops, Field, Ring};

/// Element of the prime field `F_p`, carrying its modulus.
///
/// `p == 0` marks an integer constant that has not met a modulus yet (from
/// `zero`, `one`, `from_i64`); it is reduced on first contact with a tagged
/// element. Mixing two different nonzero moduli panics.
#[derive(Clone, Copy)]
pub struct Fp {
    v: i64,
    p: u64,
}

impl Fp {
    pub fn new(v: i64, p: u64) -> Self {
        assert!(p >= 2 && p < (1 << 31), "modulus out of range");
        Fp {
            v: v.rem_euclid(p as i64),
            p,
        }
    }

    pub fn value(&self) -> u64 {
        if self.p == 0 {
            panic!("untagged prime-field constant has no canonical value");
        }
        self.v as u64
    }

    /// Canonical representative in `[0, p)`, also for untagged constants.
    pub fn value_mod(&self, p: u64) -> u64 {
        self.v.rem_euclid(p as i64) as u64
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn common(&self, o: &Fp) -> u64 {
        match (self.p, o.p) {
            (0, p) | (p, 0) => p,
            (x, y) if x == y => x,
            (x, y) => panic!("mixed prime fields F_{x} and F_{y}"),
        }
    }

    fn reduce(v: i128, p: u64) -> Fp {
        if p == 0 {
            Fp { v: v as i64, p }
        } else {
            Fp {
                v: v.rem_euclid(p as i128) as i64,
                p,
            }
        }
    }

    fn add_ref(&self, o: &Fp) -> Fp {
        Fp::reduce(self.v as i128 + o.v as i128, self.common(o))
    }
    fn sub_ref(&self, o: &Fp) -> Fp {
        Fp::reduce(self.v as i128 - o.v as i128, self.common(o))
    }
    fn mul_ref(&self, o: &Fp) -> Fp {
        Fp::reduce(self.v as i128 * o.v as i128, self.common(o))
    }
    fn div_ref(&self, o: &Fp) -> Fp {
        let i = o.inv().expect("division by zero in F_p");
        self.mul_ref(&i)
    }

    /// Legendre symbol of the element.
    pub fn legendre(&self) -> i32 {
        let p = self.p;
        assert!(p > 2, "quadratic character needs an odd modulus");
        if self.is_zero() {
            return 0;
        }
        let r = powmod(self.v as u64 % p, (p - 1) / 2, p);
        if r == 1 {
            1
        } else {
            -1
        }
    }
}

pub fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Tonelli–Shanks square root in `F_p`.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if powmod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while powmod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mulm = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let mut m = s;
    let mut c = powmod(z, q, p);
    let mut t = powmod(a, q, p);
    let mut r = powmod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mulm(tt, tt);
            i += 1;
        }
        let mut b = c;
        for _ in 0..(m - i - 1) {
            b = mulm(b, b);
        }
        m = i;
        c = mulm(b, b);
        t = mulm(t, c);
        r = mulm(r, b);
    }
    Some(r)
}

forward_ops!(Fp);
forward_div!(Fp);

impl std::ops::Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp::reduce(-(self.v as i128), self.p)
    }
}

impl PartialEq for Fp {
    fn eq(&self, o: &Fp) -> bool {
        let p = self.common(o);
        if p == 0 {
            return self.v == o.v;
        }
        (self.v as i128).rem_euclid(p as i128) == (o.v as i128).rem_euclid(p as i128)
    }
}

impl Ring for Fp {
    fn zero() -> Self {
        Fp { v: 0, p: 0 }
    }
    fn one() -> Self {
        Fp { v: 1, p: 0 }
    }
    fn is_zero(&self) -> bool {
        if self.p == 0 {
            self.v == 0
        } else {
            self.v.rem_euclid(self.p as i64) == 0
        }
    }
    fn from_i64(n: i64) -> Self {
        Fp { v: n, p: 0 }
    }
    fn from_bigint(n: &BigInt) -> Self {
        Fp {
            v: n.to_i64().expect("integer constant too large for an untagged F_p element"),
            p: 0,
        }
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul_ref(&i))
    }
}

impl Field for Fp {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.p == 0 {
            return match self.v {
                1 | -1 => Some(*self),
                _ => panic!("cannot invert an untagged F_p constant"),
            };
        }
        let (g, x, _) = ext_gcd_i64(self.v, self.p as i64);
        debug_assert_eq!(g, 1);
        Some(Fp::new(x, self.p))
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn sqrt(&self) -> Option<Self> {
        if self.p == 0 {
            return None;
        }
        sqrt_mod(self.v as u64, self.p).map(|r| Fp::new(r as i64, self.p))
    }

    fn is_square(&self) -> Option<bool> {
        if self.p == 0 {
            return None;
        }
        if self.p == 2 {
            return Some(true);
        }
        Some(self.legendre() >= 0)
    }

    fn from_rat(r: &super::Rat) -> Self {
        panic!("rational {r} has no image without a modulus; use reduce_rat")
    }
}

/// Image of a rational number in `F_p`, or `None` if `p` divides the denominator.
pub fn reduce_rat(r: &super::Rat, p: u64) -> Option<Fp> {
    let pb = BigInt::from(p);
    let n = r.numer().mod_floor(&pb).to_i64()?;
    let d = r.denom().mod_floor(&pb).to_i64()?;
    if d == 0 {
        return None;
    }
    Some(Fp::new(n, p) / Fp::new(d, p))
}

fn ext_gcd_i64(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    (old_r, old_s, old_t)
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p == 0 {
            write!(f, "{}", self.v)
        } else {
            write!(f, "{}(mod {})", self.v, self.p)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_examples() {
        assert_eq!(Fp::new(36, 53).legendre(), 1);
        assert_eq!(Fp::new(0, 53).legendre(), 0);
        assert_eq!(Fp::new(-3, 53).legendre(), -1);
        assert_eq!(Fp::new(-3, 71).legendre(), -1);
        assert_eq!(Fp::new(-3, 7).legendre(), 1);
    }

    #[test]
    fn untagged_constants_adopt_modulus() {
        let x = Fp::new(5, 7);
        assert_eq!(x + Fp::one(), Fp::new(6, 7));
        assert_eq!(Fp::from_i64(12) * x, Fp::new(4, 7));
        assert!((Fp::from_i64(7) * x).is_zero());
    }

    #[test]
    fn tonelli_shanks() {
        for p in [53u64, 71, 97, 257] {
            for a in 0..p {
                if let Some(r) = sqrt_mod(a, p) {
                    assert_eq!(r * r % p, a);
                } else {
                    assert_eq!(powmod(a, (p - 1) / 2, p), p - 1);
                }
            }
        }
    }
}
