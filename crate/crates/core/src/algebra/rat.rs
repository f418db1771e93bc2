use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{forward_div, forward_ops, Field, Poly, Ring};

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        Rat(BigRational::new(n.into(), d.into()))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn from_big(r: BigRational) -> Self {
        Rat(r)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn signum(&self) -> i32 {
        match self.0.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Nearest element of `(1/n)Z`, ties rounded up.
    pub fn round_to_denominator(&self, n: u64) -> Rat {
        let scaled = &self.0 * BigRational::from_integer(BigInt::from(n));
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let k = (scaled + half).floor().to_integer();
        Rat::new(k, BigInt::from(n))
    }

    pub fn pow_i(&self, e: i32) -> Rat {
        if e >= 0 {
            Ring::pow(self, e as u64)
        } else {
            Ring::pow(&self.inv().expect("zero to a negative power"), (-e) as u64)
        }
    }

    fn add_ref(&self, o: &Rat) -> Rat {
        Rat(&self.0 + &o.0)
    }
    fn sub_ref(&self, o: &Rat) -> Rat {
        Rat(&self.0 - &o.0)
    }
    fn mul_ref(&self, o: &Rat) -> Rat {
        Rat(&self.0 * &o.0)
    }
    fn div_ref(&self, o: &Rat) -> Rat {
        assert!(!o.0.is_zero(), "division by zero");
        Rat(&self.0 / &o.0)
    }
}

/// Integer square root of a non-negative big integer, if exact.
pub fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

forward_ops!(Rat);
forward_div!(Rat);

impl std::ops::Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl std::ops::Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl Ring for Rat {
    fn zero() -> Self {
        Rat(BigRational::zero())
    }
    fn one() -> Self {
        Rat(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn from_i64(n: i64) -> Self {
        Rat::from_int(n)
    }
    fn from_bigint(n: &BigInt) -> Self {
        Rat::from_int(n.clone())
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        self.inv_checked(other)
    }
}

impl Rat {
    fn inv_checked(&self, other: &Rat) -> Option<Rat> {
        if other.is_zero() {
            None
        } else {
            Some(self.div_ref(other))
        }
    }
}

impl Field for Rat {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rat(self.0.recip()))
        }
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn sqrt(&self) -> Option<Self> {
        let n = exact_isqrt(self.numer())?;
        let d = exact_isqrt(self.denom())?;
        Some(Rat::new(n, d))
    }

    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }

    fn primitive_scale(coeffs: &[&Self]) -> Option<Self> {
        content(coeffs.iter().copied()).and_then(|c| c.inv())
    }

    fn poly_gcd(a: &Poly<Self>, b: &Poly<Self>) -> Option<Poly<Self>> {
        Some(super::modgcd::gcd_rational(a, b))
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Self {
        Rat::from_int(n)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Lowest common multiple of the denominators.
/// Positive rational `c` with `x / c` integral for all `x` and the
/// quotients coprime; `None` when all are zero.
pub fn content<'a>(it: impl IntoIterator<Item = &'a Rat>) -> Option<Rat> {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for x in it {
        if x.is_zero() {
            continue;
        }
        num = num.gcd(x.numer());
        den = den.lcm(x.denom());
    }
    if num.is_zero() {
        None
    } else {
        Some(Rat::new(num, den))
    }
}

pub fn lcm_denominators<'a>(it: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    it.into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Greatest common divisor of the numerators (non-negative).
pub fn gcd_numerators<'a>(it: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    it.into_iter()
        .fold(BigInt::zero(), |acc, r| acc.gcd(r.numer()))
}

pub fn cmp_abs(a: &Rat, b: &Rat) -> Ordering {
    a.abs().cmp(&b.abs())
}
