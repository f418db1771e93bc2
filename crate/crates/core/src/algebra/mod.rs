//! Exact scalar and polynomial arithmetic.
//!
//! The scalar tower used throughout the crate:
//!
//! * [`Rat`]: arbitrary-precision rationals,
//! * [`QuadExt`]: elements `a + b*sqrt(D)` of a quadratic field,
//! * [`Fp`]: prime-field elements carrying their modulus,
//! * [`RatFunc`]: rational functions in one variable over any of the above.
//!
//! [`Poly`] is generic over any [`Ring`], so `Poly<Poly<Rat>>` doubles as a
//! bivariate polynomial ring where elimination needs one.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;

pub mod factor;
pub mod fp;
pub mod fq;
pub mod modgcd;
pub mod parse;
pub mod poly;
pub mod quadext;
pub mod rat;
pub mod ratfunc;

pub use factor::{factor_rationals, Factorization};
pub use fp::Fp;
pub use fq::FqField;
pub use poly::Poly;
pub use quadext::QuadExt;
pub use rat::Rat;
pub use ratfunc::RatFunc;

/// Rational functions in one variable over Q.
pub type Qt = RatFunc<Rat>;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("zero polynomial has no squarefree decomposition")]
    ZeroPolynomial,
    #[error("resultant of two zero polynomials is undefined")]
    ZeroResultant,
    #[error("mixed quadratic fields sqrt({0}) and sqrt({1})")]
    MixedField(i64, i64),
    #[error("{0} is not squarefree")]
    NotSquarefree(i64),
    #[error("quadratic character is undefined in characteristic 2")]
    EvenCharacteristic,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// A commutative ring with exact division where it is defined.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(n: i64) -> Self;
    fn from_bigint(n: &BigInt) -> Self;

    /// `self / other` when the quotient exists in the ring.
    fn exact_div(&self, other: &Self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * &base;
            }
        }
        acc
    }
}

/// A field. Division by zero through the `Div` operator panics; use
/// [`Field::inv`] for the checked form.
pub trait Field: Ring + Div<Output = Self> + for<'a> Div<&'a Self, Output = Self> {
    fn inv(&self) -> Option<Self>;

    /// Characteristic, or 0. Prime-field constants built by `zero`/`one`
    /// before meeting a concrete modulus report 0.
    fn characteristic(&self) -> u64;

    /// A square root inside the field, if one exists and is computable.
    fn sqrt(&self) -> Option<Self>;

    /// `Some(true/false)` when squareness is decidable for this element.
    fn is_square(&self) -> Option<bool> {
        Some(self.sqrt().is_some())
    }

    /// Monic gcd by a method faster than Euclid, where the field has one.
    fn poly_gcd(_a: &Poly<Self>, _b: &Poly<Self>) -> Option<Poly<Self>> {
        None
    }

    /// A scalar that makes the given coefficients primitive integral,
    /// where the field has a notion of integrality.
    fn primitive_scale(_coeffs: &[&Self]) -> Option<Self> {
        None
    }

    fn from_rat(r: &Rat) -> Self {
        let n = Self::from_bigint(r.numer());
        let d = Self::from_bigint(r.denom());
        n / d
    }
}

/// Forwards the by-value and by-reference binary operators of a type to
/// inherent `add_ref`/`sub_ref`/`mul_ref`/`div_ref` methods.
macro_rules! forward_ops {
    ($t:ty $(, $g:ident : $b:path)?) => {
        impl$(<$g: $b>)? std::ops::Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t { self.add_ref(&o) }
        }
        impl<'a $(, $g: $b)?> std::ops::Add<&'a $t> for $t {
            type Output = $t;
            fn add(self, o: &'a $t) -> $t { self.add_ref(o) }
        }
        impl$(<$g: $b>)? std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t { self.sub_ref(&o) }
        }
        impl<'a $(, $g: $b)?> std::ops::Sub<&'a $t> for $t {
            type Output = $t;
            fn sub(self, o: &'a $t) -> $t { self.sub_ref(o) }
        }
        impl$(<$g: $b>)? std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t { self.mul_ref(&o) }
        }
        impl<'a $(, $g: $b)?> std::ops::Mul<&'a $t> for $t {
            type Output = $t;
            fn mul(self, o: &'a $t) -> $t { self.mul_ref(o) }
        }
        impl<'a, 'b $(, $g: $b)?> std::ops::Add<&'b $t> for &'a $t {
            type Output = $t;
            fn add(self, o: &'b $t) -> $t { self.add_ref(o) }
        }
        impl<'a, 'b $(, $g: $b)?> std::ops::Sub<&'b $t> for &'a $t {
            type Output = $t;
            fn sub(self, o: &'b $t) -> $t { self.sub_ref(o) }
        }
        impl<'a, 'b $(, $g: $b)?> std::ops::Mul<&'b $t> for &'a $t {
            type Output = $t;
            fn mul(self, o: &'b $t) -> $t { self.mul_ref(o) }
        }
    };
}

macro_rules! forward_div {
    ($t:ty $(, $g:ident : $b:path)?) => {
        impl$(<$g: $b>)? std::ops::Div for $t {
            type Output = $t;
            fn div(self, o: $t) -> $t { self.div_ref(&o) }
        }
        impl<'a $(, $g: $b)?> std::ops::Div<&'a $t> for $t {
            type Output = $t;
            fn div(self, o: &'a $t) -> $t { self.div_ref(o) }
        }
        impl<'a, 'b $(, $g: $b)?> std::ops::Div<&'b $t> for &'a $t {
            type Output = $t;
            fn div(self, o: &'b $t) -> $t { self.div_ref(o) }
        }
    };
}

pub(crate) use forward_div;
pub(crate) use forward_ops;

/// Small-prime utilities shared by the factoring and counting code.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn prime_factors_u64(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime_u64(k)).collect()
}

/// Squarefree part of a nonzero integer, sign preserved.
pub fn squarefree_part(n: i64) -> i64 {
    assert!(n != 0);
    let sign = n.signum();
    let mut m = n.unsigned_abs();
    let mut out = 1u64;
    let mut d = 2u64;
    while d * d <= m {
        let mut e = 0;
        while m % d == 0 {
            m /= d;
            e += 1;
        }
        if e % 2 == 1 {
            out *= d;
        }
        d += 1;
    }
    out *= m;
    sign * out as i64
}
