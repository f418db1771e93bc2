use std::fmt;

use num_bigint::BigInt;

use super::rat::Rat;
use super::{forward_div, forward_ops, AlgebraError, Field, Ring};

/// An element `a + b*sqrt(D)` of the quadratic field `Q(sqrt(D))`.
///
/// `D` is a squarefree integer different from 0 and 1. Rational constants
/// created through [`Ring::zero`], [`Ring::one`] or [`Ring::from_i64`] carry
/// `D = 0` and adopt the field of whatever they are combined with. Combining
/// two elements with different nonzero `D` panics.
#[derive(Clone)]
pub struct QuadExt {
    a: Rat,
    b: Rat,
    d: i64,
}

impl QuadExt {
    pub fn new(a: Rat, b: Rat, d: i64) -> Result<Self, AlgebraError> {
        if d == 0 || d == 1 || super::squarefree_part(d) != d {
            return Err(AlgebraError::NotSquarefree(d));
        }
        Ok(QuadExt { a, b, d })
    }

    pub fn rational(a: Rat) -> Self {
        QuadExt { a, b: Rat::zero(), d: 0 }
    }

    /// `sqrt(D)` itself.
    pub fn generator(d: i64) -> Result<Self, AlgebraError> {
        QuadExt::new(Rat::zero(), Rat::one(), d)
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    /// The field discriminant `D`, or 0 for an untagged rational constant.
    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadExt {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d,
        }
    }

    pub fn norm(&self) -> Rat {
        &self.a * &self.a - Rat::from_int(self.d) * &self.b * &self.b
    }

    pub fn trace(&self) -> Rat {
        Rat::from_int(2) * &self.a
    }

    /// Moves an untagged constant into `Q(sqrt(d))`.
    pub fn with_field(mut self, d: i64) -> Self {
        if self.d == 0 {
            self.d = d;
        }
        self
    }

    /// The common field of two operands.
    pub fn common_field(&self, o: &Self) -> Result<i64, AlgebraError> {
        match (self.d, o.d) {
            (0, d) | (d, 0) => Ok(d),
            (x, y) if x == y => Ok(x),
            (x, y) => Err(AlgebraError::MixedField(x, y)),
        }
    }

    fn field_with(&self, o: &Self) -> i64 {
        match self.common_field(o) {
            Ok(d) => d,
            Err(e) => panic!("{e}"),
        }
    }

    fn add_ref(&self, o: &Self) -> Self {
        let d = self.field_with(o);
        QuadExt {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
            d,
        }
    }

    fn sub_ref(&self, o: &Self) -> Self {
        let d = self.field_with(o);
        QuadExt {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
            d,
        }
    }

    fn mul_ref(&self, o: &Self) -> Self {
        let d = self.field_with(o);
        let dd = Rat::from_int(d);
        QuadExt {
            a: &self.a * &o.a + dd * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
            d,
        }
    }

    fn div_ref(&self, o: &Self) -> Self {
        let inv = o.inv().expect("division by zero");
        self.mul_ref(&inv)
    }

    /// Key for deterministic sorting: `(D, a, b)`.
    pub fn sort_key(&self) -> (i64, Rat, Rat) {
        (self.d, self.a.clone(), self.b.clone())
    }
}

forward_ops!(QuadExt);
forward_div!(QuadExt);

impl std::ops::Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl PartialEq for QuadExt {
    fn eq(&self, o: &Self) -> bool {
        if self.b.is_zero() && o.b.is_zero() {
            return self.a == o.a;
        }
        self.d == o.d && self.a == o.a && self.b == o.b
    }
}

impl Ring for QuadExt {
    fn zero() -> Self {
        QuadExt::rational(Rat::zero())
    }
    fn one() -> Self {
        QuadExt::rational(Rat::one())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn from_i64(n: i64) -> Self {
        QuadExt::rational(Rat::from_int(n))
    }
    fn from_bigint(n: &BigInt) -> Self {
        QuadExt::rational(Rat::from_int(n.clone()))
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul_ref(&i))
    }
}

impl Field for QuadExt {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conj();
        Some(QuadExt {
            a: &c.a / &n,
            b: &c.b / &n,
            d: self.d,
        })
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn sqrt(&self) -> Option<Self> {
        sqrt_quadext(self)
    }

    fn primitive_scale(coeffs: &[&Self]) -> Option<Self> {
        let c = super::rat::content(coeffs.iter().flat_map(|x| [&x.a, &x.b]))?;
        Some(QuadExt::rational(c.inv()?))
    }

    fn from_rat(r: &Rat) -> Self {
        QuadExt::rational(r.clone())
    }
}

/// Square root inside `Q(sqrt(D))`, or `None` when `x` is not a square there.
///
/// Writes the root as `c + e*sqrt(D)`; then `c^2 - D e^2 = ±sqrt(N(x))` and
/// `c^2 = (a ± sqrt(N(x)))/2`.
pub fn sqrt_quadext(x: &QuadExt) -> Option<QuadExt> {
    if x.is_zero() {
        return Some(x.clone());
    }
    let d = x.d;
    if x.b.is_zero() {
        if let Some(r) = x.a.sqrt() {
            return Some(QuadExt::rational(r).with_field(d));
        }
        if d == 0 {
            return None;
        }
        // (e sqrt(D))^2 = e^2 D
        let e2 = &x.a / &Rat::from_int(d);
        return e2.sqrt().map(|e| QuadExt {
            a: Rat::zero(),
            b: e,
            d,
        });
    }
    let n = x.norm().sqrt()?;
    let two = Rat::from_int(2);
    for s in [n.clone(), -n] {
        let c2 = (&x.a + &s) / &two;
        if let Some(c) = c2.sqrt() {
            if c.is_zero() {
                continue;
            }
            let e = &x.b / &(&two * &c);
            let cand = QuadExt { a: c, b: e, d };
            if &cand * &cand == *x {
                return Some(cand);
            }
        }
    }
    None
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if !self.a.is_zero() {
            write!(f, "{}", self.a)?;
            if self.b.signum() > 0 {
                write!(f, "+")?;
            }
        }
        write!(f, "{}*sqrt({})", self.b, self.d)
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> QuadExt {
        QuadExt::new(Rat::from_int(a), Rat::from_int(b), -3).unwrap()
    }

    #[test]
    fn sqrt_examples() {
        // (1 + sqrt(-3))^2 = -2 + 2 sqrt(-3)
        let r = sqrt_quadext(&q(-2, 2)).unwrap();
        assert!(r == q(1, 1) || r == q(-1, -1));
        assert_eq!(sqrt_quadext(&QuadExt::from_i64(4)).unwrap(), QuadExt::from_i64(2));
        // sqrt(-3) has norm 3, not a rational square
        assert!(sqrt_quadext(&q(0, 1)).is_none());
        // -3 = (sqrt(-3))^2
        assert_eq!(sqrt_quadext(&q(-3, 0)).unwrap(), q(0, 1));
    }

    #[test]
    fn conj_is_involution() {
        let x = QuadExt::new(Rat::new(3, 7), Rat::new(-5, 2), -3).unwrap();
        assert_eq!(x.conj().conj(), x);
        assert_eq!((&x * &x.conj()), QuadExt::rational(x.norm()));
    }

    #[test]
    fn rejects_non_squarefree() {
        assert!(QuadExt::new(Rat::one(), Rat::one(), 12).is_err());
        assert!(QuadExt::new(Rat::one(), Rat::one(), 1).is_err());
    }

    #[test]
    #[should_panic(expected = "mixed quadratic fields")]
    fn mixed_fields_panic() {
        let x = QuadExt::generator(-3).unwrap();
        let y = QuadExt::generator(5).unwrap();
        let _ = x + y;
    }

    #[test]
    fn display() {
        assert_eq!(q(-757109813, -168316272).to_string(), "-757109813-168316272*sqrt(-3)");
        assert_eq!(q(0, 2).to_string(), "2*sqrt(-3)");
    }
}
