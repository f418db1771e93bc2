use std::fmt;

use num_bigint::BigInt;

use super::{forward_div, forward_ops, Field, Poly, Ring};

/// Rational function `num/den` in one variable with `gcd(num, den) = 1` and
/// `den` monic.
#[derive(Clone, PartialEq)]
pub struct RatFunc<F> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFunc<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc {
                num,
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.deg() > 0 {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        } else {
            (num, den)
        };
        let lc = d.lc();
        if !lc.is_one() {
            let inv = lc.inv().unwrap();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        RatFunc { num: n, den: d }
    }

    /// Builds from parts already known to be coprime with monic denominator.
    pub fn from_parts_unchecked(num: Poly<F>, den: Poly<F>) -> Self {
        debug_assert!(den.is_monic());
        RatFunc { num, den }
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(a: F) -> Self {
        RatFunc::from_poly(Poly::constant(a))
    }

    /// The variable itself.
    pub fn var() -> Self {
        RatFunc::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.deg() == 0
    }

    pub fn as_poly(&self) -> Option<&Poly<F>> {
        if self.is_polynomial() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<F> {
        if self.is_polynomial() && self.num.deg() <= 0 {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    /// Height of the function as a map to the projective line.
    pub fn degree(&self) -> usize {
        self.num.deg().max(self.den.deg()).max(0) as usize
    }

    /// Valuation at the finite place of the monic irreducible `pi`.
    /// Returns `None` for the zero function.
    pub fn valuation(&self, pi: &Poly<F>) -> Option<i64> {
        if self.num.is_zero() {
            return None;
        }
        let (a, _) = self.num.split_off_power(pi);
        let (b, _) = self.den.split_off_power(pi);
        Some(a as i64 - b as i64)
    }

    /// Valuation at infinity, `deg den - deg num`.
    pub fn valuation_at_infinity(&self) -> Option<i64> {
        if self.num.is_zero() {
            None
        } else {
            Some(self.den.deg() - self.num.deg())
        }
    }

    /// Substitute the variable by another rational function.
    pub fn compose(&self, g: &RatFunc<F>) -> RatFunc<F> {
        eval_poly_at(&self.num, g) / eval_poly_at(&self.den, g)
    }

    /// Evaluate at a point of the constant field; `None` at a pole.
    pub fn eval(&self, x: &F) -> Option<F> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    /// `f(-x)`.
    pub fn reflect(&self) -> Self {
        RatFunc::new(self.num.reflect(), self.den.reflect())
    }

    /// `f(1/x)`.
    pub fn invert_variable(&self) -> Self {
        let n = self.num.deg().max(self.den.deg()).max(0) as usize;
        RatFunc::new(self.num.reverse(n), self.den.reverse(n))
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> RatFunc<G> {
        RatFunc::new(self.num.map(&f), self.den.map(&f))
    }

    /// For a function of `x^2`, the function of the square.
    pub fn even_part_in_square(&self) -> Option<Self> {
        Some(RatFunc::new(
            self.num.even_part_in_square()?,
            self.den.even_part_in_square()?,
        ))
    }

    pub fn substitute_square(&self) -> Self {
        RatFunc::new(self.num.substitute_square(), self.den.substitute_square())
    }

    fn add_ref(&self, o: &Self) -> Self {
        if self.den == o.den {
            return RatFunc::new(self.num.clone() + &o.num, self.den.clone());
        }
        RatFunc::new(
            self.num.clone() * &o.den + &(o.num.clone() * &self.den),
            self.den.clone() * &o.den,
        )
    }

    fn sub_ref(&self, o: &Self) -> Self {
        if self.den == o.den {
            return RatFunc::new(self.num.clone() - &o.num, self.den.clone());
        }
        RatFunc::new(
            self.num.clone() * &o.den - &(o.num.clone() * &self.den),
            self.den.clone() * &o.den,
        )
    }

    fn mul_ref(&self, o: &Self) -> Self {
        if self.num.is_zero() || o.num.is_zero() {
            return RatFunc::zero();
        }
        // cross-cancel before multiplying to keep operands small
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n1 = if g1.deg() > 0 { self.num.div_rem(&g1).0 } else { self.num.clone() };
        let d2 = if g1.deg() > 0 { o.den.div_rem(&g1).0 } else { o.den.clone() };
        let n2 = if g2.deg() > 0 { o.num.div_rem(&g2).0 } else { o.num.clone() };
        let d1 = if g2.deg() > 0 { self.den.div_rem(&g2).0 } else { self.den.clone() };
        let num = n1 * &n2;
        let den = d1 * &d2;
        let lc = den.lc();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.inv().unwrap();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    fn div_ref(&self, o: &Self) -> Self {
        let inv = o.inv().expect("division by the zero rational function");
        self.mul_ref(&inv)
    }
}

/// Horner evaluation of a polynomial at a rational function.
pub fn eval_poly_at<F: Field>(p: &Poly<F>, x: &RatFunc<F>) -> RatFunc<F> {
    if let Some(px) = x.as_poly() {
        return RatFunc::from_poly(p.compose(px));
    }
    // homogenize: p(n/d) = sum a_i n^i d^{k-i} / d^k
    let k = p.deg().max(0) as usize;
    let mut num = Poly::zero();
    let mut npow = Poly::one();
    let dpows: Vec<Poly<F>> = {
        let mut v = vec![Poly::one()];
        for i in 1..=k {
            let next = v[i - 1].clone() * &x.den;
            v.push(next);
        }
        v
    };
    for (i, a) in p.coeffs().iter().enumerate() {
        num = num + &(npow.clone() * &dpows[k - i]).scale(a);
        npow = npow * &x.num;
    }
    RatFunc::new(num, dpows[k].clone())
}

forward_ops!(RatFunc<F>, F: Field);
forward_div!(RatFunc<F>, F: Field);

impl<F: Field> std::ops::Neg for RatFunc<F> {
    type Output = RatFunc<F>;
    fn neg(self) -> RatFunc<F> {
        RatFunc {
            num: -self.num,
            den: self.den,
        }
    }
}

impl<F: Field> Ring for RatFunc<F> {
    fn zero() -> Self {
        RatFunc::from_poly(Poly::zero())
    }
    fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn from_i64(n: i64) -> Self {
        RatFunc::constant(F::from_i64(n))
    }
    fn from_bigint(n: &BigInt) -> Self {
        RatFunc::constant(F::from_bigint(n))
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul_ref(&i))
    }
}

impl<F: Field> Field for RatFunc<F> {
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        let lc = self.num.lc();
        let inv = lc.inv().unwrap();
        Some(RatFunc {
            num: self.den.scale(&inv),
            den: self.num.scale(&inv),
        })
    }

    fn characteristic(&self) -> u64 {
        self.den.lc().characteristic()
    }

    fn sqrt(&self) -> Option<Self> {
        let n = poly_sqrt(&self.num)?;
        let d = poly_sqrt(&self.den)?;
        Some(RatFunc::new(n, d))
    }

    fn is_square(&self) -> Option<bool> {
        if self.sqrt().is_some() {
            return Some(true);
        }
        // Undecided only when the leading coefficient test was inconclusive.
        match self.num.lc().is_square() {
            Some(_) => Some(false),
            None => None,
        }
    }

    fn from_rat(r: &super::Rat) -> Self {
        RatFunc::constant(F::from_rat(r))
    }
}

/// Square root of a polynomial, if it is the square of a polynomial over
/// the same field. Uses the truncated power-series root of the monic part
/// and verifies it exactly.
pub fn poly_sqrt<F: Field>(f: &Poly<F>) -> Option<Poly<F>> {
    if f.is_zero() {
        return Some(Poly::zero());
    }
    let d = f.deg() as usize;
    if d % 2 == 1 {
        return None;
    }
    let lc = f.lc();
    let s = lc.sqrt()?;
    let m = f.scale(&lc.inv().unwrap());
    let (q, r) = truncated_sqrt(&m);
    if !r.is_zero() {
        return None;
    }
    Some(q.scale(&s))
}

/// For monic `p` of even degree `2n`, the unique monic `q` of degree `n`
/// with `deg(q^2 - p) <= n - 1`, together with `r = q^2 - p`.
pub fn truncated_sqrt<F: Field>(p: &Poly<F>) -> (Poly<F>, Poly<F>) {
    let d = p.deg();
    assert!(d >= 0 && d % 2 == 0, "even degree required");
    assert!(p.lc().is_one(), "monic polynomial required");
    let n = (d / 2) as usize;
    let two_inv = F::from_i64(2).inv().expect("characteristic 2 unsupported");
    // q = x^n + q_{n-1} x^{n-1} + ... ; match coefficients of x^{2n-k}
    let mut q = vec![F::zero(); n + 1];
    q[n] = F::one();
    for k in 1..=n {
        let mut s = F::zero();
        for i in 1..k {
            s = s + &(q[n - i].clone() * &q[n - (k - i)]);
        }
        q[n - k] = (p.coeff(2 * n - k) - &s) * &two_inv;
    }
    let q = Poly::new(q);
    let r = q.clone() * &q - p;
    (q, r)
}

impl<F: Field> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl<F: Field> fmt::Debug for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rat;

    fn p(c: &[i64]) -> Poly<Rat> {
        Poly::from_i64s(c)
    }

    #[test]
    fn lowest_terms() {
        let f = RatFunc::new(p(&[-1, 0, 1]), p(&[-2, 2]));
        assert_eq!(f.num(), &Poly::new(vec![Rat::new(1, 2), Rat::new(1, 2)]));
        assert_eq!(f.den(), &p(&[1]));
    }

    #[test]
    fn valuations() {
        let t = RatFunc::<Rat>::var();
        let f = t.pow(3) / (t.clone() - RatFunc::one()).pow(2);
        assert_eq!(f.valuation(&p(&[0, 1])), Some(3));
        assert_eq!(f.valuation(&p(&[-1, 1])), Some(-2));
        assert_eq!(f.valuation_at_infinity(), Some(-1));
    }

    #[test]
    fn sqrt_of_square_functions() {
        let f = RatFunc::new(p(&[1, 2, 1]).scale(&Rat::from_int(9)), p(&[0, 0, 1]));
        let s = f.sqrt().unwrap();
        assert_eq!(s.clone() * &s, f);
        assert!(RatFunc::new(p(&[1, 0, 1]), p(&[1])).sqrt().is_none());
    }

    #[test]
    fn compose_and_invert() {
        let t = RatFunc::<Rat>::var();
        let f = (t.clone() * &t + RatFunc::one()) / t.clone();
        let g = f.invert_variable();
        assert_eq!(g, f);
        let h = f.compose(&(t.clone() + RatFunc::one()));
        assert_eq!(h.eval(&Rat::from_int(1)), Some(Rat::new(5, 2)));
    }
}
