use std::fmt;

use crate::algebra::Field;

use super::EllCurveError;

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Clone, PartialEq)]
pub struct WeierstrassCurve<F> {
    pub a1: F,
    pub a2: F,
    pub a3: F,
    pub a4: F,
    pub a6: F,
}

#[derive(Clone, PartialEq)]
pub enum CurvePoint<F> {
    Infinity,
    Affine(F, F),
}

impl<F: Field> CurvePoint<F> {
    pub fn new(x: F, y: F) -> Self {
        CurvePoint::Affine(x, y)
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn x(&self) -> Option<&F> {
        match self {
            CurvePoint::Affine(x, _) => Some(x),
            CurvePoint::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<&F> {
        match self {
            CurvePoint::Affine(_, y) => Some(y),
            CurvePoint::Infinity => None,
        }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> CurvePoint<G> {
        match self {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => CurvePoint::Affine(f(x), f(y)),
        }
    }
}

impl<F: Field> fmt::Display for CurvePoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "O"),
            CurvePoint::Affine(x, y) => write!(f, "({x}, {y})"),
        }
    }
}

impl<F: fmt::Debug> fmt::Debug for CurvePoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "O"),
            CurvePoint::Affine(x, y) => write!(f, "({x:?}, {y:?})"),
        }
    }
}

impl<F: Field> WeierstrassCurve<F> {
    /// Checked constructor; rejects singular curves.
    pub fn new(a1: F, a2: F, a3: F, a4: F, a6: F) -> Result<Self, EllCurveError> {
        let e = WeierstrassCurve { a1, a2, a3, a4, a6 };
        if e.discriminant().is_zero() {
            return Err(EllCurveError::Singular);
        }
        Ok(e)
    }

    pub fn short(a4: F, a6: F) -> Result<Self, EllCurveError> {
        WeierstrassCurve::new(F::zero(), F::zero(), F::zero(), a4, a6)
    }

    /// No validity check; singular fibres of a family need this.
    pub fn new_unchecked(a1: F, a2: F, a3: F, a4: F, a6: F) -> Self {
        WeierstrassCurve { a1, a2, a3, a4, a6 }
    }

    pub fn is_short(&self) -> bool {
        self.a1.is_zero() && self.a2.is_zero() && self.a3.is_zero()
    }

    pub fn b2(&self) -> F {
        self.a1.clone() * &self.a1 + &(F::from_i64(4) * &self.a2)
    }

    pub fn b4(&self) -> F {
        self.a1.clone() * &self.a3 + &(F::from_i64(2) * &self.a4)
    }

    pub fn b6(&self) -> F {
        self.a3.clone() * &self.a3 + &(F::from_i64(4) * &self.a6)
    }

    pub fn b8(&self) -> F {
        let a1 = &self.a1;
        let (a2, a3, a4, a6) = (&self.a2, &self.a3, &self.a4, &self.a6);
        a1.clone() * a1 * a6 + &(F::from_i64(4) * a2 * a6)
            - &(a1.clone() * a3 * a4)
            + &(a2.clone() * a3 * a3)
            - &(a4.clone() * a4)
    }

    pub fn c4(&self) -> F {
        let b2 = self.b2();
        b2.clone() * &b2 - &(F::from_i64(24) * &self.b4())
    }

    pub fn c6(&self) -> F {
        let (b2, b4, b6) = (self.b2(), self.b4(), self.b6());
        -(b2.clone() * &b2 * &b2) + &(F::from_i64(36) * &b2 * &b4) - &(F::from_i64(216) * &b6)
    }

    pub fn discriminant(&self) -> F {
        if self.is_short() {
            // -16 (4 a4^3 + 27 a6^2)
            let a4 = &self.a4;
            let a6 = &self.a6;
            let s = F::from_i64(4) * a4 * a4 * a4 + &(F::from_i64(27) * a6 * a6);
            return F::from_i64(-16) * &s;
        }
        let (b2, b4, b6, b8) = (self.b2(), self.b4(), self.b6(), self.b8());
        -(b2.clone() * &b2 * &b8) - &(F::from_i64(8) * &b4 * &b4 * &b4)
            - &(F::from_i64(27) * &b6 * &b6)
            + &(F::from_i64(9) * &b2 * &b4 * &b6)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> WeierstrassCurve<G> {
        WeierstrassCurve {
            a1: f(&self.a1),
            a2: f(&self.a2),
            a3: f(&self.a3),
            a4: f(&self.a4),
            a6: f(&self.a6),
        }
    }

    /// Left side minus right side of the equation at `(x, y)`.
    pub fn residual(&self, x: &F, y: &F) -> F {
        let lhs = y.clone() * y + &(self.a1.clone() * x * y) + &(self.a3.clone() * y);
        let rhs = x.clone() * x * x
            + &(self.a2.clone() * x * x)
            + &(self.a4.clone() * x)
            + &self.a6;
        lhs - &rhs
    }

    pub fn contains(&self, p: &CurvePoint<F>) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine(x, y) => self.residual(x, y).is_zero(),
        }
    }

    pub fn check(&self, p: &CurvePoint<F>) -> Result<(), EllCurveError> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(EllCurveError::NotOnCurve(p.to_string()))
        }
    }

    pub fn neg(&self, p: &CurvePoint<F>) -> CurvePoint<F> {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => {
                let ny = -y.clone() - &(self.a1.clone() * x) - &self.a3;
                CurvePoint::Affine(x.clone(), ny)
            }
        }
    }

    /// Chord-tangent addition; inputs are assumed to be on the curve.
    pub fn add_unchecked(&self, p: &CurvePoint<F>, q: &CurvePoint<F>) -> CurvePoint<F> {
        let (x1, y1, x2, y2) = match (p, q) {
            (CurvePoint::Infinity, _) => return q.clone(),
            (_, CurvePoint::Infinity) => return p.clone(),
            (CurvePoint::Affine(x1, y1), CurvePoint::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let (lambda, nu) = if x1 == x2 {
            let sum = y1.clone() + y2 + &(self.a1.clone() * x2) + &self.a3;
            if sum.is_zero() {
                return CurvePoint::Infinity;
            }
            let three = F::from_i64(3);
            let two = F::from_i64(2);
            let num = three * x1 * x1 + &(two.clone() * &self.a2 * x1) + &self.a4
                - &(self.a1.clone() * y1);
            let den = two * y1 + &(self.a1.clone() * x1) + &self.a3;
            let lambda = num / den.clone();
            let nu = (-(x1.clone() * x1 * x1) + &(self.a4.clone() * x1)
                + &(F::from_i64(2) * &self.a6)
                - &(self.a3.clone() * y1))
                / den;
            (lambda, nu)
        } else {
            let dx = x2.clone() - x1;
            let lambda = (y2.clone() - y1) / dx.clone();
            let nu = (y1.clone() * x2 - &(y2.clone() * x1)) / dx;
            (lambda, nu)
        };
        let x3 = lambda.clone() * &lambda + &(self.a1.clone() * &lambda) - &self.a2 - x1 - x2;
        let y3 = -((lambda.clone() + &self.a1) * &x3) - &nu - &self.a3;
        CurvePoint::Affine(x3, y3)
    }

    pub fn add(&self, p: &CurvePoint<F>, q: &CurvePoint<F>) -> Result<CurvePoint<F>, EllCurveError> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.add_unchecked(p, q))
    }

    pub fn sub_unchecked(&self, p: &CurvePoint<F>, q: &CurvePoint<F>) -> CurvePoint<F> {
        self.add_unchecked(p, &self.neg(q))
    }

    pub fn double(&self, p: &CurvePoint<F>) -> CurvePoint<F> {
        self.add_unchecked(p, p)
    }

    /// `n P` by double-and-add.
    pub fn mul(&self, p: &CurvePoint<F>, n: i64) -> CurvePoint<F> {
        let base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = CurvePoint::Infinity;
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &b);
            }
            k >>= 1;
            if k > 0 {
                b = self.double(&b);
            }
        }
        acc
    }

    pub fn sum(&self, pts: &[CurvePoint<F>]) -> CurvePoint<F> {
        pts.iter()
            .fold(CurvePoint::Infinity, |acc, p| self.add_unchecked(&acc, p))
    }
}

impl<F: Field> fmt::Display for WeierstrassCurve<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[a1={}, a2={}, a3={}, a4={}, a6={}]",
            self.a1, self.a2, self.a3, self.a4, self.a6
        )
    }
}

impl<F: fmt::Debug> fmt::Debug for WeierstrassCurve<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[a1={:?}, a2={:?}, a3={:?}, a4={:?}, a6={:?}]",
            self.a1, self.a2, self.a3, self.a4, self.a6
        )
    }
}

/// The change of variables `x = u^2 x' + r`, `y = u^3 y' + s u^2 x' + t`
/// taking a model `E` to `E'`.
#[derive(Clone, PartialEq, Debug)]
pub struct WeierstrassIso<F> {
    pub u: F,
    pub r: F,
    pub s: F,
    pub t: F,
}

impl<F: Field> WeierstrassIso<F> {
    pub fn identity() -> Self {
        WeierstrassIso {
            u: F::one(),
            r: F::zero(),
            s: F::zero(),
            t: F::zero(),
        }
    }

    pub fn scaling(u: F) -> Self {
        WeierstrassIso {
            u,
            r: F::zero(),
            s: F::zero(),
            t: F::zero(),
        }
    }

    pub fn apply_curve(&self, e: &WeierstrassCurve<F>) -> WeierstrassCurve<F> {
        let (u, r, s, t) = (&self.u, &self.r, &self.s, &self.t);
        let two = F::from_i64(2);
        let three = F::from_i64(3);
        let u2 = u.clone() * u;
        let u3 = u2.clone() * u;
        let a1 = (e.a1.clone() + &(two.clone() * s)) / u.clone();
        let a2 = (e.a2.clone() - &(s.clone() * &e.a1) + &(three.clone() * r) - &(s.clone() * s)) / u2.clone();
        let a3 = (e.a3.clone() + &(r.clone() * &e.a1) + &(two.clone() * t)) / u3.clone();
        let a4 = (e.a4.clone() - &(s.clone() * &e.a3)
            + &(two.clone() * r * &e.a2)
            - &((t.clone() + &(r.clone() * s)) * &e.a1)
            + &(three * r * r)
            - &(two * s * t))
            / (u2.clone() * &u2);
        let a6 = (e.a6.clone() + &(r.clone() * &e.a4) + &(r.clone() * r * &e.a2) + &(r.clone() * r * r)
            - &(t.clone() * &e.a3)
            - &(t.clone() * t)
            - &(r.clone() * t * &e.a1))
            / (u3.clone() * &u3);
        WeierstrassCurve { a1, a2, a3, a4, a6 }
    }

    pub fn apply_point(&self, p: &CurvePoint<F>) -> CurvePoint<F> {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => {
                let u2 = self.u.clone() * &self.u;
                let xp = (x.clone() - &self.r) / u2.clone();
                let yp = (y.clone() - &(self.s.clone() * &u2 * &xp) - &self.t) / (u2 * &self.u);
                CurvePoint::Affine(xp, yp)
            }
        }
    }

    pub fn inverse(&self) -> Self {
        let ui = self.u.inv().expect("u is a unit");
        WeierstrassIso {
            u: ui.clone(),
            r: -(self.r.clone() * &ui * &ui),
            s: -(self.s.clone() * &ui),
            t: (self.r.clone() * &self.s - &self.t) * &ui * &ui * &ui,
        }
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &Self) -> Self {
        let (u1, r1, s1, t1) = (&self.u, &self.r, &self.s, &self.t);
        let (u2, r2, s2, t2) = (&other.u, &other.r, &other.s, &other.t);
        let u1sq = u1.clone() * u1;
        WeierstrassIso {
            u: u1.clone() * u2,
            r: r1.clone() + &(u1sq.clone() * r2),
            s: s1.clone() + &(u1.clone() * s2),
            t: t1.clone() + &(s1.clone() * &u1sq * r2) + &(u1sq * u1 * t2),
        }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> WeierstrassIso<G> {
        WeierstrassIso {
            u: f(&self.u),
            r: f(&self.r),
            s: f(&self.s),
            t: f(&self.t),
        }
    }
}

/// The isomorphism onto `y^2 = x^3 + A x + B` (unit scaling).
pub fn to_short_iso<F: Field>(e: &WeierstrassCurve<F>) -> WeierstrassIso<F> {
    let two = F::from_i64(2);
    let s = -(e.a1.clone() / two.clone());
    let r = (s.clone() * &s + &(s.clone() * &e.a1) - &e.a2) / F::from_i64(3);
    let t = -((e.a3.clone() + &(r.clone() * &e.a1)) / two);
    WeierstrassIso {
        u: F::one(),
        r,
        s,
        t,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Fp, Rat, Ring};

    fn rq(n: i64) -> Rat {
        Rat::from_int(n)
    }

    #[test]
    fn small_rational_curve() {
        // y^2 + y = x^3 - x, generator (0, 0) of infinite order
        let e = WeierstrassCurve::new(rq(0), rq(0), rq(1), rq(-1), rq(0)).unwrap();
        assert_eq!(e.discriminant(), rq(37));
        let p = CurvePoint::new(rq(0), rq(0));
        let p2 = e.double(&p);
        assert_eq!(p2, CurvePoint::new(rq(1), rq(0)));
        let p3 = e.add_unchecked(&p2, &p);
        assert_eq!(p3, CurvePoint::new(rq(-1), rq(-1)));
        assert_eq!(e.mul(&p, 3), p3);
        assert!(e.add_unchecked(&p, &e.neg(&p)).is_infinity());
        assert!(e.add(&p, &CurvePoint::new(rq(1), rq(1))).is_err());
    }

    #[test]
    fn iso_round_trip() {
        let e = WeierstrassCurve::new(rq(1), rq(-1), rq(1), rq(-2), rq(3)).unwrap();
        let iso = to_short_iso(&e);
        let s = iso.apply_curve(&e);
        assert!(s.is_short());
        let iso2 = WeierstrassIso {
            u: rq(2),
            r: rq(1),
            s: rq(3),
            t: rq(-1),
        };
        let both = iso.then(&iso2);
        assert_eq!(both.apply_curve(&e), iso2.apply_curve(&s));
        assert_eq!(iso.inverse().apply_curve(&s), e);
        assert_eq!(e.c4(), s.c4());
    }

    #[test]
    fn prime_field_group() {
        let f = |v| Fp::new(v, 53);
        let e = WeierstrassCurve::short(f(1), f(5)).unwrap();
        let mut pts = vec![CurvePoint::Infinity];
        for x in 0..53 {
            for y in 0..53 {
                if e.residual(&f(x), &f(y)).is_zero() {
                    pts.push(CurvePoint::new(f(x), f(y)));
                }
            }
        }
        let n = pts.len() as i64;
        for p in &pts {
            assert!(e.mul(p, n).is_infinity());
        }
    }
}
