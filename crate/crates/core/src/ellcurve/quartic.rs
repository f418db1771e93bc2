//! Genus-one quartics `y^2 = R(X)` and their Jacobians.
//!
//! With a rational zero point the quartic is isomorphic to its Jacobian.
//! The map is built in stages: optionally `X -> 1/X` (zero point at
//! infinity), a translation putting the zero point at `X = 0`, then either
//! Connell's transformation (zero point `(0, q)` with `q != 0`) or the
//! root form (zero point `(0, 0)`), and finally completion to short form.

use std::fmt;

use crate::algebra::{Field, Poly};

use super::curve::{to_short_iso, CurvePoint, WeierstrassCurve, WeierstrassIso};
use super::EllCurveError;

/// A point of `y^2 = R(X)`: affine, or one of the two points at infinity
/// labelled by `w = lim y / X^2`, a square root of the leading coefficient.
#[derive(Clone, PartialEq)]
pub enum QuarticPoint<F> {
    Affine(F, F),
    Infinity(F),
}

impl<F: Field> fmt::Display for QuarticPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuarticPoint::Affine(x, y) => write!(f, "({x}, {y})"),
            QuarticPoint::Infinity(w) => write!(f, "(inf, {w})"),
        }
    }
}

impl<F: fmt::Debug> fmt::Debug for QuarticPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuarticPoint::Affine(x, y) => write!(f, "({x:?}, {y:?})"),
            QuarticPoint::Infinity(w) => write!(f, "(inf, {w:?})"),
        }
    }
}

pub fn quartic_contains<F: Field>(r: &Poly<F>, p: &QuarticPoint<F>) -> bool {
    match p {
        QuarticPoint::Affine(x, y) => r.eval(x) == y.clone() * y,
        QuarticPoint::Infinity(w) => r.deg() == 4 && w.clone() * w == r.lc(),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Normal<F> {
    /// `v^2 = a U^4 + b U^3 + c U^2 + d U + q^2`, zero point `(0, q)`.
    Connell { q: F, a: F, b: F, c: F, d: F },
    /// `v^2 = U (a U^3 + b U^2 + c U + d)`, zero point `(0, 0)`.
    Root { a: F, b: F, c: F, d: F },
}

/// Birational map from a quartic with a marked zero point to a short
/// Weierstrass model, and back.
#[derive(Clone, Debug, PartialEq)]
pub struct QuarticMap<F> {
    inverted: bool,
    x0: F,
    normal: Normal<F>,
    long: WeierstrassCurve<F>,
    to_short: WeierstrassIso<F>,
}

/// A quartic-to-Weierstrass map followed by a Weierstrass isomorphism.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelMap<F> {
    pub quartic: QuarticMap<F>,
    pub iso: WeierstrassIso<F>,
}

impl<F: Field> ModelMap<F> {
    pub fn forward(&self, p: &QuarticPoint<F>) -> Result<CurvePoint<F>, EllCurveError> {
        let w = self.quartic.forward(p)?;
        Ok(self.iso.apply_point(&w))
    }

    pub fn backward(&self, p: &CurvePoint<F>) -> Result<QuarticPoint<F>, EllCurveError> {
        let w = self.iso.inverse().apply_point(p);
        self.quartic.backward(&w)
    }

    /// Appends a further isomorphism of the Weierstrass side.
    pub fn then(&self, iso: &WeierstrassIso<F>) -> Self {
        ModelMap {
            quartic: self.quartic.clone(),
            iso: self.iso.then(iso),
        }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G + Copy) -> ModelMap<G> {
        ModelMap {
            quartic: self.quartic.map(f),
            iso: self.iso.map(f),
        }
    }
}

fn coeffs4<F: Field>(r: &Poly<F>) -> [F; 5] {
    [r.coeff(0), r.coeff(1), r.coeff(2), r.coeff(3), r.coeff(4)]
}

impl<F: Field> QuarticMap<F> {
    pub fn short_curve(&self) -> WeierstrassCurve<F> {
        self.to_short.apply_curve(&self.long)
    }

    fn map<G: Field>(&self, f: impl Fn(&F) -> G + Copy) -> QuarticMap<G> {
        QuarticMap {
            inverted: self.inverted,
            x0: f(&self.x0),
            normal: match &self.normal {
                Normal::Connell { q, a, b, c, d } => Normal::Connell {
                    q: f(q),
                    a: f(a),
                    b: f(b),
                    c: f(c),
                    d: f(d),
                },
                Normal::Root { a, b, c, d } => Normal::Root {
                    a: f(a),
                    b: f(b),
                    c: f(c),
                    d: f(d),
                },
            },
            long: self.long.map(f),
            to_short: self.to_short.map(f),
        }
    }

    fn to_normal(&self, p: &QuarticPoint<F>) -> QuarticPoint<F> {
        let p = if self.inverted {
            match p {
                QuarticPoint::Infinity(w) => QuarticPoint::Affine(F::zero(), w.clone()),
                QuarticPoint::Affine(x, y) if x.is_zero() => QuarticPoint::Infinity(y.clone()),
                QuarticPoint::Affine(x, y) => {
                    let xi = x.inv().unwrap();
                    QuarticPoint::Affine(xi.clone(), y.clone() * &xi * &xi)
                }
            }
        } else {
            p.clone()
        };
        match p {
            QuarticPoint::Affine(x, y) => QuarticPoint::Affine(x - &self.x0, y),
            inf => inf,
        }
    }

    fn from_normal(&self, p: QuarticPoint<F>) -> QuarticPoint<F> {
        let p = match p {
            QuarticPoint::Affine(u, v) => QuarticPoint::Affine(u + &self.x0, v),
            inf => inf,
        };
        if !self.inverted {
            return p;
        }
        match p {
            QuarticPoint::Infinity(w) => QuarticPoint::Affine(F::zero(), w),
            QuarticPoint::Affine(x, y) if x.is_zero() => QuarticPoint::Infinity(y),
            QuarticPoint::Affine(x, y) => {
                let xi = x.inv().unwrap();
                QuarticPoint::Affine(xi.clone(), y * &xi * &xi)
            }
        }
    }

    /// Image on the short Weierstrass model.
    pub fn forward(&self, p: &QuarticPoint<F>) -> Result<CurvePoint<F>, EllCurveError> {
        let n = self.to_normal(p);
        let two = F::from_i64(2);
        let long = match (&self.normal, &n) {
            (Normal::Connell { q, c, d, .. }, QuarticPoint::Affine(u, v)) => {
                if u.is_zero() {
                    if v == q {
                        CurvePoint::Infinity
                    } else {
                        let a2 = self.long.a2.clone();
                        let y = self.long.a1.clone() * &a2 - &self.long.a3;
                        CurvePoint::Affine(-a2, y)
                    }
                } else {
                    let u2 = u.clone() * u;
                    let vq = v.clone() + q;
                    let x = (two.clone() * q * &vq + &(d.clone() * u)) / u2.clone();
                    let four_q2 = F::from_i64(4) * q * q;
                    let y = (four_q2 * &vq
                        + &(two.clone() * q * &(d.clone() * u + &(c.clone() * &u2)))
                        - &(d.clone() * d * &u2 / (two.clone() * q)))
                        / (u2 * u);
                    CurvePoint::Affine(x, y)
                }
            }
            (Normal::Connell { q, .. }, QuarticPoint::Infinity(w)) => {
                CurvePoint::Affine(two * q * w, F::zero())
            }
            (Normal::Root { d, .. }, QuarticPoint::Affine(u, v)) => {
                if u.is_zero() {
                    CurvePoint::Infinity
                } else {
                    let ui = u.inv().unwrap();
                    CurvePoint::Affine(d.clone() * &ui, d.clone() * v * &ui * &ui)
                }
            }
            (Normal::Root { d, .. }, QuarticPoint::Infinity(w)) => {
                CurvePoint::Affine(F::zero(), d.clone() * w)
            }
        };
        Ok(self.to_short.apply_point(&long))
    }

    /// Preimage on the quartic of a point of the short model.
    pub fn backward(&self, p: &CurvePoint<F>) -> Result<QuarticPoint<F>, EllCurveError> {
        let long = self.to_short.inverse().apply_point(p);
        let two = F::from_i64(2);
        let n = match (&self.normal, &long) {
            (Normal::Connell { q, .. }, CurvePoint::Infinity) => {
                QuarticPoint::Affine(F::zero(), q.clone())
            }
            (Normal::Connell { q, c, d, .. }, CurvePoint::Affine(x, y)) => {
                let a2 = &self.long.a2;
                if (x.clone() + a2).is_zero()
                    && *y == self.long.a1.clone() * a2 - &self.long.a3
                {
                    QuarticPoint::Affine(F::zero(), -q.clone())
                } else if y.is_zero() {
                    if (x.clone() + &self.long.a2).is_zero() {
                        return Err(EllCurveError::Unmappable(p.to_string()));
                    }
                    QuarticPoint::Infinity(x.clone() / (two * q))
                } else {
                    let u = (two.clone() * q * &(x.clone() + c) - &(d.clone() * d / (two.clone() * q)))
                        / y.clone();
                    let v = -q.clone() + &(u.clone() * &(u.clone() * x - d) / (two * q));
                    QuarticPoint::Affine(u, v)
                }
            }
            (Normal::Root { .. }, CurvePoint::Infinity) => {
                QuarticPoint::Affine(F::zero(), F::zero())
            }
            (Normal::Root { d, .. }, CurvePoint::Affine(x, y)) => {
                if x.is_zero() {
                    QuarticPoint::Infinity(y.clone() / d.clone())
                } else {
                    let u = d.clone() / x.clone();
                    let v = y.clone() * &u * &u / d.clone();
                    QuarticPoint::Affine(u, v)
                }
            }
        };
        Ok(self.from_normal(n))
    }
}

/// Weierstrass model of `y^2 = r(X)` with `zero` sent to the origin.
pub fn quartic_to_weierstrass<F: Field>(
    r: &Poly<F>,
    zero: &QuarticPoint<F>,
) -> Result<(WeierstrassCurve<F>, ModelMap<F>), EllCurveError> {
    if r.deg() != 4 {
        return Err(EllCurveError::NotQuartic(r.deg()));
    }
    if !quartic_contains(r, zero) {
        return Err(EllCurveError::NotOnCurve(zero.to_string()));
    }
    let (inverted, poly, x0, y0) = match zero {
        QuarticPoint::Affine(x, y) => (false, r.clone(), x.clone(), y.clone()),
        QuarticPoint::Infinity(w) => (true, r.reverse(4), F::zero(), w.clone()),
    };
    let shifted = poly.compose(&Poly::new(vec![x0.clone(), F::one()]));
    let [e, d, c, b, a] = coeffs4(&shifted);
    let (normal, long) = if y0.is_zero() {
        debug_assert!(e.is_zero());
        if d.is_zero() {
            return Err(EllCurveError::Singular);
        }
        // Y^2 = X^3 + c X^2 + b d X + a d^2
        let long = WeierstrassCurve::new(
            F::zero(),
            c.clone(),
            F::zero(),
            b.clone() * &d,
            a.clone() * &d * &d,
        )?;
        (Normal::Root { a, b, c, d }, long)
    } else {
        let q = y0;
        let two = F::from_i64(2);
        let four_q2 = F::from_i64(4) * &q * &q;
        let a1 = d.clone() / q.clone();
        let a2 = c.clone() - &(d.clone() * &d / four_q2.clone());
        let a3 = two * &q * &b;
        let a4 = -(four_q2 * &a);
        let a6 = a2.clone() * &a4;
        let long = WeierstrassCurve::new(a1, a2, a3, a4, a6)?;
        (Normal::Connell { q, a, b, c, d }, long)
    };
    let to_short = to_short_iso(&long);
    let qm = QuarticMap {
        inverted,
        x0,
        normal,
        long,
        to_short,
    };
    let curve = qm.short_curve();
    Ok((
        curve,
        ModelMap {
            quartic: qm,
            iso: WeierstrassIso::identity(),
        },
    ))
}

/// Classical invariants `(I, J)` of `a X^4 + b X^3 + c X^2 + d X + e`.
pub fn quartic_invariants<F: Field>(r: &Poly<F>) -> (F, F) {
    let [e, d, c, b, a] = coeffs4(r);
    let i = F::from_i64(12) * &a * &e - &(F::from_i64(3) * &b * &d) + &(c.clone() * &c);
    let j = F::from_i64(72) * &a * &c * &e + &(F::from_i64(9) * &b * &c * &d)
        - &(F::from_i64(27) * &a * &d * &d)
        - &(F::from_i64(27) * &e * &b * &b)
        - &(F::from_i64(2) * &c * &c * &c);
    (i, j)
}

/// The Jacobian `y^2 = x^3 - 27 I x - 27 J`, needing no rational point.
pub fn quartic_jacobian_invariants<F: Field>(r: &Poly<F>) -> Result<WeierstrassCurve<F>, EllCurveError> {
    let (i, j) = quartic_invariants(r);
    WeierstrassCurve::short(F::from_i64(-27) * &i, F::from_i64(-27) * &j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Rat, Ring};

    fn rq(n: i64) -> Rat {
        Rat::from_int(n)
    }

    #[test]
    fn x4_plus_1_round_trip() {
        let r = Poly::<Rat>::from_i64s(&[1, 0, 0, 0, 1]);
        let zero = QuarticPoint::Affine(rq(0), rq(1));
        let (e, m) = quartic_to_weierstrass(&r, &zero).unwrap();
        assert!(e.is_short());
        assert!(m.forward(&zero).unwrap().is_infinity());
        for p in [
            QuarticPoint::Affine(rq(0), rq(-1)),
            QuarticPoint::Infinity(rq(1)),
            QuarticPoint::Infinity(rq(-1)),
        ] {
            let w = m.forward(&p).unwrap();
            assert!(e.contains(&w));
            assert_eq!(m.backward(&w).unwrap(), p);
        }
    }

    #[test]
    fn zero_with_vanishing_y() {
        // y^2 = x (x - 1)(x - 2)(x - 3) + 0, zero at (0, 0)
        let r = Poly::<Rat>::from_i64s(&[0, -6, 11, -6, 1]);
        let zero = QuarticPoint::Affine(rq(0), rq(0));
        let (e, m) = quartic_to_weierstrass(&r, &zero).unwrap();
        assert!(m.forward(&zero).unwrap().is_infinity());
        for p in [
            QuarticPoint::Affine(rq(1), rq(0)),
            QuarticPoint::Affine(rq(4), rq(24).sqrt().unwrap_or(rq(0))),
            QuarticPoint::Infinity(rq(1)),
        ] {
            if !quartic_contains(&r, &p) {
                continue;
            }
            let w = m.forward(&p).unwrap();
            assert!(e.contains(&w));
            assert_eq!(m.backward(&w).unwrap(), p);
        }
    }

    #[test]
    fn jacobian_models_agree_on_j() {
        let r = Poly::<Rat>::from_i64s(&[4, -3, 1, 2, 1]);
        let zero = QuarticPoint::Affine(rq(0), rq(2));
        let (e, _) = quartic_to_weierstrass(&r, &zero).unwrap();
        let f = quartic_jacobian_invariants(&r).unwrap();
        let j = |c: &WeierstrassCurve<Rat>| c.c4().pow(3) / c.discriminant();
        assert_eq!(j(&e), j(&f));
    }
}
