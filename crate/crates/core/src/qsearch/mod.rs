//! Search for a section of a rational elliptic surface with polynomial
//! coordinates `X = x0 u^2 + a u + b`, `Y = c u^2 + d u + e`, where `x0` is
//! the node of the `I_2` fibre at infinity.
//!
//! Substituting the ansatz into `y^2 = x^3 + A x + B` leaves five equations
//! in `(a, b, c, d, e)`. With `f_k(a, b)` the `u^k` coefficient of
//! `X^3 + A X + B`, they read
//!
//! ```text
//! f4 = c^2,  f3 = 2cd,  f2 = 2ce + d^2,  f1 = 2de,  f0 = e^2.
//! ```
//!
//! For `c != 0` the first three give `d` and `e`, and the last two become
//! `G1 = G2 = 0` in `(a, b)` alone:
//!
//! ```text
//! G1 = 8 f4^2 f1 - f3 (4 f4 f2 - f3^2)
//! G2 = 64 f4^3 f0 - (4 f4 f2 - f3^2)^2
//! ```
//!
//! The resultant in `b` is the eliminant in `a`. The `c = 0` branch is
//! solved on its own from `f4 = f3 = 0`.

use std::cmp::Ordering;

use crate::algebra::quadext::sqrt_quadext;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::rat::exact_isqrt;
use crate::algebra::{factor_rationals, Field, Poly, QuadExt, Rat, RatFunc, Ring};
use crate::ellcurve::{CurvePoint, WeierstrassCurve};
use crate::kodaira::{local_type, KodairaError, Place, ShortModel, Symbol};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum QSearchError {
    #[error(transparent)]
    Kodaira(#[from] KodairaError),
    #[error("the model must be short with deg A <= 4, deg B <= 6")]
    NotRationalShort,
    #[error("fibre at infinity is {0}, not I2")]
    NotI2(Symbol),
    #[error("u^{0} coefficient does not vanish identically: node data inconsistent")]
    TopCoefficient(usize),
    #[error("no solution of the ansatz has height 3/2")]
    NotFound,
}

/// The node of the `I_2` fibre at infinity, in the chart
/// `u' = 1/u, x' = x u'^2, y' = y u'^3`.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeData {
    pub x0: Rat,
    /// The simple root of the fibre cubic.
    pub x1: Rat,
    /// Tangents at the node are rational.
    pub split: bool,
}

/// Polynomials in `b` whose coefficients are polynomials in `a`.
type Biv = Poly<Poly<Rat>>;

fn short_model(e: &WeierstrassCurve<RatFunc<Rat>>) -> Result<ShortModel<Rat>, QSearchError> {
    if !e.is_short() {
        return Err(QSearchError::NotRationalShort);
    }
    let m = ShortModel::from_curve(e)?;
    if m.a.deg() > 4 || m.b.deg() > 6 {
        return Err(QSearchError::NotRationalShort);
    }
    Ok(m)
}

pub fn node_at_infinity(e: &WeierstrassCurve<RatFunc<Rat>>) -> Result<NodeData, QSearchError> {
    let m = short_model(e)?;
    let ft = local_type(e, &Place::Infinity)?;
    if ft.symbol != Symbol::I(2) {
        return Err(QSearchError::NotI2(ft.symbol));
    }
    // chart at infinity with chi = 1
    let a = m.a.coeff(4);
    let b = m.b.coeff(6);
    let x0 = Rat::from_i64(-3) * &b / (Rat::from_i64(2) * &a);
    let x1 = Rat::from_i64(-2) * &x0;
    let split = (x0.clone() - &x1).sqrt().is_some();
    Ok(NodeData { x0, x1, split })
}

/// The `u^0 .. u^4` coefficients of `X^3 + A X + B - Y^2` as polynomials in
/// `(a, b, c, d, e)`, stored as `f_k(a, b)`; `Y^2` contributes the fixed
/// pattern `c^2, 2cd, 2ce + d^2, 2de, e^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientSystem {
    pub f: [Biv; 5],
    pub x0: Rat,
}

impl CoefficientSystem {
    /// Residuals of the five equations at a point.
    pub fn residuals<F: Field>(&self, a: &F, b: &F, c: &F, d: &F, e: &F) -> [F; 5] {
        let two = F::from_i64(2);
        let y2 = [
            e.clone() * e,
            two.clone() * d * e,
            two.clone() * c * e + &(d.clone() * d),
            two * c * d,
            c.clone() * c,
        ];
        std::array::from_fn(|k| eval_biv(&self.f[k], a, b) - &y2[k])
    }
}

fn lift(r: &Rat) -> Biv {
    Poly::constant(Poly::constant(r.clone()))
}

fn eval_biv<F: Field>(f: &Biv, a: &F, b: &F) -> F {
    let coeffs: Vec<F> = f
        .coeffs()
        .iter()
        .map(|p| p.map(F::from_rat).eval(a))
        .collect();
    Poly::new(coeffs).eval(b)
}

/// `f(a0, b)` as a polynomial in `b`.
fn at_a<F: Field>(f: &Biv, a: &F) -> Poly<F> {
    Poly::new(f.coeffs().iter().map(|p| p.map(F::from_rat).eval(a)).collect())
}

pub fn build_coefficient_system(
    e: &WeierstrassCurve<RatFunc<Rat>>,
    node: &NodeData,
) -> Result<CoefficientSystem, QSearchError> {
    let m = short_model(e)?;
    let a_var: Biv = Poly::constant(Poly::x());
    let b_var: Biv = Poly::x();
    let x = Poly::new(vec![b_var, a_var, lift(&node.x0)]);
    let big_a = m.a.map(lift);
    let big_b = m.b.map(lift);
    let rhs = x.pow(3) + &(big_a * &x) + &big_b;
    for k in [6, 5] {
        if !rhs.coeff(k).is_zero() {
            return Err(QSearchError::TopCoefficient(k));
        }
    }
    Ok(CoefficientSystem {
        f: std::array::from_fn(|k| rhs.coeff(k)),
        x0: node.x0.clone(),
    })
}

/// A section `(X(u), Y(u))` over `Q(sqrt(D))`, `D = 1` for Q itself.
#[derive(Clone, Debug, PartialEq)]
pub struct AnsatzSolution {
    pub d: i64,
    pub x: Poly<QuadExt>,
    pub y: Poly<QuadExt>,
}

impl AnsatzSolution {
    pub fn point(&self) -> CurvePoint<RatFunc<QuadExt>> {
        CurvePoint::Affine(RatFunc::from_poly(self.x.clone()), RatFunc::from_poly(self.y.clone()))
    }

    fn key(&self) -> (i64, Vec<(i64, Rat, Rat)>) {
        let k = self
            .x
            .coeffs()
            .iter()
            .chain(self.y.coeffs())
            .map(QuadExt::sort_key)
            .collect();
        (self.d, k)
    }

    pub fn conjugate(&self) -> AnsatzSolution {
        AnsatzSolution {
            d: self.d,
            x: self.x.map(QuadExt::conj),
            y: self.y.map(QuadExt::conj),
        }
    }

    pub fn negate(&self) -> AnsatzSolution {
        AnsatzSolution {
            d: self.d,
            x: self.x.clone(),
            y: -self.y.clone(),
        }
    }
}

/// The two eliminants: for `c != 0`, `Res_b(G1, G2)`; for `c = 0`,
/// `Res_b(f4, f3)`.
pub fn eliminants(sys: &CoefficientSystem) -> (Biv, Biv, Poly<Rat>, Poly<Rat>) {
    let [f0, f1, f2, f3, f4] = &sys.f;
    let k = |n: i64| lift(&Rat::from_i64(n));
    let h = k(4) * f4 * f2 - &(f3.clone() * f3);
    let g1 = k(8) * f4 * f4 * f1 - &(f3.clone() * &h);
    let g2 = k(64) * f4 * f4 * f4 * f0 - &(h.clone() * &h);
    let r = g1.resultant_sylvester(&g2).expect("nonzero");
    let r0 = f4.resultant_sylvester(f3).expect("nonzero");
    (g1, g2, r, r0)
}

/// Roots of a rational polynomial of degree 1 or 2, in Q or its quadratic
/// field.
fn small_roots(h: &Poly<Rat>) -> Vec<QuadExt> {
    match h.deg() {
        1 => vec![QuadExt::rational(-h.coeff(0) / h.coeff(1))],
        2 => {
            let (a, b, c) = (h.coeff(2), h.coeff(1), h.coeff(0));
            let disc = b.clone() * &b - &(Rat::from_i64(4) * &a * &c);
            quadratic_roots(&QuadExt::rational(a), &QuadExt::rational(b), &disc_root(&disc))
        }
        _ => Vec::new(),
    }
}

/// `n = d m^2` with `d` squarefree, found by trial division; `None` if a
/// cofactor beyond the trial bound is not a square.
fn split_square(n: &BigInt) -> Option<(i64, BigInt)> {
    let mut rest = n.abs();
    let mut d = BigInt::from(n.signum());
    let mut m = BigInt::one();
    let mut p = 2u64;
    while p < 100_000 && BigInt::from(p * p) <= rest {
        let bp = BigInt::from(p);
        let mut e = 0;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        for _ in 0..e / 2 {
            m *= &bp;
        }
        if e % 2 == 1 {
            d *= &bp;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    match exact_isqrt(&rest) {
        Some(r) => m *= r,
        None => d *= rest,
    }
    Some((i64::try_from(&d).ok()?, m))
}

/// `sqrt(r)` for rational `r`, in Q or `Q(sqrt(squarefree(r)))`.
fn disc_root(r: &Rat) -> Option<QuadExt> {
    if let Some(s) = r.sqrt() {
        return Some(QuadExt::rational(s));
    }
    // r = n / den^2 with n = num * den = d m^2
    let (d, m) = split_square(&(r.numer() * r.denom()))?;
    let coeff = Rat::new(m, r.denom().clone());
    QuadExt::new(Rat::zero(), coeff, d).ok()
}

fn quadratic_roots(a: &QuadExt, b: &QuadExt, s: &Option<QuadExt>) -> Vec<QuadExt> {
    let Some(s) = s else { return Vec::new() };
    let two_a = QuadExt::from_i64(2) * a;
    let mut out = vec![(-b.clone() + s) / two_a.clone()];
    if !s.is_zero() {
        out.push((-b.clone() - s) / two_a);
    }
    out
}

/// Square root in the field of `x`, or, for rational `x`, in the quadratic
/// field it generates.
fn root_in_field(x: &QuadExt) -> Option<QuadExt> {
    if x.is_rational() && x.d() == 0 {
        return disc_root(x.a());
    }
    sqrt_quadext(x)
}

/// Roots in the current quadratic field (or a new one from Q) of `p`.
fn roots_over(p: &Poly<QuadExt>) -> Vec<QuadExt> {
    match p.deg() {
        1 => vec![-p.coeff(0) / p.coeff(1)],
        2 => {
            let (a, b, c) = (p.coeff(2), p.coeff(1), p.coeff(0));
            let disc = b.clone() * &b - &(QuadExt::from_i64(4) * &a * &c);
            quadratic_roots(&a, &b, &root_in_field(&disc))
        }
        _ => Vec::new(),
    }
}

fn field_of(xs: &[&QuadExt]) -> i64 {
    xs.iter().map(|x| x.d()).find(|&d| d != 0).unwrap_or(1)
}

fn tag(x: &QuadExt, d: i64) -> QuadExt {
    if d == 1 {
        x.clone()
    } else {
        x.clone().with_field(d)
    }
}

fn assemble(
    e: &WeierstrassCurve<RatFunc<Rat>>,
    x0: &Rat,
    [a, b, c, d, ee]: [&QuadExt; 5],
) -> Option<AnsatzSolution> {
    let field = field_of(&[a, b, c, d, ee]);
    let t = |v: &QuadExt| tag(v, field);
    let x = Poly::new(vec![t(b), t(a), t(&QuadExt::rational(x0.clone()))]);
    let y = Poly::new(vec![t(ee), t(d), t(c)]);
    let lift = |p: &Poly<Rat>| p.map(|r| t(&QuadExt::rational(r.clone())));
    let a4 = lift(e.a4.as_poly()?);
    let a6 = lift(e.a6.as_poly()?);
    let lhs = y.clone() * &y;
    let rhs = x.pow(3) + &(a4 * &x) + &a6;
    (lhs == rhs).then_some(AnsatzSolution { d: field, x, y })
}

/// All solutions of the ansatz over Q and quadratic fields, sorted by
/// `(D, coefficients)`.
pub fn solve_system(e: &WeierstrassCurve<RatFunc<Rat>>, sys: &CoefficientSystem) -> Vec<AnsatzSolution> {
    let (g1, g2, r, r0) = eliminants(sys);
    let [f0, f1, f2, f3, f4] = &sys.f;
    let mut out: Vec<AnsatzSolution> = Vec::new();
    let two = QuadExt::from_i64(2);

    // c != 0
    for (h, _) in factor_rationals(&r).factors {
        for a0 in small_roots(&h) {
            let g = at_a(&g1, &a0).gcd(&at_a(&g2, &a0));
            for b0 in roots_over(&g) {
                let v4 = eval_biv(f4, &a0, &b0);
                if v4.is_zero() {
                    continue;
                }
                let Some(c) = root_in_field(&v4) else { continue };
                for c in [c.clone(), -c] {
                    let d = eval_biv(f3, &a0, &b0) / (two.clone() * &c);
                    let ee = (eval_biv(f2, &a0, &b0) - &(d.clone() * &d)) / (two.clone() * &c);
                    out.extend(assemble(e, &sys.x0, [&a0, &b0, &c, &d, &ee]));
                }
            }
        }
    }

    // c = 0: f4 = f3 = 0, f2 = d^2, f1 = 2de, f0 = e^2
    if !r0.is_zero() {
        for (h, _) in factor_rationals(&r0).factors {
            for a0 in small_roots(&h) {
                let g = at_a(f4, &a0).gcd(&at_a(f3, &a0));
                for b0 in roots_over(&g) {
                    let c = QuadExt::zero();
                    let v2 = eval_biv(f2, &a0, &b0);
                    let v1 = eval_biv(f1, &a0, &b0);
                    let v0 = eval_biv(f0, &a0, &b0);
                    let pairs: Vec<(QuadExt, QuadExt)> = if v2.is_zero() {
                        match root_in_field(&v0) {
                            Some(s) => vec![(QuadExt::zero(), s.clone()), (QuadExt::zero(), -s)],
                            None => Vec::new(),
                        }
                    } else {
                        match root_in_field(&v2) {
                            Some(s) => [s.clone(), -s]
                                .into_iter()
                                .map(|d| {
                                    let ee = v1.clone() / (two.clone() * &d);
                                    (d, ee)
                                })
                                .collect(),
                            None => Vec::new(),
                        }
                    };
                    for (d, ee) in pairs {
                        out.extend(assemble(e, &sys.x0, [&a0, &b0, &c, &d, &ee]));
                    }
                }
            }
        }
    }

    out.sort_by(|p, q| p.key().partial_cmp(&q.key()).unwrap_or(Ordering::Equal));
    out.dedup();
    out
}

/// Node, system, elimination, then the solutions of height 3/2.
pub fn find_extra_point(e: &WeierstrassCurve<RatFunc<Rat>>) -> Result<Vec<AnsatzSolution>, QSearchError> {
    let node = node_at_infinity(e)?;
    let sys = build_coefficient_system(e, &node)?;
    let sols = solve_system(e, &sys);
    let mut keep = Vec::new();
    let mut contexts = std::collections::HashMap::new();
    for s in sols {
        if !contexts.contains_key(&s.d) {
            let lifted = e.map(|c| c.map(|r| tag(&QuadExt::rational(r.clone()), s.d)));
            let ctx = crate::heights::HeightContext::new(&lifted).map_err(|_| QSearchError::NotFound)?;
            contexts.insert(s.d, ctx);
        }
        let ctx = &contexts[&s.d];
        if ctx.shioda_height(&s.point()).map(|h| h.value) == Ok(Rat::new(3, 2)) {
            keep.push(s);
        }
    }
    if keep.is_empty() {
        return Err(QSearchError::NotFound);
    }
    Ok(keep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve_with_node(s: i64) -> WeierstrassCurve<RatFunc<Rat>> {
        // fibre cubic at infinity (x - s)^2 (x + 2s) = x^3 - 3 s^2 x + 2 s^3,
        // and s A3 + B5 = 0 so that the discriminant vanishes to order 2
        let a = Poly::from_i64s(&[1, 0, -2, 5, -3 * s * s]);
        let b = Poly::from_i64s(&[7, -1, 0, 3, 1, -5 * s, 2 * s * s * s]);
        WeierstrassCurve::short(RatFunc::from_poly(a), RatFunc::from_poly(b)).unwrap()
    }

    #[test]
    fn node_recovered() {
        let e = curve_with_node(5);
        let n = node_at_infinity(&e).unwrap();
        assert_eq!(n.x0, Rat::from_i64(5));
        assert_eq!(n.x1, Rat::from_i64(-10));
        assert!(!n.split);
        let e = curve_with_node(3);
        assert!(node_at_infinity(&e).unwrap().split);
    }

    #[test]
    fn additive_fibre_rejected() {
        let a = Poly::from_i64s(&[1, 2, 3]);
        let b = Poly::from_i64s(&[1, 0, 0, 1]);
        let e = WeierstrassCurve::short(RatFunc::from_poly(a), RatFunc::from_poly(b)).unwrap();
        assert!(node_at_infinity(&e).is_err());
    }

    #[test]
    fn zero_is_not_a_solution() {
        let e = curve_with_node(3);
        let node = node_at_infinity(&e).unwrap();
        let sys = build_coefficient_system(&e, &node).unwrap();
        let z = Rat::zero();
        assert!(sys.residuals(&z, &z, &z, &z, &z).iter().any(|r| !r.is_zero()));
    }
}
