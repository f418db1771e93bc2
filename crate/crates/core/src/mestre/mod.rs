//! Mestre's square-split construction of genus-one quartics with many
//! rational points, and the conic parametrizations that make the points at
//! infinity rational.

pub mod nagao;
pub mod registry;

use crate::algebra::{factor_rationals, Field, Poly, Qt, Rat, RatFunc, Ring};
use crate::algebra::ratfunc::truncated_sqrt;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum MestreError {
    #[error("square split needs an even-degree polynomial, got degree {0}")]
    OddDegree(i64),
    #[error("square split needs a monic polynomial")]
    NotMonic,
    #[error("seed needs 6 pairwise distinct values")]
    DegenerateSeed,
    #[error("x^5-coefficient s = {0} is nonzero, so r has degree 5")]
    NonzeroS(Rat),
    #[error("scale {0} is not a square")]
    ScaleNotSquare(String),
    #[error("target quartic is not a constant multiple of the raw one")]
    NotProportional,
    #[error("base point ({0}, {1}) is not on the conic")]
    BaseOffConic(Rat, Rat),
    #[error("degenerate conic (B = 0)")]
    DegenerateConic,
}

/// Six base values; the twelve roots are `b_i + t` and `b_i - t`.
#[derive(Clone, Debug, PartialEq)]
pub struct MestreSeed {
    b: Vec<Rat>,
}

impl MestreSeed {
    pub fn new(b: Vec<Rat>) -> Result<Self, MestreError> {
        if b.len() != 6 || !pairwise_distinct(&b) {
            return Err(MestreError::DegenerateSeed);
        }
        Ok(MestreSeed { b })
    }

    pub fn from_i64s(b: &[i64]) -> Result<Self, MestreError> {
        MestreSeed::new(b.iter().map(|&v| Rat::from_int(v)).collect())
    }

    pub fn b(&self) -> &[Rat] {
        &self.b
    }

    /// `a_1..a_12` as elements of Q(t).
    pub fn a_values(&self) -> Vec<Qt> {
        let t = Qt::var();
        let plus = self.b.iter().map(|b| Qt::constant(b.clone()) + &t);
        let minus = self.b.iter().map(|b| Qt::constant(b.clone()) - &t);
        plus.chain(minus).collect()
    }

    /// `p(x) = prod (x - a_i)` over Q(t).
    pub fn product_poly(&self) -> Poly<Qt> {
        product_of_roots(&self.a_values())
    }
}

fn pairwise_distinct(b: &[Rat]) -> bool {
    b.iter()
        .enumerate()
        .all(|(i, x)| b[i + 1..].iter().all(|y| x != y))
}

fn product_of_roots<F: Field>(roots: &[F]) -> Poly<F> {
    roots.iter().fold(Poly::one(), |acc, a| {
        acc * &Poly::new(vec![-a.clone(), F::one()])
    })
}

/// Splits a monic `p` of degree `2n` as `p = q^2 - r` with `q` monic of
/// degree `n` and `deg r <= n - 1`. Returns `(q, r)`.
pub fn square_split<F: Field>(p: &Poly<F>) -> Result<(Poly<F>, Poly<F>), MestreError> {
    let d = p.deg();
    if d < 0 || d % 2 == 1 {
        return Err(MestreError::OddDegree(d));
    }
    if !p.lc().is_one() {
        return Err(MestreError::NotMonic);
    }
    Ok(truncated_sqrt(p))
}

/// The rational `s` with `[x^5] r = s t^2`. Evaluating at `t = 1` is enough
/// since the identity holds for every `t`.
pub fn s_coefficient(b: &[Rat]) -> Result<Rat, MestreError> {
    if b.len() != 6 || !pairwise_distinct(b) {
        return Err(MestreError::DegenerateSeed);
    }
    let one = Rat::one();
    let roots: Vec<Rat> = b
        .iter()
        .map(|x| x.clone() + &one)
        .chain(b.iter().map(|x| x.clone() - &one))
        .collect();
    let (_, r) = square_split(&product_of_roots(&roots))?;
    Ok(r.coeff(5))
}

/// All rational `b6` completing `b1..b5` to a seed with `s = 0`.
pub fn search_b6(b5: &[Rat]) -> Result<Vec<Rat>, MestreError> {
    if b5.len() != 5 || !pairwise_distinct(b5) {
        return Err(MestreError::DegenerateSeed);
    }
    // s is a polynomial of degree <= 5 in b6; sample away from the b_i
    let mut pts = Vec::new();
    let mut x = Rat::from_int(-3);
    while pts.len() < 8 {
        x = x + &Rat::from_int(7);
        if b5.contains(&x) {
            continue;
        }
        let mut b = b5.to_vec();
        b.push(x.clone());
        pts.push((x.clone(), s_coefficient(&b)?));
    }
    let s_poly = Poly::interpolate(&pts);
    debug_assert!(s_poly.deg() <= 5);
    if s_poly.is_zero() {
        // degenerate: every b6 works; report none rather than a continuum
        return Ok(Vec::new());
    }
    let mut roots: Vec<Rat> = factor_rationals(&s_poly)
        .rational_roots()
        .into_iter()
        .map(|(r, _)| r)
        .filter(|r| !b5.contains(r))
        .collect();
    roots.sort();
    Ok(roots)
}

/// A quartic `y^2 = r(x)` over Q(t) with its marked points.
#[derive(Clone, Debug)]
pub struct QuarticModel {
    /// Coefficients of `r` in `x`, ascending.
    pub r: Poly<Qt>,
    /// `(a_i, +q~(a_i))` for i = 1..12 followed by `(a_i, -q~(a_i))`.
    pub points: Vec<(Qt, Qt)>,
    /// Raw `r` times `scale` is the stored `r`.
    pub scale: Qt,
    /// `q~ = q * sqrt(scale)`.
    pub q_tilde: Poly<Qt>,
}

impl QuarticModel {
    pub fn contains(&self, x: &Qt, y: &Qt) -> bool {
        self.r.eval(x) == y.clone() * y
    }

    pub fn plus_points(&self) -> &[(Qt, Qt)] {
        &self.points[..self.points.len() / 2]
    }

    pub fn minus_points(&self) -> &[(Qt, Qt)] {
        &self.points[self.points.len() / 2..]
    }
}

/// The raw split `(q, r)` for a seed with symbolic `t`.
pub fn raw_split(seed: &MestreSeed) -> (Poly<Qt>, Poly<Qt>) {
    square_split(&seed.product_poly()).expect("degree 12, monic")
}

pub fn build_quartic(seed: &MestreSeed, scale: &Qt) -> Result<QuarticModel, MestreError> {
    let (q, r) = raw_split(seed);
    if r.deg() > 4 {
        return Err(MestreError::NonzeroS(s_coefficient(seed.b())?));
    }
    let root = scale
        .sqrt()
        .ok_or_else(|| MestreError::ScaleNotSquare(scale.to_string()))?;
    let r_scaled = r.scale(scale);
    let q_tilde = q.scale(&root);
    let a = seed.a_values();
    let plus: Vec<(Qt, Qt)> = a.iter().map(|ai| (ai.clone(), q_tilde.eval(ai))).collect();
    let minus: Vec<(Qt, Qt)> = plus.iter().map(|(x, y)| (x.clone(), -y.clone())).collect();
    Ok(QuarticModel {
        r: r_scaled,
        points: plus.into_iter().chain(minus).collect(),
        scale: scale.clone(),
        q_tilde,
    })
}

/// The factor `target / raw`, certified to be a square in Q(t).
pub fn derive_scale(raw: &Poly<Qt>, target: &Poly<Qt>) -> Result<Qt, MestreError> {
    if raw.deg() != target.deg() || raw.is_zero() {
        return Err(MestreError::NotProportional);
    }
    let k = target.lc() / raw.lc();
    if raw.scale(&k) != *target {
        return Err(MestreError::NotProportional);
    }
    if k.sqrt().is_none() {
        return Err(MestreError::ScaleNotSquare(k.to_string()));
    }
    Ok(k)
}

/// A rational parametrization of `u^2 = A + B t^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConicParam {
    pub a: Rat,
    pub b: Rat,
    pub base: (Rat, Rat),
    pub t_of_z: Qt,
    pub u_of_z: Qt,
}

impl ConicParam {
    /// `u(z)^2 - A - B t(z)^2`, zero for a valid parametrization.
    pub fn defect(&self) -> Qt {
        conic_defect(&self.a, &self.b, &self.t_of_z, &self.u_of_z)
    }
}

pub fn conic_defect(a: &Rat, b: &Rat, t: &Qt, u: &Qt) -> Qt {
    u.clone() * u - &Qt::constant(a.clone()) - &(Qt::constant(b.clone()) * t * t)
}

/// Lines through the base point with slope `z`:
/// `t = (t0 z^2 - 2 u0 z + B t0)/(z^2 - B)`, `u = (-u0 z^2 + 2 B t0 z - B u0)/(z^2 - B)`.
pub fn conic_parametrize(a: &Rat, b: &Rat, base: (Rat, Rat)) -> Result<ConicParam, MestreError> {
    if b.is_zero() {
        return Err(MestreError::DegenerateConic);
    }
    let (t0, u0) = base;
    if u0.clone() * &u0 != a.clone() + &(b.clone() * &t0 * &t0) {
        return Err(MestreError::BaseOffConic(t0, u0));
    }
    let two = Rat::from_int(2);
    let den = Poly::new(vec![-b.clone(), Rat::zero(), Rat::one()]);
    let t_num = Poly::new(vec![b.clone() * &t0, -(two.clone() * &u0), t0.clone()]);
    let u_num = Poly::new(vec![-(b.clone() * &u0), two * b * &t0, -u0.clone()]);
    Ok(ConicParam {
        a: a.clone(),
        b: b.clone(),
        base: (t0, u0),
        t_of_z: RatFunc::new(t_num, den.clone()),
        u_of_z: RatFunc::new(u_num, den),
    })
}

/// The Möbius change `z -> m(z)` carrying `param` onto a published
/// parametrization `(t_pub, u_pub)`, if one exists. `m` is the slope from the
/// base point to the published point.
pub fn match_parametrization(param: &ConicParam, t_pub: &Qt, u_pub: &Qt) -> Option<Qt> {
    let (t0, u0) = &param.base;
    let dt = t_pub.clone() - &Qt::constant(t0.clone());
    if dt.is_zero() {
        return None;
    }
    let m = (u_pub.clone() - &Qt::constant(u0.clone())) / dt;
    if m.num().deg() > 1 || m.den().deg() > 1 || m.degree() != 1 {
        return None;
    }
    let ok = param.t_of_z.compose(&m) == *t_pub && param.u_of_z.compose(&m) == *u_pub;
    ok.then_some(m)
}
