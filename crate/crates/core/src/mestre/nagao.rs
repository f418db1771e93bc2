//! Nagao's curve carried through every model used later: the quartic over
//! Q(t), the minimal model over Q(u) and its pullback to the t-line, and
//! the base change to Q(z) where the points at infinity become rational.

use crate::algebra::Qt;
use crate::ellcurve::{
    base_change, minimal_model, minimal_model_descended, pullback_square, quartic_to_weierstrass,
    CurvePoint, EllCurveError, ModelMap, QuarticPoint, WeierstrassCurve,
};

use super::registry;
use super::{build_quartic, derive_scale, raw_split, QuarticModel};

/// Index of the zero point among the minus points: `b6 = 0`, so `a6 = t`.
pub const ZERO_INDEX: usize = 5;

pub struct NagaoModels {
    pub quartic: QuarticModel,
    /// Minimal model over Q(u).
    pub u_curve: WeierstrassCurve<Qt>,
    /// Its pullback along `u = t^2`.
    pub t_curve: WeierstrassCurve<Qt>,
    /// Quartic over Q(t) to `t_curve`.
    pub map: ModelMap<Qt>,
}

impl NagaoModels {
    pub fn build() -> Result<Self, EllCurveError> {
        let seed = registry::nagao_seed();
        let (_, raw) = raw_split(&seed);
        let scale = derive_scale(&raw, &registry::nagao_quartic()).expect("published quartic");
        let quartic = build_quartic(&seed, &scale).expect("s = 0");
        let (e, map) = quartic_to_weierstrass(&quartic.r, &registry::nagao_zero_point())?;
        let (u_curve, iso) = minimal_model_descended(&e)?;
        Ok(NagaoModels {
            t_curve: pullback_square(&u_curve),
            u_curve,
            map: map.then(&iso),
            quartic,
        })
    }

    pub fn image(&self, p: &QuarticPoint<Qt>) -> Result<CurvePoint<Qt>, EllCurveError> {
        self.map.forward(p)
    }

    fn marked(&self, i: usize) -> QuarticPoint<Qt> {
        let (x, y) = &self.quartic.points[i];
        QuarticPoint::Affine(x.clone(), y.clone())
    }

    /// Images of `(a_i, +q(a_i))`, i = 1..12.
    pub fn plus_images(&self) -> Result<Vec<CurvePoint<Qt>>, EllCurveError> {
        (0..12).map(|i| self.image(&self.marked(i))).collect()
    }

    /// Images of `(a_i, -q(a_i))`, i = 1..12.
    pub fn minus_images(&self) -> Result<Vec<CurvePoint<Qt>>, EllCurveError> {
        (12..24).map(|i| self.image(&self.marked(i))).collect()
    }

    pub fn extra_image(&self) -> Result<CurvePoint<Qt>, EllCurveError> {
        self.image(&registry::nagao_extra_point())
    }

    /// The thirteen generators of W on the t-line: plus images and the
    /// extra point.
    pub fn generators(&self) -> Result<Vec<CurvePoint<Qt>>, EllCurveError> {
        let mut g = self.plus_images()?;
        g.push(self.extra_image()?);
        Ok(g)
    }

    /// Base change along the published `t = (23550 - z^2)/(2z)`.
    pub fn z_models(&self) -> Result<ZModels, EllCurveError> {
        let conic = registry::nagao_conic();
        let t_of_z = conic.t_of_z.clone();
        let e = base_change(&self.t_curve, &t_of_z);
        let (curve, iso) = minimal_model(&e)?;
        let map = self.map.map(|c: &Qt| c.compose(&t_of_z)).then(&iso);
        Ok(ZModels {
            curve,
            map,
            t_of_z,
            // the leading coefficient A + B t^2 equals u(z)^2
            w: conic.u_of_z,
        })
    }
}

pub struct ZModels {
    /// Minimal model over Q(z).
    pub curve: WeierstrassCurve<Qt>,
    /// Quartic over Q(z) to `curve`.
    pub map: ModelMap<Qt>,
    pub t_of_z: Qt,
    /// Square root of the leading coefficient of the quartic over Q(z).
    pub w: Qt,
}

impl ZModels {
    /// A point over Q(t), moved to Q(z) and onto the minimal model.
    pub fn from_t(&self, p: &QuarticPoint<Qt>) -> Result<CurvePoint<Qt>, EllCurveError> {
        let q = match p {
            QuarticPoint::Affine(x, y) => QuarticPoint::Affine(x.compose(&self.t_of_z), y.compose(&self.t_of_z)),
            QuarticPoint::Infinity(w) => QuarticPoint::Infinity(w.compose(&self.t_of_z)),
        };
        self.map.forward(&q)
    }

    /// The point at infinity `(inf, +w)`.
    pub fn infinity_image(&self) -> Result<CurvePoint<Qt>, EllCurveError> {
        self.map.forward(&QuarticPoint::Infinity(self.w.clone()))
    }

    /// Thirteen generators over Q(z): plus images 1..11, the extra point and
    /// the point at infinity.
    pub fn generators(&self, models: &NagaoModels) -> Result<Vec<CurvePoint<Qt>>, EllCurveError> {
        let mut g = Vec::new();
        for i in 0..11 {
            let (x, y) = &models.quartic.points[i];
            g.push(self.from_t(&QuarticPoint::Affine(x.clone(), y.clone()))?);
        }
        g.push(self.from_t(&registry::nagao_extra_point())?);
        g.push(self.infinity_image()?);
        Ok(g)
    }
}

/// Conjugation `t -> -t` on a point over Q(t).
pub fn sigma(p: &CurvePoint<Qt>) -> CurvePoint<Qt> {
    p.map(|c: &Qt| c.reflect())
}
