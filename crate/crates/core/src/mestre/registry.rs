//! Published curves, seeds and points, read from the shipped fixtures.
//!
//! The fixture files hold the data verbatim as printed; everything here
//! parses them and applies only the documented conventions (for instance
//! the printed extra point lives on `y^2 = r(x)/1248^2`).

use crate::algebra::{Poly, QuadExt, Qt, Rat, RatFunc, Ring};
use crate::ellcurve::{CurvePoint, QuarticPoint, WeierstrassCurve};
use crate::io::{parse_seed, CurveFile, Document, PointsFile, QuarticFile};

use super::MestreSeed;

pub const NAGAO_SEED: &str = include_str!("../../fixtures/nagao_seed.txt");
pub const MESTRE_SEED: &str = include_str!("../../fixtures/mestre_seed.txt");
pub const NAGAO_QUARTIC: &str = include_str!("../../fixtures/nagao_quartic.txt");
pub const MESTRE_QUARTIC: &str = include_str!("../../fixtures/mestre_quartic.txt");
pub const NAGAO_CONIC: &str = include_str!("../../fixtures/nagao_conic.txt");
pub const MESTRE_CONIC: &str = include_str!("../../fixtures/mestre_conic.txt");
pub const NAGAO_MINIMAL_U: &str = include_str!("../../fixtures/nagao_minimal_u.curve");
pub const NAGAO_EXTRA_POINT: &str = include_str!("../../fixtures/nagao_extra_point.txt");
pub const Q_POINT: &str = include_str!("../../fixtures/q_point.txt");
pub const GENERATORS: &str = include_str!("../../fixtures/nagao_generators.txt");

/// The printed extra point satisfies `y^2 = r(x) / EXTRA_POINT_SCALE^2`.
pub const EXTRA_POINT_SCALE: i64 = 1248;

pub fn nagao_seed() -> MestreSeed {
    parse_seed(NAGAO_SEED).expect("fixture")
}

pub fn mestre_seed() -> MestreSeed {
    parse_seed(MESTRE_SEED).expect("fixture")
}

/// Nagao's quartic, ascending in `x` over Q(t).
pub fn nagao_quartic() -> Poly<Qt> {
    QuarticFile::parse(NAGAO_QUARTIC).expect("fixture").r
}

pub fn mestre_quartic() -> Poly<Qt> {
    QuarticFile::parse(MESTRE_QUARTIC).expect("fixture").r
}

/// Mestre's scaling `4 / (81 t^2)` of the raw split.
pub fn mestre_scale() -> Qt {
    let t = Qt::var();
    Qt::from_i64(4) / (Qt::from_i64(81) * &t * &t)
}

/// A published parametrization of `u^2 = A + B t^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct PublishedConic {
    pub a: Rat,
    pub b: Rat,
    pub t_of_z: Qt,
    pub u_of_z: Qt,
}

fn conic(text: &str) -> PublishedConic {
    let doc = Document::parse(text).expect("fixture");
    PublishedConic {
        a: doc.value("A", |p| p.rat()).expect("A"),
        b: doc.value("B", |p| p.rat()).expect("B"),
        t_of_z: doc.value("t", |p| p.ratfunc::<Rat>()).expect("t"),
        u_of_z: doc.value("u", |p| p.ratfunc::<Rat>()).expect("u"),
    }
}

pub fn nagao_conic() -> PublishedConic {
    conic(NAGAO_CONIC)
}

pub fn mestre_conic() -> PublishedConic {
    conic(MESTRE_CONIC)
}

/// The minimal model over Q(u), `u = t^2`.
pub fn nagao_minimal_u() -> WeierstrassCurve<Qt> {
    CurveFile::parse(NAGAO_MINIMAL_U).expect("fixture").curve
}

fn extra_file() -> PointsFile<Rat> {
    PointsFile::parse(NAGAO_EXTRA_POINT).expect("fixture")
}

fn affine(p: &CurvePoint<Qt>) -> (Qt, Qt) {
    match p {
        CurvePoint::Affine(x, y) => (x.clone(), y.clone()),
        CurvePoint::Infinity => panic!("fixture point at infinity"),
    }
}

/// The extra point exactly as printed.
pub fn nagao_extra_point_printed() -> (Qt, Qt) {
    affine(extra_file().get("extra").expect("extra"))
}

/// The extra point on Nagao's quartic itself.
pub fn nagao_extra_point() -> QuarticPoint<Qt> {
    let (x, y) = nagao_extra_point_printed();
    QuarticPoint::Affine(x, y * &Qt::from_i64(EXTRA_POINT_SCALE))
}

/// The zero point `(t, 2544297600 - 87059232 t + 836160 t^2)`.
pub fn nagao_zero_point() -> QuarticPoint<Qt> {
    let (x, y) = affine(extra_file().get("zero").expect("zero"));
    QuarticPoint::Affine(x, y)
}

/// The point over Q(sqrt(-3))(u) found on the minimal model.
pub fn q_point() -> CurvePoint<RatFunc<QuadExt>> {
    let f: PointsFile<QuadExt> = PointsFile::parse(Q_POINT).expect("fixture");
    let d = f.field.expect("quadratic field");
    f.get("Q")
        .expect("Q")
        .map(|c| c.map(|a| a.clone().with_field(d)))
}

/// The thirteen generators of W on the t-line model, in fixture order.
pub fn generators() -> Vec<CurvePoint<Qt>> {
    let f: PointsFile<Rat> = PointsFile::parse(GENERATORS).expect("fixture");
    f.points.into_iter().map(|(_, p)| p).collect()
}

/// A curve over Q(u) with its coefficients moved into Q(sqrt(d))(u).
pub fn to_quadratic(e: &WeierstrassCurve<Qt>, d: i64) -> WeierstrassCurve<RatFunc<QuadExt>> {
    e.map(|c| c.map(|a| QuadExt::rational(a.clone()).with_field(d)))
}
