//! Canonical heights on elliptic surfaces, by Shioda's intersection formula
//! and independently by the doubling limit, plus Gram matrices and the
//! norm map for the quadratic base change `u = t^2`.
//!
//! Everything is exact. Heights are normalized so that `(O.O) = -chi`, i.e.
//! a section disjoint from `O` that meets every identity component has
//! height `2 chi`.

mod gram;
mod limit;
mod modular;

pub use gram::{rank, GramMatrix};
pub use modular::ModularReduction;

use std::fmt;

use rayon::prelude::*;

use crate::algebra::{Field, Poly, QuadExt, Rat, RatFunc, Ring};
use crate::ellcurve::{to_short_iso, CurvePoint, WeierstrassCurve, WeierstrassIso};
use crate::kodaira::{fibre_clusters, FibreConfiguration, KodairaError, Place, ShortModel, Symbol};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum HeightError {
    #[error(transparent)]
    Kodaira(#[from] KodairaError),
    #[error("point {0} is not on the curve")]
    OffCurve(String),
    #[error("component identification at {place} is only implemented for I_n, found {symbol}; use the limit method")]
    Unsupported { place: String, symbol: Symbol },
    #[error("P + sigma(P) is not defined over the subfield")]
    NotSigmaStable,
    #[error("reductions disagree: {0}")]
    Inconsistent(String),
    #[error("certificate refused: {0}")]
    Certificate(String),
}

/// An exact canonical height.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct HeightValue {
    pub value: Rat,
}

impl fmt::Display for HeightValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// `i (n - i) / n`, the correction for a section meeting component `i` of
/// an `I_n` fibre.
pub fn in_contribution(n: u32, i: u32) -> Rat {
    Rat::new((i * (n - i)) as i64, n as i64)
}

/// Largest correction any section can pick up on a fibre of this type.
pub fn max_contribution(s: Symbol) -> Rat {
    match s {
        Symbol::I(n) => in_contribution(n, n / 2),
        Symbol::III => Rat::new(1, 2),
        Symbol::IV => Rat::new(2, 3),
        Symbol::I0Star => Rat::from_i64(1),
        Symbol::IStar(n) => Rat::new(4 + n as i64, 4),
        Symbol::IVStar => Rat::new(4, 3),
        Symbol::IIIStar => Rat::new(3, 2),
        _ => Rat::zero(),
    }
}

/// A reducible fibre seen in the chart where it sits at `pi = 0`.
#[derive(Clone)]
struct Chart<F> {
    model: ShortModel<F>,
    pi: Poly<F>,
    symbol: Symbol,
    infinity: bool,
}

/// Everything the height computations need about one surface.
#[derive(Clone)]
pub struct HeightContext<F> {
    curve: WeierstrassCurve<RatFunc<F>>,
    to_short: WeierstrassIso<RatFunc<F>>,
    model: ShortModel<F>,
    chi: u32,
    charts: Vec<Chart<F>>,
}

/// `gcd(pi, f mod pi)`: the part of the squarefree `pi` where `f` vanishes.
fn vanishing_part<F: Field>(pi: &Poly<F>, f: &Poly<F>) -> Poly<F> {
    if pi.is_constant() {
        return pi.clone();
    }
    pi.gcd(&f.rem(pi)).monic()
}

fn rat_of(n: u64) -> Rat {
    Rat::from_i64(n as i64)
}

impl<F: Field> HeightContext<F> {
    pub fn new(e: &WeierstrassCurve<RatFunc<F>>) -> Result<Self, HeightError> {
        let config = fibre_clusters(e)?;
        Self::with_configuration(e, &config)
    }

    pub fn with_configuration(
        e: &WeierstrassCurve<RatFunc<F>>,
        config: &FibreConfiguration<F>,
    ) -> Result<Self, HeightError> {
        let model = ShortModel::from_curve(e)?;
        let mut charts = Vec::new();
        for (place, ft) in config.reducible() {
            let (m, pi, infinity) = match place {
                Place::Finite(pi) => (model.clone(), pi.monic(), false),
                Place::Infinity => (model.at_infinity(), Poly::x(), true),
            };
            charts.push(Chart {
                model: m,
                pi,
                symbol: ft.symbol,
                infinity,
            });
        }
        Ok(HeightContext {
            curve: e.clone(),
            to_short: to_short_iso(e),
            chi: model.chi(),
            model,
            charts,
        })
    }

    pub fn curve(&self) -> &WeierstrassCurve<RatFunc<F>> {
        &self.curve
    }

    pub fn chi(&self) -> u32 {
        self.chi
    }

    /// `N = 2 lcm(m_v)`: every height lies in `(1/N) Z`.
    pub fn denominator_bound(&self) -> u64 {
        let l = self
            .charts
            .iter()
            .map(|c| c.symbol.components() as u64)
            .fold(1u64, num_integer::lcm);
        2 * l
    }

    /// `C = 2 chi + sum of the largest corrections`, bounding
    /// `|deg x(P) - h(P)|`.
    pub fn error_bound(&self) -> Rat {
        let mut c = rat_of(2 * self.chi as u64);
        for ch in &self.charts {
            c = c + max_contribution(ch.symbol) * rat_of(ch.pi.deg() as u64);
        }
        c
    }

    fn check(&self, p: &CurvePoint<RatFunc<F>>) -> Result<(), HeightError> {
        if self.curve.contains(p) {
            Ok(())
        } else {
            Err(HeightError::OffCurve(format!("{p}")))
        }
    }

    fn short_point(&self, p: &CurvePoint<RatFunc<F>>) -> Option<(RatFunc<F>, RatFunc<F>)> {
        match self.to_short.apply_point(p) {
            CurvePoint::Infinity => None,
            CurvePoint::Affine(x, y) => Some((x, y)),
        }
    }

    /// `(P.O)`, summed over all places including infinity.
    pub fn intersection_with_zero(&self, p: &CurvePoint<RatFunc<F>>) -> Rat {
        let Some((x, _)) = self.short_point(p) else {
            return -rat_of(self.chi as u64);
        };
        let finite = x.den().deg();
        let at_inf = (x.num().deg() - x.den().deg() - 2 * self.chi as i64).max(0);
        Rat::new(finite + at_inf, 2)
    }

    /// The point in the chart of `c`.
    fn localize(&self, c: &Chart<F>, x: &RatFunc<F>, y: &RatFunc<F>) -> (RatFunc<F>, RatFunc<F>) {
        if !c.infinity {
            return (x.clone(), y.clone());
        }
        let s = |k: u32| RatFunc::from_poly(Poly::monomial(F::one(), (k * self.chi) as usize));
        (x.invert_variable() * &s(2), y.invert_variable() * &s(3))
    }

    /// Sum of the corrections over the reducible fibres.
    pub fn contributions(&self, p: &CurvePoint<RatFunc<F>>) -> Result<Rat, HeightError> {
        let Some((x, y)) = self.short_point(p) else {
            return Ok(Rat::zero());
        };
        let mut total = Rat::zero();
        for c in &self.charts {
            let (xl, yl) = self.localize(c, &x, &y);
            let two_y = (yl.clone() + &yl).num().clone();
            let a = RatFunc::from_poly(c.model.a.clone());
            let slope = (xl.clone() * &xl * &RatFunc::from_i64(3) + &a).num().clone();
            let mut hit = vanishing_part(&vanishing_part(&c.pi, &two_y), &slope);
            if hit.is_constant() {
                continue;
            }
            let Symbol::I(n) = c.symbol else {
                return Err(HeightError::Unsupported {
                    place: if c.infinity { "inf".into() } else { c.pi.to_string() },
                    symbol: c.symbol,
                });
            };
            // i = min(v(2y), n/2) on each place of the cluster
            let mut deriv = two_y;
            for k in 1..=n / 2 {
                if k > 1 {
                    deriv = deriv.derivative();
                    hit = vanishing_part(&hit, &deriv);
                }
                if hit.is_constant() {
                    break;
                }
                let step = in_contribution(n, k) - in_contribution(n, k - 1);
                total = total + step * rat_of(hit.deg() as u64);
            }
        }
        Ok(total)
    }

    /// `2 chi + 2 (P.O) - sum of corrections`.
    pub fn shioda_height(&self, p: &CurvePoint<RatFunc<F>>) -> Result<HeightValue, HeightError> {
        self.check(p)?;
        self.shioda_unchecked(p)
    }

    fn shioda_unchecked(&self, p: &CurvePoint<RatFunc<F>>) -> Result<HeightValue, HeightError> {
        if p.is_infinity() {
            return Ok(HeightValue { value: Rat::zero() });
        }
        let po = self.intersection_with_zero(p);
        let value = rat_of(2 * self.chi as u64) + po.clone() + po - self.contributions(p)?;
        Ok(HeightValue { value })
    }

    /// `lim deg x(2^n P) / 4^n`, stopped once the error bound allows exact
    /// rounding into `(1/N) Z`.
    pub fn canonical_height_limit(&self, p: &CurvePoint<RatFunc<F>>) -> Result<HeightValue, HeightError> {
        self.check(p)?;
        self.limit_unchecked(p)
    }

    fn limit_unchecked(&self, p: &CurvePoint<RatFunc<F>>) -> Result<HeightValue, HeightError> {
        let Some((x, _)) = self.short_point(p) else {
            return Ok(HeightValue { value: Rat::zero() });
        };
        let finite: Vec<&Poly<F>> = self.charts.iter().filter(|c| !c.infinity).map(|c| &c.pi).collect();
        let value = limit::height(
            &self.model,
            &finite,
            x.num().clone(),
            x.den().clone(),
            &self.error_bound(),
            self.denominator_bound(),
        );
        Ok(HeightValue { value })
    }

    /// Shioda's formula where components can be identified, the limit
    /// otherwise.
    pub fn height(&self, p: &CurvePoint<RatFunc<F>>) -> Result<HeightValue, HeightError> {
        self.check(p)?;
        self.height_unchecked(p)
    }

    /// For points produced by the group law from checked points.
    fn height_unchecked(&self, p: &CurvePoint<RatFunc<F>>) -> Result<HeightValue, HeightError> {
        match self.shioda_unchecked(p) {
            Err(HeightError::Unsupported { .. }) => self.limit_unchecked(p),
            r => r,
        }
    }

    pub fn pairing(&self, p: &CurvePoint<RatFunc<F>>, q: &CurvePoint<RatFunc<F>>) -> Result<Rat, HeightError> {
        let s = self.curve.add_unchecked(p, q);
        let hs = self.height_unchecked(&s)?.value;
        Ok((hs - self.height(p)?.value - self.height(q)?.value) / Rat::from_i64(2))
    }
}

impl<F: ModularReduction> HeightContext<F> {
    /// The doubling limit run modulo `primes` distinct primes, which must
    /// all give the same value.
    pub fn canonical_height_limit_modular(
        &self,
        p: &CurvePoint<RatFunc<F>>,
        primes: usize,
    ) -> Result<HeightValue, HeightError> {
        self.check(p)?;
        let Some((x, _)) = self.short_point(p) else {
            return Ok(HeightValue { value: Rat::zero() });
        };
        let finite: Vec<&Poly<F>> = self.charts.iter().filter(|c| !c.infinity).map(|c| &c.pi).collect();
        let (c, n) = (self.error_bound(), self.denominator_bound());
        let mut values = Vec::new();
        for (q, model, places, num, den) in modular::admissible_primes(&self.model, &finite, x.num(), x.den(), primes) {
            let refs: Vec<&Poly<crate::algebra::Fp>> = places.iter().collect();
            values.push((q, limit::height(&model, &refs, num, den, &c, n)));
        }
        let first = values.first().map(|v| v.1.clone()).unwrap_or_else(Rat::zero);
        if let Some((q, v)) = values.iter().find(|v| v.1 != first) {
            return Err(HeightError::Inconsistent(format!("{v} mod {q} against {first}")));
        }
        Ok(HeightValue { value: first })
    }
}

impl<F: Field + Send + Sync> HeightContext<F> {
    /// Gram matrix of the height pairing, pairs evaluated in parallel.
    pub fn gram(&self, points: &[CurvePoint<RatFunc<F>>]) -> Result<GramMatrix, HeightError> {
        for p in points {
            self.check(p)?;
        }
        let diag: Vec<Rat> = points
            .par_iter()
            .map(|p| self.height_unchecked(p).map(|h| h.value))
            .collect::<Result<_, _>>()?;
        let pairs: Vec<(usize, usize)> = (0..points.len())
            .flat_map(|i| (i + 1..points.len()).map(move |j| (i, j)))
            .collect();
        let off: Vec<Rat> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let s = self.curve.add_unchecked(&points[i], &points[j]);
                let h = self.height_unchecked(&s)?.value;
                Ok((h - &diag[i] - &diag[j]) / Rat::from_i64(2))
            })
            .collect::<Result<_, HeightError>>()?;
        let n = points.len();
        let mut m = vec![vec![Rat::zero(); n]; n];
        for (i, d) in diag.into_iter().enumerate() {
            m[i][i] = d;
        }
        for ((i, j), v) in pairs.into_iter().zip(off) {
            m[i][j] = v.clone();
            m[j][i] = v;
        }
        Ok(GramMatrix::new(m))
    }
}

/// `P + sigma(P)` for `sigma: t -> -t`, as a point of the curve over the
/// field of `u = t^2`. `e_t` is the pullback of `e_u`.
pub fn norm_map<F: Field>(
    e_u: &WeierstrassCurve<RatFunc<F>>,
    e_t: &WeierstrassCurve<RatFunc<F>>,
    p: &CurvePoint<RatFunc<F>>,
) -> Result<CurvePoint<RatFunc<F>>, HeightError> {
    if !e_t.contains(p) {
        return Err(HeightError::OffCurve(format!("{p}")));
    }
    let s = e_t.add_unchecked(p, &p.map(|c| c.reflect()));
    let n = match s {
        CurvePoint::Infinity => CurvePoint::Infinity,
        CurvePoint::Affine(x, y) => match (x.even_part_in_square(), y.even_part_in_square()) {
            (Some(x), Some(y)) => CurvePoint::Affine(x, y),
            _ => return Err(HeightError::NotSigmaStable),
        },
    };
    if !e_u.contains(&n) {
        return Err(HeightError::NotSigmaStable);
    }
    Ok(n)
}

/// Outcome of the checks behind the rank-14 statement.
#[derive(Clone, Debug, PartialEq)]
pub struct Theorem1Report {
    /// `h(Q)`.
    pub height_q: Rat,
    /// `h(Q - sigma Q)`, sigma conjugating the quadratic field.
    pub height_difference: Rat,
    pub rank_norms: usize,
    pub rank_with_q: usize,
    /// Rank of the generators over Q(z), when supplied.
    pub rank_over_z: Option<usize>,
}

impl Theorem1Report {
    /// The rank bound over the quadratic extension of Q(z), available when
    /// the Q(z) Gram rank was supplied.
    pub fn rank_lower_bound(&self) -> Option<usize> {
        self.rank_over_z.map(|r| r + 1)
    }
}

fn conj_point(p: &CurvePoint<RatFunc<QuadExt>>) -> CurvePoint<RatFunc<QuadExt>> {
    p.map(|c| c.map(QuadExt::conj))
}

fn quadratic_field(p: &CurvePoint<RatFunc<QuadExt>>) -> Option<i64> {
    let (x, y) = (p.x()?, p.y()?);
    [x.num(), x.den(), y.num(), y.den()]
        .iter()
        .flat_map(|c| c.coeffs().iter())
        .map(|c| c.d())
        .find(|&d| d != 0 && d != 1)
}

/// Checks that `Q` is not Galois-fixed, that `Q - sigma Q` has positive
/// height, and that `Q` raises the rank of the norm images from 6 to 7.
pub fn theorem1_certificate(
    e_u: &WeierstrassCurve<RatFunc<Rat>>,
    q: &CurvePoint<RatFunc<QuadExt>>,
    norms: &[CurvePoint<RatFunc<Rat>>],
    rank_over_z: Option<usize>,
) -> Result<Theorem1Report, HeightError> {
    let d = quadratic_field(q).ok_or_else(|| HeightError::Certificate("(i) Q is fixed by sigma".into()))?;
    let lift = |c: &RatFunc<Rat>| c.map(|a| QuadExt::rational(a.clone()).with_field(d));
    let e = e_u.map(lift);
    let ctx = HeightContext::new(&e)?;
    ctx.check(q)?;
    let sq = conj_point(q);
    if sq == *q {
        return Err(HeightError::Certificate("(i) Q is fixed by sigma".into()));
    }
    let diff = e.sub_unchecked(q, &sq);
    let height_difference = ctx.height_unchecked(&diff)?.value;
    if height_difference <= Rat::zero() {
        return Err(HeightError::Certificate("(ii) h(Q - sigma Q) is not positive".into()));
    }
    // the norm block is rational, so only Q's row needs the extension
    let base = HeightContext::new(e_u)?;
    let gram_norms = base.gram(norms)?;
    let rank_norms = gram_norms.rank();
    let basis = gram_norms.independent_subset();
    let row = basis
        .iter()
        .map(|&i| {
            let n = norms[i].map(lift);
            ctx.check(&n)?;
            ctx.pairing(q, &n)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let height_q = ctx.height_unchecked(q)?.value;
    let rank_with_q = gram_norms.minor(&basis).bordered(&row, &height_q).rank();
    if rank_with_q != rank_norms + 1 {
        return Err(HeightError::Certificate(format!(
            "(iii) rank with Q is {rank_with_q}, norms alone give {rank_norms}"
        )));
    }
    Ok(Theorem1Report {
        height_q,
        height_difference,
        rank_norms,
        rank_with_q,
        rank_over_z,
    })
}
