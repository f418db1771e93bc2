//! Singular fibres of elliptic surfaces over P^1.
//!
//! Residue characteristic is 0 or at least 5 everywhere, so the Kodaira
//! symbol is read off `(v(c4), v(c6), v(Delta))` of a minimal model instead
//! of running Tate's algorithm. For a short model `y^2 = x^3 + A x + B` the
//! constants 48, 864 and 16 are units, so `A`, `B` and `4A^3 + 27B^2` carry
//! the same valuations.
//!
//! Places are found from the squarefree decomposition of the discriminant,
//! refined by gcds with `A` and `B` until every cluster has uniform
//! valuations. Clusters are then factored into irreducible places when the
//! constant field supports it.

use std::fmt;

use crate::algebra::factor::factor_mod_p;
use crate::algebra::{factor_rationals, Field, Fp, Poly, Rat, RatFunc};
use crate::ellcurve::{to_short_iso, WeierstrassCurve};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum KodairaError {
    #[error("model is not minimal at {0}")]
    NotMinimal(String),
    #[error("coefficients must be polynomials in the base variable")]
    NotPolynomial,
    #[error("discriminant is constant: the surface is a product, out of scope")]
    ConstantDiscriminant,
    #[error("characteristic {0} is not supported (need 0 or p >= 5)")]
    BadCharacteristic(u64),
    #[error("Euler numbers sum to {sum}, expected 12 chi = {expected}")]
    EulerMismatch { sum: u64, expected: u64 },
    #[error("rank NS = {rank_ns} is below the trivial lattice rank {trivial}")]
    RankTooSmall { rank_ns: i64, trivial: i64 },
}

/// Constant fields over which places can be split into irreducibles.
pub trait ConstantField: Field {
    /// Monic irreducible factors of a monic squarefree polynomial.
    fn irreducible_factors(f: &Poly<Self>) -> Vec<Poly<Self>>;
}

impl ConstantField for Rat {
    fn irreducible_factors(f: &Poly<Self>) -> Vec<Poly<Self>> {
        factor_rationals(f).factors.into_iter().map(|(g, _)| g).collect()
    }
}

impl ConstantField for Fp {
    fn irreducible_factors(f: &Poly<Self>) -> Vec<Poly<Self>> {
        let p = f.lc().modulus();
        factor_mod_p(f, p)
    }
}

#[derive(Clone, PartialEq)]
pub enum Place<F> {
    /// A monic irreducible polynomial (or, before factoring, a squarefree
    /// cluster of places sharing one fibre type).
    Finite(Poly<F>),
    Infinity,
}

impl<F: Field> Place<F> {
    pub fn degree(&self) -> u64 {
        match self {
            Place::Finite(p) => p.deg() as u64,
            Place::Infinity => 1,
        }
    }
}

impl<F: Field> fmt::Display for Place<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

impl<F: Field> fmt::Debug for Place<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    I0,
    I(u32),
    II,
    III,
    IV,
    I0Star,
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl Symbol {
    pub fn components(self) -> u32 {
        match self {
            Symbol::I0 | Symbol::II => 1,
            Symbol::I(n) => n,
            Symbol::III => 2,
            Symbol::IV => 3,
            Symbol::I0Star => 5,
            Symbol::IStar(n) => n + 5,
            Symbol::IVStar => 7,
            Symbol::IIIStar => 8,
            Symbol::IIStar => 9,
        }
    }

    pub fn euler(self) -> u32 {
        match self {
            Symbol::I0 => 0,
            Symbol::I(n) => n,
            Symbol::II => 2,
            Symbol::III => 3,
            Symbol::IV => 4,
            Symbol::I0Star => 6,
            Symbol::IStar(n) => n + 6,
            Symbol::IVStar => 8,
            Symbol::IIIStar => 9,
            Symbol::IIStar => 10,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::I0 => write!(f, "I0"),
            Symbol::I(n) => write!(f, "I{n}"),
            Symbol::II => write!(f, "II"),
            Symbol::III => write!(f, "III"),
            Symbol::IV => write!(f, "IV"),
            Symbol::I0Star => write!(f, "I0*"),
            Symbol::IStar(n) => write!(f, "I{n}*"),
            Symbol::IVStar => write!(f, "IV*"),
            Symbol::IIIStar => write!(f, "III*"),
            Symbol::IIStar => write!(f, "II*"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FibreType {
    pub symbol: Symbol,
    /// Split multiplicative reduction; known only for `I_n` at places of
    /// degree one.
    pub split: Option<bool>,
}

impl FibreType {
    pub fn components(&self) -> u32 {
        self.symbol.components()
    }

    pub fn euler(&self) -> u32 {
        self.symbol.euler()
    }

    pub fn is_reducible(&self) -> bool {
        self.components() > 1
    }
}

/// Kodaira symbol from valuations of `A`, `B`, `Delta`; `None` means the
/// coefficient vanishes identically.
pub fn classify(va: Option<u32>, vb: Option<u32>, vd: u32) -> Result<Symbol, String> {
    let inf = u32::MAX;
    let (va, vb) = (va.unwrap_or(inf), vb.unwrap_or(inf));
    if va >= 4 && vb >= 6 {
        return Err("v(A) >= 4 and v(B) >= 6".into());
    }
    if vd == 0 {
        return Ok(Symbol::I0);
    }
    if va == 0 || vb == 0 {
        // multiplicative: c4 is a unit exactly when A and B are
        return if va == 0 && vb == 0 {
            Ok(Symbol::I(vd))
        } else {
            Err(format!("inconsistent valuations ({va}, {vb}, {vd})"))
        };
    }
    if va == 2 && vb == 3 && vd > 6 {
        return Ok(Symbol::IStar(vd - 6));
    }
    match vd {
        2 => Ok(Symbol::II),
        3 => Ok(Symbol::III),
        4 => Ok(Symbol::IV),
        6 => Ok(Symbol::I0Star),
        8 => Ok(Symbol::IVStar),
        9 => Ok(Symbol::IIIStar),
        10 => Ok(Symbol::IIStar),
        _ => Err(format!("no additive type with v(Delta) = {vd}")),
    }
}

/// A short model `y^2 = x^3 + A x + B` with `A, B` polynomials.
#[derive(Clone, PartialEq)]
pub struct ShortModel<F> {
    pub a: Poly<F>,
    pub b: Poly<F>,
}

impl<F: Field> ShortModel<F> {
    pub fn from_curve(e: &WeierstrassCurve<RatFunc<F>>) -> Result<Self, KodairaError> {
        let p = [&e.a4, &e.a6, &e.a2, &e.a1, &e.a3]
            .iter()
            .flat_map(|c| c.num().coeffs().iter())
            .map(|c| c.characteristic())
            .max()
            .unwrap_or(0);
        if p == 2 || p == 3 {
            return Err(KodairaError::BadCharacteristic(p));
        }
        let s = if e.is_short() {
            e.clone()
        } else {
            to_short_iso(e).apply_curve(e)
        };
        let a = s.a4.as_poly().ok_or(KodairaError::NotPolynomial)?.clone();
        let b = s.a6.as_poly().ok_or(KodairaError::NotPolynomial)?.clone();
        Ok(ShortModel { a, b })
    }

    /// `4A^3 + 27B^2`, the discriminant up to the unit `-16`.
    pub fn disc(&self) -> Poly<F> {
        self.a.pow(3).scale(&F::from_i64(4)) + &self.b.pow(2).scale(&F::from_i64(27))
    }

    /// `max(ceil(deg A / 4), ceil(deg B / 6))`.
    pub fn chi(&self) -> u32 {
        let c = |p: &Poly<F>, i: i64| if p.deg() <= 0 { 0 } else { ((p.deg() + i - 1) / i) as u32 };
        c(&self.a, 4).max(c(&self.b, 6))
    }

    /// The model in the chart `s = 1/t`: `s^(4 chi) A(1/s)`, `s^(6 chi) B(1/s)`.
    pub fn at_infinity(&self) -> ShortModel<F> {
        let chi = self.chi() as usize;
        let rev = |p: &Poly<F>, n: usize| if p.is_zero() { Poly::zero() } else { p.reverse(n) };
        ShortModel {
            a: rev(&self.a, 4 * chi),
            b: rev(&self.b, 6 * chi),
        }
    }
}

fn val_at<F: Field>(f: &Poly<F>, pi: &Poly<F>) -> Option<u32> {
    if f.is_zero() {
        return None;
    }
    Some(f.split_off_power(pi).0 as u32)
}

/// Splitness of an `I_n` fibre at `t = t0` (in the given chart): the node
/// `x0 = -3B/(2A)` has tangent slopes `+-sqrt(3 x0)`.
fn split_at<F: Field>(m: &ShortModel<F>, t0: &F) -> Option<bool> {
    let a = m.a.eval(t0);
    let b = m.b.eval(t0);
    if a.is_zero() {
        return None;
    }
    let x0 = F::from_i64(-3) * &b / (F::from_i64(2) * &a);
    (F::from_i64(3) * &x0).is_square()
}

fn local_type_in_chart<F: Field>(
    m: &ShortModel<F>,
    pi: &Poly<F>,
    label: &dyn Fn() -> String,
) -> Result<FibreType, KodairaError> {
    let vd = val_at(&m.disc(), pi).expect("nonzero discriminant");
    let symbol = classify(val_at(&m.a, pi), val_at(&m.b, pi), vd).map_err(|_| KodairaError::NotMinimal(label()))?;
    let split = match symbol {
        Symbol::I(_) if pi.deg() == 1 => split_at(m, &pi.root_of_linear().unwrap()),
        _ => None,
    };
    Ok(FibreType { symbol, split })
}

/// Fibre type of a minimal model at one place.
pub fn local_type<F: Field>(e: &WeierstrassCurve<RatFunc<F>>, place: &Place<F>) -> Result<FibreType, KodairaError> {
    let m = ShortModel::from_curve(e)?;
    match place {
        Place::Finite(pi) => local_type_in_chart(&m, &pi.monic(), &|| place.to_string()),
        Place::Infinity => {
            let s = Poly::x();
            local_type_in_chart(&m.at_infinity(), &s, &|| "inf".into())
        }
    }
}

/// Parts of the squarefree `g` on which `f` has constant valuation.
fn split_by_valuation<F: Field>(g: &Poly<F>, f: &Poly<F>) -> Vec<(Poly<F>, Option<u32>)> {
    if f.is_zero() {
        return vec![(g.clone(), None)];
    }
    let mut out = Vec::new();
    let mut rest = g.clone();
    let mut cur = f.clone();
    let mut v = 0u32;
    loop {
        let h = rest.gcd(&cur);
        let part = rest.exact_div_poly(&h).unwrap();
        if part.deg() > 0 {
            out.push((part.monic(), Some(v)));
        }
        if h.deg() <= 0 {
            break;
        }
        cur = cur.exact_div_poly(&h).unwrap();
        rest = h;
        v += 1;
    }
    out
}

/// Squarefree clusters of finite bad places with uniform valuations.
pub fn bad_clusters<F: Field>(m: &ShortModel<F>) -> Result<Vec<Poly<F>>, KodairaError> {
    let d = m.disc();
    let mut out = Vec::new();
    let layers = d.squarefree_decomposition().map_err(|_| KodairaError::ConstantDiscriminant)?;
    for (g, _) in layers {
        if g.deg() <= 0 {
            continue;
        }
        for (h, _) in split_by_valuation(&g, &m.a) {
            for (k, _) in split_by_valuation(&h, &m.b) {
                out.push(k);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, PartialEq)]
pub struct FibreConfiguration<F> {
    pub entries: Vec<(Place<F>, FibreType)>,
    pub chi: u32,
    pub rational_surface: bool,
}

impl<F: Field> fmt::Debug for FibreConfiguration<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FibreConfiguration")
            .field("entries", &self.entries)
            .field("chi", &self.chi)
            .field("rational_surface", &self.rational_surface)
            .finish()
    }
}

impl<F: Field> FibreConfiguration<F> {
    pub fn reducible(&self) -> impl Iterator<Item = &(Place<F>, FibreType)> {
        self.entries.iter().filter(|(_, f)| f.is_reducible())
    }

    /// `sum (m_v - 1)` over geometric places.
    pub fn trivial_excess(&self) -> u64 {
        self.entries
            .iter()
            .map(|(p, f)| p.degree() * (f.components() as u64 - 1))
            .sum()
    }

    pub fn euler_sum(&self) -> u64 {
        self.entries.iter().map(|(p, f)| p.degree() * f.euler() as u64).sum()
    }

    /// Multiset of symbols over the algebraic closure, sorted; places of
    /// degree `d` count `d` times.
    pub fn geometric_signature(&self) -> Vec<Symbol> {
        let mut v: Vec<Symbol> = self
            .entries
            .iter()
            .flat_map(|(p, f)| std::iter::repeat(f.symbol).take(p.degree() as usize))
            .collect();
        v.sort();
        v
    }

    pub fn at_infinity(&self) -> Option<&FibreType> {
        self.entries
            .iter()
            .find(|(p, _)| matches!(p, Place::Infinity))
            .map(|(_, f)| f)
    }
}

/// All singular fibres of a minimal model, with `chi` and the rationality flag.
///
/// With `factor` set, clusters are split into irreducible places; otherwise
/// each entry is a cluster of places of the same type.
pub fn fibre_configuration<F: ConstantField>(
    e: &WeierstrassCurve<RatFunc<F>>,
    factor: bool,
) -> Result<FibreConfiguration<F>, KodairaError> {
    configure(e, &|c: &Poly<F>| {
        if factor && c.deg() > 1 {
            F::irreducible_factors(c)
        } else {
            vec![c.clone()]
        }
    })
}

/// The configuration with places left as clusters, over any constant field.
pub fn fibre_clusters<F: Field>(e: &WeierstrassCurve<RatFunc<F>>) -> Result<FibreConfiguration<F>, KodairaError> {
    configure(e, &|c: &Poly<F>| vec![c.clone()])
}

fn configure<F: Field>(
    e: &WeierstrassCurve<RatFunc<F>>,
    split: &dyn Fn(&Poly<F>) -> Vec<Poly<F>>,
) -> Result<FibreConfiguration<F>, KodairaError> {
    let m = ShortModel::from_curve(e)?;
    let d = m.disc();
    if d.deg() <= 0 {
        return Err(KodairaError::ConstantDiscriminant);
    }
    let chi = m.chi();
    let mut entries = Vec::new();
    for c in bad_clusters(&m)? {
        for pi in split(&c) {
            let ft = local_type_in_chart(&m, &pi, &|| pi.to_string())?;
            entries.push((Place::Finite(pi), ft));
        }
    }
    let inf = m.at_infinity();
    let s = Poly::x();
    if inf.disc().coeff(0).is_zero() {
        let ft = local_type_in_chart(&inf, &s, &|| "inf".into())?;
        entries.push((Place::Infinity, ft));
    } else if inf.a.coeff(0).is_zero() && inf.b.coeff(0).is_zero() {
        return Err(KodairaError::NotMinimal("inf".into()));
    }
    let config = FibreConfiguration {
        entries,
        chi,
        rational_surface: chi == 1,
    };
    let sum = config.euler_sum();
    if sum != 12 * chi as u64 {
        return Err(KodairaError::EulerMismatch {
            sum,
            expected: 12 * chi as u64,
        });
    }
    Ok(config)
}

/// Rational elliptic surface: a minimal model with `deg a_i <= i`, which
/// for a minimal model means `chi = 1`.
pub fn is_rational_surface<F: Field>(e: &WeierstrassCurve<RatFunc<F>>) -> Result<bool, KodairaError> {
    Ok(ShortModel::from_curve(e)?.chi() == 1)
}

/// Mordell-Weil rank over the algebraic closure from the Shioda-Tate formula.
pub fn shioda_tate_rank<F: Field>(config: &FibreConfiguration<F>, rank_ns: i64) -> Result<i64, KodairaError> {
    let trivial = 2 + config.trivial_excess() as i64;
    if rank_ns < trivial {
        return Err(KodairaError::RankTooSmall { rank_ns, trivial });
    }
    Ok(rank_ns - trivial)
}

/// The E_n-type lattice name for the common rational-surface cases.
pub fn lattice_name<F: Field>(config: &FibreConfiguration<F>) -> Option<&'static str> {
    if !config.rational_surface {
        return None;
    }
    let red: Vec<Symbol> = config.geometric_signature().into_iter().filter(|s| s.components() > 1).collect();
    match red.as_slice() {
        [] => Some("E8"),
        [Symbol::I(2)] | [Symbol::III] => Some("E7*"),
        [Symbol::I(3)] | [Symbol::IV] => Some("E6*"),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Qt;

    fn short(a: &[i64], b: &[i64]) -> WeierstrassCurve<Qt> {
        WeierstrassCurve::short(Qt::from_poly(Poly::from_i64s(a)), Qt::from_poly(Poly::from_i64s(b))).unwrap()
    }

    #[test]
    fn cusp_at_zero() {
        let e = short(&[], &[0, 1]);
        let f = local_type(&e, &Place::Finite(Poly::x())).unwrap();
        assert_eq!(f.symbol, Symbol::II);
        assert!(is_rational_surface(&e).unwrap());
        let c = fibre_configuration(&e, true).unwrap();
        assert_eq!(c.at_infinity().unwrap().symbol, Symbol::IIStar);
    }

    #[test]
    fn constant_discriminant_rejected() {
        let e = short(&[], &[1]);
        assert_eq!(fibre_configuration(&e, true).unwrap_err(), KodairaError::ConstantDiscriminant);
    }

    #[test]
    fn table_lookups() {
        assert_eq!(classify(Some(0), Some(0), 5), Ok(Symbol::I(5)));
        assert_eq!(classify(Some(2), Some(3), 8), Ok(Symbol::IStar(2)));
        assert_eq!(classify(Some(3), Some(4), 8), Ok(Symbol::IVStar));
        assert_eq!(classify(None, Some(5), 10), Ok(Symbol::IIStar));
        assert!(classify(Some(4), Some(6), 12).is_err());
    }

    #[test]
    fn shioda_tate_examples() {
        let e = short(&[], &[0, 1]);
        let mut c = fibre_configuration(&e, true).unwrap();
        c.entries.clear();
        assert_eq!(shioda_tate_rank(&c, 10), Ok(8));
        c.entries.push((Place::Infinity, FibreType { symbol: Symbol::I(4), split: Some(true) }));
        assert_eq!(shioda_tate_rank(&c, 18), Ok(13));
        assert!(shioda_tate_rank(&c, 4).is_err());
    }
}
