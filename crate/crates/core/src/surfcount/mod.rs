//! Point counts on the Kodaira-Neron model of an elliptic surface over a
//! finite field, and what they say about the Neron-Severi rank.
//!
//! The count is a sum over the fibres above `P^1(F_q)`. Irreducible fibres
//! are counted on the Weierstrass cubic; reducible fibres are counted from
//! their Kodaira symbol, which needs the components to be rational.

mod ledger;

pub use ledger::{
    count_root_of_unity_multiples, eigen_ledger, factor_display, format_poly, ns_rank_bound, power_sum,
    predicted_count, rank_conclusion, roots_on_circle, test_hypotheses, EigenLedger, HypothesisOutcome, NsBound,
    RankConclusion, Verdict, ZETA_ORDERS,
};

use std::fmt;

use rayon::prelude::*;

use crate::algebra::fp::reduce_rat;
use crate::algebra::{is_prime_u64, FqField, Poly, Qt, Rat};
use crate::ellcurve::{reduce_curve, WeierstrassCurve};
use crate::kodaira::{classify, fibre_configuration, FibreConfiguration, KodairaError, ShortModel, Symbol};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum SurfCountError {
    #[error(transparent)]
    Kodaira(#[from] KodairaError),
    #[error("p = {p} is not a good prime: {reason}")]
    BadPrime { p: u64, reason: String },
    #[error("q^2 = {work} exceeds the budget {limit}; raise the budget explicitly (roughly {minutes} min single-threaded)")]
    Budget { work: u128, limit: u128, minutes: u128 },
    #[error("fibre at {place} is {symbol} with components not all rational over F_{q}")]
    NonsplitFibre { place: String, symbol: Symbol, q: u64 },
    #[error("counting a fibre of type {symbol} at {place} is not supported")]
    UnsupportedFibre { place: String, symbol: Symbol },
    #[error("reduction is not minimal at {0}")]
    NotMinimal(String),
}

/// A minimal short model over `Q(t)` with its singular fibres.
#[derive(Clone, Debug)]
pub struct SurfaceModel {
    pub curve: WeierstrassCurve<Qt>,
    pub a: Poly<Rat>,
    pub b: Poly<Rat>,
    pub config: FibreConfiguration<Rat>,
    pub chi: u32,
}

impl SurfaceModel {
    pub fn new(e: &WeierstrassCurve<Qt>) -> Result<Self, SurfCountError> {
        let m = ShortModel::from_curve(e)?;
        let config = fibre_configuration(e, false)?;
        Ok(SurfaceModel {
            curve: e.clone(),
            chi: config.chi,
            a: m.a,
            b: m.b,
            config,
        })
    }

    /// `dim H^2 = 12 chi - 2`; `H^1` and `H^3` vanish for these surfaces.
    pub fn b2(&self) -> u32 {
        12 * self.chi - 2
    }

    /// Same geometric singular-fibre configuration in characteristic `p`
    /// as in characteristic 0.
    pub fn good_prime(&self, p: u64) -> PrimeCheck {
        let bad = |reason: String| PrimeCheck { p, good: false, reason: Some(reason) };
        if p < 5 || !is_prime_u64(p) {
            return bad("need a prime p >= 5".into());
        }
        let Some(r) = reduce_curve(&self.curve, p) else {
            return bad("p divides a denominator".into());
        };
        let cfg = match fibre_configuration(&r, false) {
            Ok(c) => c,
            Err(e) => return bad(e.to_string()),
        };
        if cfg.chi != self.chi {
            return bad(format!("chi drops from {} to {}", self.chi, cfg.chi));
        }
        let (want, got) = (self.config.geometric_signature(), cfg.geometric_signature());
        if want != got {
            return bad(format!("fibres {} become {}", symbols(&want), symbols(&got)));
        }
        PrimeCheck { p, good: true, reason: None }
    }

    /// The smallest good prime in `[5, limit]`.
    pub fn smallest_good_prime(&self, limit: u64) -> Option<u64> {
        (5..=limit).find(|&p| is_prime_u64(p) && self.good_prime(p).good)
    }
}

fn symbols(v: &[Symbol]) -> String {
    v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeCheck {
    pub p: u64,
    pub good: bool,
    pub reason: Option<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub fibres: u64,
    pub points: u64,
}

impl Tally {
    fn add(&mut self, points: u64) {
        self.fibres += 1;
        self.points += points;
    }

    fn merge(self, o: Tally) -> Tally {
        Tally { fibres: self.fibres + o.fibres, points: self.points + o.points }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Breakdown {
    pub smooth: Tally,
    pub nodal_split: Tally,
    pub nodal_nonsplit: Tally,
    pub cusp: Tally,
    pub reducible: Tally,
}

impl Breakdown {
    fn merge(self, o: Breakdown) -> Breakdown {
        Breakdown {
            smooth: self.smooth.merge(o.smooth),
            nodal_split: self.nodal_split.merge(o.nodal_split),
            nodal_nonsplit: self.nodal_nonsplit.merge(o.nodal_nonsplit),
            cusp: self.cusp.merge(o.cusp),
            reducible: self.reducible.merge(o.reducible),
        }
    }

    pub fn classes(&self) -> [(&'static str, Tally); 5] {
        [
            ("smooth", self.smooth),
            ("nodal_split", self.nodal_split),
            ("nodal_nonsplit", self.nodal_nonsplit),
            ("cusp", self.cusp),
            ("reducible", self.reducible),
        ]
    }

    pub fn total(&self) -> u64 {
        self.classes().iter().map(|(_, t)| t.points).sum()
    }

    pub fn fibres(&self) -> u64 {
        self.classes().iter().map(|(_, t)| t.fibres).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub p: u64,
    pub n: u32,
    pub q: u64,
    pub total: u64,
    pub breakdown: Breakdown,
}

impl fmt::Display for CountReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p = {}", self.p)?;
        writeln!(f, "n = {}", self.n)?;
        writeln!(f, "q = {}", self.q)?;
        writeln!(f, "total = {}", self.total)?;
        for (name, t) in self.breakdown.classes() {
            writeln!(f, "{name} = {} fibres, {} points", t.fibres, t.points)?;
        }
        Ok(())
    }
}

/// Limit on `q^2`, the number of `(t, x)` pairs visited.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_work: u128,
}

impl Default for Budget {
    /// Enough for `n = 2` at `p = 71`.
    fn default() -> Self {
        Budget { max_work: 26_000_000 }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { max_work: u128::MAX }
    }
}

/// `4A^3 + 27B^2` and the model's coefficients reduced into `F_p`, with
/// the chart at infinity.
struct Reduced {
    a: Vec<u32>,
    b: Vec<u32>,
    d: Vec<u32>,
    a_inf: Vec<u32>,
    b_inf: Vec<u32>,
    d_inf: Vec<u32>,
}

impl Reduced {
    fn new(m: &SurfaceModel, p: u64) -> Option<Reduced> {
        let red = |f: &Poly<Rat>, n: usize| -> Option<Vec<u32>> {
            let mut v: Vec<u32> = f
                .coeffs()
                .iter()
                .map(|c| reduce_rat(c, p).map(|x| x.value() as u32))
                .collect::<Option<_>>()?;
            v.resize(n + 1, 0);
            Some(v)
        };
        let chi = m.chi as usize;
        let d = ShortModel { a: m.a.clone(), b: m.b.clone() }.disc();
        let (a, b, d) = (red(&m.a, 4 * chi)?, red(&m.b, 6 * chi)?, red(&d, 12 * chi)?);
        let rev = |v: &Vec<u32>| v.iter().rev().copied().collect::<Vec<_>>();
        Some(Reduced { a_inf: rev(&a), b_inf: rev(&b), d_inf: rev(&d), a, b, d })
    }
}

/// Order of vanishing of a polynomial with `F_p` coefficients at `t`;
/// `None` for the zero polynomial.
fn vanishing_order(f: &FqField, coeffs: &[u32], t: u32) -> Option<u32> {
    let mut c: Vec<u32> = coeffs.to_vec();
    while c.last() == Some(&0) {
        c.pop();
    }
    if c.is_empty() {
        return None;
    }
    let mut k = 0;
    loop {
        if f.eval_fp_poly(&c, t) != 0 {
            return Some(k);
        }
        // synthetic division by (X - t)
        let n = c.len() - 1;
        let mut quot = vec![0u32; n];
        let mut carry = 0u32;
        for i in (1..=n).rev() {
            carry = f.add(c[i], f.mul(carry, t));
            quot[i - 1] = carry;
        }
        c = quot;
        k += 1;
    }
}

/// `sum_x chi(x^3 + a x + b)` over `F_q`.
fn character_sum(f: &FqField, cubes: &[u32], chi: &[i8], a: u32, b: u32) -> i64 {
    let mut s = 0i64;
    for (x, &c) in cubes.iter().enumerate() {
        let mut v = f.add(c, b);
        if a != 0 {
            v = f.add(v, f.mul(a, x as u32));
        }
        s += chi[v as usize] as i64;
    }
    s
}

struct Counter<'a> {
    f: &'a FqField,
    cubes: Vec<u32>,
    chi: &'a [i8],
    q: u64,
}

impl Counter<'_> {
    /// Adds the fibre whose chart has coefficients `(a, b)` at the point
    /// `t`, where `va`, `vb`, `vd` are evaluated lazily.
    fn fibre(
        &self,
        acc: &mut Breakdown,
        a: u32,
        b: u32,
        orders: impl FnOnce() -> (Option<u32>, Option<u32>, u32),
        place: impl Fn() -> String,
    ) -> Result<(), SurfCountError> {
        let (f, q) = (self.f, self.q);
        let disc = f.add(
            f.mul(f.from_int(4), f.pow(a, 3)),
            f.mul(f.from_int(27), f.mul(b, b)),
        );
        if disc != 0 {
            let s = character_sum(f, &self.cubes, self.chi, a, b);
            acc.smooth.add((q as i64 + 1 + s) as u64);
            return Ok(());
        }
        let (va, vb, vd) = orders();
        let symbol = classify(va, vb, vd).map_err(|_| SurfCountError::NotMinimal(place()))?;
        // x0 - x1 = 3 x0 = -9b/(2a) at a node
        let node_split = || {
            let x = f.mul(f.from_int(-9), f.mul(b, f.inv(f.mul(f.from_int(2), a)).expect("a != 0")));
            f.chi(x)
        };
        match symbol {
            Symbol::I(1) => {
                let c = node_split();
                let tally = if c == 1 { &mut acc.nodal_split } else { &mut acc.nodal_nonsplit };
                tally.add((q as i64 + 1 - c as i64) as u64);
            }
            Symbol::II => acc.cusp.add(q + 1),
            Symbol::I(m) => {
                if node_split() != 1 {
                    return Err(SurfCountError::NonsplitFibre { place: place(), symbol, q });
                }
                // an m-gon of lines: m (q + 1) points minus the m crossings
                acc.reducible.add(m as u64 * q);
            }
            // trees of rational curves: m (q + 1) - (m - 1)
            Symbol::III | Symbol::IIIStar | Symbol::IIStar => {
                acc.reducible.add(symbol.components() as u64 * q + 1);
            }
            _ => return Err(SurfCountError::UnsupportedFibre { place: place(), symbol }),
        }
        Ok(())
    }
}

/// `#S(F_q)` for `q = p^n`, by summing over the fibres.
///
/// Requires a good prime and `q^2` within the budget. Parallel over `t` on
/// the current rayon pool; the result does not depend on the thread count.
pub fn count_surface(m: &SurfaceModel, p: u64, n: u32, budget: Budget) -> Result<CountReport, SurfCountError> {
    let check = m.good_prime(p);
    if !check.good {
        return Err(SurfCountError::BadPrime { p, reason: check.reason.unwrap_or_default() });
    }
    let q = p.pow(n);
    let work = q as u128 * q as u128;
    if work > budget.max_work {
        // about 10^8 pairs per second in a tables-backed field
        let minutes = work / 100_000_000 / 60;
        return Err(SurfCountError::Budget { work, limit: budget.max_work, minutes });
    }
    let red = Reduced::new(m, p).ok_or_else(|| SurfCountError::BadPrime {
        p,
        reason: "p divides a denominator".into(),
    })?;
    count_reduced(&red, p, n)
}

fn count_reduced(red: &Reduced, p: u64, n: u32) -> Result<CountReport, SurfCountError> {
    let f = FqField::new(p, n).expect("prime");
    let q = f.order();
    let chi = f.chi_table().expect("counting fields carry tables");
    let cubes: Vec<u32> = f.elements().map(|x| f.pow(x, 3)).collect();
    let c = Counter { f: &f, cubes, chi, q };

    let finite = (0..q as u32)
        .into_par_iter()
        .try_fold(Breakdown::default, |mut acc, t| {
            let a = f.eval_fp_poly(&red.a, t);
            let b = f.eval_fp_poly(&red.b, t);
            let orders = || {
                let vd = vanishing_order(&f, &red.d, t).expect("nonzero discriminant");
                (vanishing_order(&f, &red.a, t), vanishing_order(&f, &red.b, t), vd)
            };
            c.fibre(&mut acc, a, b, orders, || format!("t = {t}"))?;
            Ok::<_, SurfCountError>(acc)
        })
        .try_reduce(Breakdown::default, |x, y| Ok(x.merge(y)))?;

    let mut inf = Breakdown::default();
    let orders = || {
        let vd = vanishing_order(&f, &red.d_inf, 0).expect("nonzero discriminant");
        (vanishing_order(&f, &red.a_inf, 0), vanishing_order(&f, &red.b_inf, 0), vd)
    };
    c.fibre(&mut inf, red.a_inf[0], red.b_inf[0], orders, || "inf".into())?;

    let breakdown = finite.merge(inf);
    Ok(CountReport { p, n, q, total: breakdown.total(), breakdown })
}

/// A point of the base over `F_q`, as an element index of the field, in the
/// chart `t` or the chart `s = 1/t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasePoint {
    T(u32),
    S(u32),
}

/// `#` of the fibre over one base point, counted as in [`count_surface`].
pub fn fibre_count(m: &SurfaceModel, p: u64, n: u32, at: BasePoint) -> Result<u64, SurfCountError> {
    let red = Reduced::new(m, p).ok_or_else(|| SurfCountError::BadPrime {
        p,
        reason: "p divides a denominator".into(),
    })?;
    let f = FqField::new(p, n).expect("prime");
    let chi = f.chi_table().expect("counting fields carry tables");
    let cubes: Vec<u32> = f.elements().map(|x| f.pow(x, 3)).collect();
    let c = Counter { f: &f, cubes, chi, q: f.order() };
    let (a, b, d, t) = match at {
        BasePoint::T(t) => (&red.a, &red.b, &red.d, t),
        BasePoint::S(s) => (&red.a_inf, &red.b_inf, &red.d_inf, s),
    };
    let orders = || {
        let vd = vanishing_order(&f, d, t).expect("nonzero discriminant");
        (vanishing_order(&f, a, t), vanishing_order(&f, b, t), vd)
    };
    let mut acc = Breakdown::default();
    c.fibre(&mut acc, f.eval_fp_poly(a, t), f.eval_fp_poly(b, t), orders, || format!("{at:?}"))?;
    Ok(acc.total())
}

/// Brute-force `#{(t, x, y) in F_q^3 : y^2 = x^3 + A(t) x + B(t)}` for a
/// polynomial model given by integer coefficients; an oracle for tests.
pub fn affine_points_brute_force(a: &[i64], b: &[i64], p: u64, n: u32) -> u64 {
    let f = FqField::new(p, n).expect("prime");
    let red = |c: &[i64]| c.iter().map(|&v| f.from_int(v)).collect::<Vec<_>>();
    let (a, b) = (red(a), red(b));
    let mut squares = vec![0u64; f.order() as usize];
    for y in f.elements() {
        squares[f.mul(y, y) as usize] += 1;
    }
    let mut total = 0;
    for t in f.elements() {
        let (at, bt) = (f.eval_fp_poly(&a, t), f.eval_fp_poly(&b, t));
        for x in f.elements() {
            let rhs = f.add(f.add(f.pow(x, 3), f.mul(at, x)), bt);
            total += squares[rhs as usize];
        }
    }
    total
}

/// The `(53, 3)` count is far beyond the default budget; callers opt in.
pub fn is_extended(p: u64, n: u32) -> bool {
    let q = (p as u128).pow(n);
    q * q > Budget::default().max_work
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Qt;

    fn model(a: &[i64], b: &[i64]) -> SurfaceModel {
        let e = WeierstrassCurve::short(Qt::from_poly(Poly::from_i64s(a)), Qt::from_poly(Poly::from_i64s(b))).unwrap();
        SurfaceModel::new(&e).unwrap()
    }

    #[test]
    fn vanishing_orders() {
        let f = FqField::new(7, 1).unwrap();
        // (t - 2)^2 (t + 1) = t^3 - 3t^2 + 4 over F_7
        let c = [4, 0, 4, 1];
        assert_eq!(vanishing_order(&f, &c, 2), Some(2));
        assert_eq!(vanishing_order(&f, &c, 6), Some(1));
        assert_eq!(vanishing_order(&f, &c, 0), Some(0));
        assert_eq!(vanishing_order(&f, &[0, 0], 3), None);
    }

    #[test]
    fn rational_surface_against_brute_force() {
        // y^2 = x^3 + x + t: two nodal fibres and II* at infinity
        let m = model(&[1], &[0, 1]);
        assert_eq!(m.config.at_infinity().unwrap().symbol, Symbol::IIStar);
        for (p, n) in [(5, 1), (7, 1), (11, 1), (5, 2)] {
            let r = count_surface(&m, p, n, Budget::default()).unwrap();
            let q = r.q;
            let expect = affine_points_brute_force(&[1], &[0, 1], p, n) + q + (9 * q + 1);
            assert_eq!(r.total, expect, "p = {p}, n = {n}");
            assert_eq!(r.breakdown.fibres(), q + 1);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let m = model(&[1], &[0, 1]);
        let small = Budget { max_work: 100 };
        assert!(matches!(count_surface(&m, 11, 1, small), Err(SurfCountError::Budget { .. })));
        assert!(is_extended(53, 3));
        assert!(!is_extended(71, 2));
    }
}
