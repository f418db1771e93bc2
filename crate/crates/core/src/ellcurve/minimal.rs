//! Globally minimal short models over Q(t), base change and specialization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::fp::reduce_rat;
use crate::algebra::rat::{gcd_numerators, lcm_denominators};
use crate::algebra::{Field, Fp, Poly, Qt, Rat, RatFunc, Ring};

use super::curve::{to_short_iso, WeierstrassCurve, WeierstrassIso};
use super::EllCurveError;

const TRIAL_LIMIT: u64 = 1 << 20;

/// Minimal model `y^2 = x^3 + A x + B` with `A, B` in `Z[t]`.
///
/// Finite places: every monic irreducible `pi` with `pi^4 | A` and
/// `pi^6 | B` is scaled out. Rational primes: the integer content is
/// normalized the same way, so the model is unique up to sign of the unit.
/// The place at infinity needs no work: with `chi = max(ceil(deg A/4),
/// ceil(deg B/6))` the model there is minimal by construction.
pub fn minimal_model(
    e: &WeierstrassCurve<Qt>,
) -> Result<(WeierstrassCurve<Qt>, WeierstrassIso<Qt>), EllCurveError> {
    if e.discriminant().is_zero() {
        return Err(EllCurveError::Singular);
    }
    let to_short = to_short_iso(e);
    let s = to_short.apply_curve(e);
    let (a, b) = (s.a4.clone(), s.a6.clone());

    // clear polynomial denominators: lambda = 1/D
    let den = a.den().lcm(b.den());
    let mut pa = (a * &Qt::from_poly(den.pow(4))).as_poly().unwrap().clone();
    let mut pb = (b * &Qt::from_poly(den.pow(6))).as_poly().unwrap().clone();
    let mut lambda_poly = Poly::one();
    loop {
        let l = common_power_divisor(&pa, &pb);
        if l.deg() <= 0 {
            break;
        }
        pa = pa.exact_div_poly(&l.pow(4)).unwrap();
        pb = pb.exact_div_poly(&l.pow(6)).unwrap();
        lambda_poly = lambda_poly * &l;
    }

    // integer content
    let c = integral_unit(&pa, &pb);
    let c4 = c.pow_i(4);
    let c6 = c.pow_i(6);
    let pa = pa.scale(&c4);
    let pb = pb.scale(&c6);

    // x = u^2 x', so a4' = a4 / u^4 with u = lambda_poly / (den * c)
    let u = Qt::new(lambda_poly, den.scale(&c));
    let iso = to_short.then(&WeierstrassIso::scaling(u));
    let m = WeierstrassCurve::short(Qt::from_poly(pa), Qt::from_poly(pb))?;
    debug_assert_eq!(iso.apply_curve(e), m);
    Ok((m, iso))
}

/// Largest monic `L` (up to the iteration in the caller) with
/// `L^4 | a` and `L^6 | b`, built one squarefree layer at a time.
fn common_power_divisor(a: &Poly<Rat>, b: &Poly<Rat>) -> Poly<Rat> {
    let g = match (a.is_zero(), b.is_zero()) {
        (true, true) => return Poly::one(),
        (true, false) => b.clone(),
        (false, true) => a.clone(),
        (false, false) => a.gcd(b),
    };
    if g.deg() <= 0 {
        return Poly::one();
    }
    let t = g.squarefree_part().monic();
    let ta = if a.is_zero() { t.clone() } else { layer(&t, a, 4) };
    let tb = if b.is_zero() { t.clone() } else { layer(&t, b, 6) };
    ta.gcd(&tb)
}

/// Squarefree part of the primes of `t` dividing `f` at least `k` times.
fn layer(t: &Poly<Rat>, f: &Poly<Rat>, k: usize) -> Poly<Rat> {
    let mut tt = t.clone();
    let mut cur = f.clone();
    for _ in 0..k {
        tt = tt.gcd(&cur);
        if tt.deg() <= 0 {
            return Poly::one();
        }
        cur = cur.exact_div_poly(&tt).unwrap();
    }
    tt
}

/// The positive rational `c` such that `c^4 a` and `c^6 b` are integral
/// with no prime `l` having `l^4 | content(c^4 a)` and `l^6 | content(c^6 b)`.
fn integral_unit(a: &Poly<Rat>, b: &Poly<Rat>) -> Rat {
    let d = lcm_denominators(a.coeffs().iter().chain(b.coeffs()));
    let dr = Rat::from_int(d);
    let ca = content_int(&a.scale(&dr.pow_i(4)));
    let cb = content_int(&b.scale(&dr.pow_i(6)));
    let mut shrink = BigInt::one();
    let mut ga = ca.clone();
    let mut gb = cb.clone();
    let g = match (ga.is_zero(), gb.is_zero()) {
        (true, true) => return dr,
        (true, false) => gb.clone(),
        (false, true) => ga.clone(),
        (false, false) => ga.gcd(&gb),
    };
    let mut rest = g;
    let mut p = 2u64;
    while p < TRIAL_LIMIT && rest > BigInt::one() {
        let pb = BigInt::from(p);
        if (&rest % &pb).is_zero() {
            while (&rest % &pb).is_zero() {
                rest /= &pb;
            }
            loop {
                let p4 = pb.pow(4);
                let p6 = pb.pow(6);
                let ok_a = ga.is_zero() || (&ga % &p4).is_zero();
                let ok_b = gb.is_zero() || (&gb % &p6).is_zero();
                if !(ok_a && ok_b) {
                    break;
                }
                if !ga.is_zero() {
                    ga /= &p4;
                }
                if !gb.is_zero() {
                    gb /= &p6;
                }
                shrink *= &pb;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // leftover above the trial bound: try it and its square root whole
    if rest > BigInt::one() {
        let mut cand = vec![rest.clone()];
        let r2 = rest.sqrt();
        if &r2 * &r2 == rest {
            cand.push(r2);
        }
        for l in cand {
            if l <= BigInt::one() {
                continue;
            }
            let ok_a = ga.is_zero() || (&ga % l.pow(4)).is_zero();
            let ok_b = gb.is_zero() || (&gb % l.pow(6)).is_zero();
            if ok_a && ok_b {
                if !ga.is_zero() {
                    ga /= l.pow(4);
                }
                if !gb.is_zero() {
                    gb /= l.pow(6);
                }
                shrink *= &l;
            }
        }
    }
    dr / Rat::from_int(shrink)
}

fn content_int(p: &Poly<Rat>) -> BigInt {
    if p.is_zero() {
        return BigInt::zero();
    }
    gcd_numerators(p.coeffs()).abs()
}

/// `chi = max(ceil(deg a_i / i))` of a polynomial short model.
pub fn euler_chi(e: &WeierstrassCurve<Qt>) -> Option<i64> {
    let da = e.a4.as_poly()?.deg();
    let db = e.a6.as_poly()?.deg();
    let c = |d: i64, i: i64| if d <= 0 { 0 } else { (d + i - 1) / i };
    Some(c(da, 4).max(c(db, 6)).max(1))
}

/// Coefficientwise substitution `t <- phi`.
pub fn base_change(e: &WeierstrassCurve<Qt>, phi: &Qt) -> WeierstrassCurve<Qt> {
    e.map(|c| c.compose(phi))
}

/// The model over Q(u) of a curve whose coefficients are even in t.
pub fn descend_square(e: &WeierstrassCurve<Qt>) -> Option<WeierstrassCurve<Qt>> {
    Some(WeierstrassCurve::new_unchecked(
        e.a1.even_part_in_square()?,
        e.a2.even_part_in_square()?,
        e.a3.even_part_in_square()?,
        e.a4.even_part_in_square()?,
        e.a6.even_part_in_square()?,
    ))
}

/// Minimal model over Q(u), `u = t^2`, of a curve over Q(t) that is
/// isomorphic to its conjugate under `t -> -t`.
///
/// The model over Q(t) is minimalized first; its normalization makes the
/// coefficients even whenever a model over Q(u) exists. The returned
/// isomorphism is over Q(t) and carries `e` onto the pullback of the result.
pub fn minimal_model_descended(
    e: &WeierstrassCurve<Qt>,
) -> Result<(WeierstrassCurve<Qt>, WeierstrassIso<Qt>), EllCurveError> {
    let (m, iso_t) = minimal_model(e)?;
    let d = descend_square(&m).ok_or_else(|| EllCurveError::Unmappable("model is not even in t".into()))?;
    let (mu, iso_u) = minimal_model(&d)?;
    let iso = iso_t.then(&iso_u.map(|c| c.substitute_square()));
    Ok((mu, iso))
}

/// Pullback along `u = t^2`.
pub fn pullback_square<F: Field>(e: &WeierstrassCurve<RatFunc<F>>) -> WeierstrassCurve<RatFunc<F>> {
    e.map(|c| c.substitute_square())
}

/// Fibre at `t = t0` over Q; the result may be singular.
pub fn specialize(e: &WeierstrassCurve<Qt>, t0: &Rat) -> Result<WeierstrassCurve<Rat>, EllCurveError> {
    let ev = |c: &Qt| c.eval(t0).ok_or_else(|| EllCurveError::Pole(t0.to_string()));
    Ok(WeierstrassCurve::new_unchecked(
        ev(&e.a1)?,
        ev(&e.a2)?,
        ev(&e.a3)?,
        ev(&e.a4)?,
        ev(&e.a6)?,
    ))
}

/// Reduction of a polynomial over Q modulo `p`; `None` if a denominator is
/// divisible by `p`.
pub fn reduce_poly(f: &Poly<Rat>, p: u64) -> Option<Poly<Fp>> {
    let c: Option<Vec<Fp>> = f.coeffs().iter().map(|c| reduce_rat(c, p)).collect();
    Some(Poly::new(c?))
}

/// Reduction of a polynomial model modulo `p`.
pub fn reduce_curve(e: &WeierstrassCurve<Qt>, p: u64) -> Option<WeierstrassCurve<RatFunc<Fp>>> {
    let red = |c: &Qt| -> Option<RatFunc<Fp>> {
        let n = reduce_poly(c.num(), p)?;
        let d = reduce_poly(c.den(), p)?;
        if d.is_zero() {
            return None;
        }
        Some(RatFunc::new(with_modulus(n, p), with_modulus(d, p)))
    };
    Some(WeierstrassCurve::new_unchecked(
        red(&e.a1)?,
        red(&e.a2)?,
        red(&e.a3)?,
        red(&e.a4)?,
        red(&e.a6)?,
    ))
}

fn with_modulus(f: Poly<Fp>, p: u64) -> Poly<Fp> {
    // the zero polynomial carries no modulus; keep it as is
    if f.is_zero() {
        return f;
    }
    Poly::new(f.coeffs().iter().map(|c| Fp::new(c.value_mod(p) as i64, p)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t_pow(k: usize) -> Qt {
        Qt::from_poly(Poly::monomial(Rat::one(), k))
    }

    #[test]
    fn removes_seventh_power() {
        let e = WeierstrassCurve::short(Qt::zero(), t_pow(7)).unwrap();
        let (m, iso) = minimal_model(&e).unwrap();
        assert_eq!(m.a6, t_pow(1));
        assert_eq!(iso.apply_curve(&e), m);
    }

    #[test]
    fn minimal_input_is_unchanged() {
        let e = WeierstrassCurve::short(Qt::from_i64(1), t_pow(1)).unwrap();
        let (m, _) = minimal_model(&e).unwrap();
        assert_eq!(m, e);
    }

    #[test]
    fn denominators_and_contents() {
        // A = 16/t^4, B = 64 (t+1)/t^6 is 2^4, 2^6 times a t-twist of (1, t+1)
        let t = Qt::var();
        let a = Qt::from_i64(16) / t_pow(4);
        let b = Qt::from_i64(64) * &(t + Qt::one()) / t_pow(6);
        let e = WeierstrassCurve::short(a, b).unwrap();
        let (m, _) = minimal_model(&e).unwrap();
        assert_eq!(m.a4, Qt::one());
        assert_eq!(m.a6, Qt::var() + Qt::one());
        assert_eq!(euler_chi(&m), Some(1));
    }
}
