//! The doubling limit after reduction modulo word-sized primes.
//!
//! Exact doubling over Q multiplies coefficient sizes by four per step, so
//! on surfaces with `chi > 1` the limit is also run over `F_p`. The degree of
//! `x(2^k P)` survives reduction for all but finitely many `p`, and results
//! from several primes must agree before one is returned.

use crate::algebra::fp::{reduce_rat, sqrt_mod};
use crate::algebra::{Field, Fp, Poly, QuadExt, Rat, Ring};
use crate::kodaira::ShortModel;

/// Constant fields with reduction maps to prime fields.
pub trait ModularReduction: Field {
    /// Image in `F_p`; `None` when `p` divides a denominator or a needed
    /// square root does not exist mod `p`.
    fn reduce_mod(&self, p: u64) -> Option<Fp>;
}

impl ModularReduction for Rat {
    fn reduce_mod(&self, p: u64) -> Option<Fp> {
        reduce_rat(self, p)
    }
}

impl ModularReduction for QuadExt {
    fn reduce_mod(&self, p: u64) -> Option<Fp> {
        let a = reduce_rat(self.a(), p)?;
        if self.b().is_zero() {
            return Some(a);
        }
        let d = self.d().rem_euclid(p as i64) as u64;
        let s = sqrt_mod(d, p)?;
        Some(a + reduce_rat(self.b(), p)? * Fp::new(s as i64, p))
    }
}

/// Coefficient-wise reduction keeping the degree.
pub(super) fn reduce_poly<F: ModularReduction>(f: &Poly<F>, p: u64) -> Option<Poly<Fp>> {
    let c = f.coeffs().iter().map(|c| c.reduce_mod(p)).collect::<Option<Vec<_>>>()?;
    let g = Poly::new(c);
    (g.deg() == f.deg()).then_some(g)
}

/// Primes below `2^31` on which the data reduces well, largest first.
pub(super) fn admissible_primes<F: ModularReduction>(
    model: &ShortModel<F>,
    places: &[&Poly<F>],
    num: &Poly<F>,
    den: &Poly<F>,
    count: usize,
) -> Vec<(u64, ShortModel<Fp>, Vec<Poly<Fp>>, Poly<Fp>, Poly<Fp>)> {
    let mut out = Vec::new();
    let mut p = (1u64 << 31) - 1;
    while out.len() < count && p > 5 {
        p -= 2;
        if !crate::algebra::modgcd::is_prime_word(p) {
            continue;
        }
        let red = || -> Option<_> {
            let m = ShortModel {
                a: reduce_poly(&model.a, p)?,
                b: reduce_poly(&model.b, p)?,
            };
            let mut pis = Vec::new();
            for pi in places {
                let r = reduce_poly(pi, p)?;
                if r.gcd(&r.derivative()).deg() > 0 {
                    return None;
                }
                pis.push(r);
            }
            Some((p, m, pis, reduce_poly(num, p)?, reduce_poly(den, p)?))
        };
        if let Some(r) = red() {
            out.push(r);
        }
    }
    out
}
