//! The doubling limit on `x = N/D`, kept as a pair of polynomials.
//!
//! Duplication on `y^2 = x^3 + A x + B` sends `N/D` to
//! `(N^4 - 2A N^2 D^2 - 8B N D^3 + A^2 D^4) / (4D (N^3 + A N D^2 + B D^3))`.
//! The two sides share a factor only at a place where the point meets a
//! singular point of its fibre, which happens only on reducible fibres, so
//! cancelling there keeps the fraction reduced without a full gcd.

use crate::algebra::{Field, Poly, Rat, Ring};
use crate::kodaira::ShortModel;

fn cancel<F: Field>(num: &mut Poly<F>, den: &mut Poly<F>, places: &[&Poly<F>]) {
    for pi in places {
        loop {
            let g = pi.gcd(&num.rem(pi));
            let g = if g.is_constant() { g } else { g.gcd(&den.rem(&g)) };
            if g.is_constant() {
                break;
            }
            *num = num.exact_div_poly(&g).expect("common factor");
            *den = den.exact_div_poly(&g).expect("common factor");
        }
    }
}

fn double<F: Field>(m: &ShortModel<F>, n: &Poly<F>, d: &Poly<F>) -> (Poly<F>, Poly<F>) {
    let (a, b) = (&m.a, &m.b);
    let n2 = n.clone() * n;
    let d2 = d.clone() * d;
    let nd = n.clone() * d;
    let d3 = d2.clone() * d;
    let num = n2.clone() * &n2 - &(a.clone() * &n2 * &d2).scale(&F::from_i64(2))
        - &(b.clone() * &nd * &d2).scale(&F::from_i64(8))
        + &(a.clone() * a * &d2 * &d2);
    let den = (d.clone() * &(n2 * n + &(a.clone() * &nd * d) + &(b.clone() * &d3))).scale(&F::from_i64(4));
    (num, den)
}

/// `deg x(2^k P) / 4^k`, rounded into `(1/bound_n) Z` at the first `k` with
/// `c / 4^k < 1 / (2 bound_n)`.
pub(super) fn height<F: Field>(
    m: &ShortModel<F>,
    places: &[&Poly<F>],
    mut num: Poly<F>,
    mut den: Poly<F>,
    c: &Rat,
    bound_n: u64,
) -> Rat {
    let target = Rat::new(1, 2 * bound_n);
    let mut scale = Rat::one();
    loop {
        if c.clone() * &scale < target {
            let deg = num.deg().max(den.deg());
            return (Rat::from_i64(deg) * &scale).round_to_denominator(bound_n);
        }
        let (mut n2, mut d2) = double(m, &num, &den);
        if d2.is_zero() {
            // 2P = O along the way: P is torsion
            return Rat::zero();
        }
        cancel(&mut n2, &mut d2, places);
        let all: Vec<&F> = n2.coeffs().iter().chain(d2.coeffs()).collect();
        let k = F::primitive_scale(&all).unwrap_or_else(|| d2.lc().inv().expect("nonzero"));
        num = n2.scale(&k);
        den = d2.scale(&k);
        scale = scale / Rat::from_i64(4);
    }
}
