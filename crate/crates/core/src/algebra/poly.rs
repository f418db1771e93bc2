//! Dense univariate polynomials, coefficients stored in ascending order.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{forward_ops, AlgebraError, Field, Ring};

/// Dense univariate polynomial. Coefficients are ascending and never carry
/// a trailing zero, so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq)]
pub struct Poly<R> {
    c: Vec<R>,
}

impl<R: Ring> Poly<R> {
    pub fn new(mut c: Vec<R>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(R::one())
    }

    pub fn constant(a: R) -> Self {
        Poly::new(vec![a])
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Poly::new(vec![R::zero(), R::one()])
    }

    pub fn monomial(a: R, k: usize) -> Self {
        if a.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![R::zero(); k];
        c.push(a);
        Poly { c }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&v| R::from_i64(v)).collect())
    }

    pub fn coeffs(&self) -> &[R] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to -1.
    pub fn deg(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn lc(&self) -> R {
        self.c.last().cloned().unwrap_or_else(R::zero)
    }

    pub fn coeff(&self, i: usize) -> R {
        self.c.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// Order of vanishing at `x = 0`; `None` for the zero polynomial.
    pub fn low_order(&self) -> Option<usize> {
        self.c.iter().position(|a| !a.is_zero())
    }

    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.c.iter().map(f).collect())
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.clone() * &R::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, k: &R) -> Self {
        Poly::new(self.c.iter().map(|a| a.clone() * k).collect())
    }

    /// `x^k * self`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![R::zero(); k];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &Poly<R>) -> Self {
        let mut acc = Poly::zero();
        for a in self.c.iter().rev() {
            acc = acc * g + &Poly::constant(a.clone());
        }
        acc
    }

    /// `self(-x)`.
    pub fn reflect(&self) -> Self {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .map(|(i, a)| if i % 2 == 1 { -a.clone() } else { a.clone() })
                .collect(),
        )
    }

    /// `x^n * self(1/x)`; requires `n >= deg`.
    pub fn reverse(&self, n: usize) -> Self {
        assert!(self.deg() <= n as i64, "reverse length below degree");
        let mut c = vec![R::zero(); n + 1];
        for (i, a) in self.c.iter().enumerate() {
            c[n - i] = a.clone();
        }
        Poly::new(c)
    }

    /// Whether only even powers occur.
    pub fn is_even(&self) -> bool {
        self.c.iter().skip(1).step_by(2).all(|a| a.is_zero())
    }

    /// For an even polynomial `f(x) = g(x^2)`, returns `g`.
    pub fn even_part_in_square(&self) -> Option<Self> {
        if !self.is_even() {
            return None;
        }
        Some(Poly::new(self.c.iter().step_by(2).cloned().collect()))
    }

    /// `g(x^2)`.
    pub fn substitute_square(&self) -> Self {
        let mut c = Vec::with_capacity(2 * self.c.len());
        for (i, a) in self.c.iter().enumerate() {
            c.push(a.clone());
            if i + 1 < self.c.len() {
                c.push(R::zero());
            }
        }
        Poly::new(c)
    }

    pub fn pow(&self, e: u32) -> Self {
        Ring::pow(self, e as u64)
    }

    fn add_ref(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a.clone() + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::new(c)
    }

    fn sub_ref(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a.clone() - b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => -b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::new(c)
    }

    fn mul_ref(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![R::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                let t = a.clone() * b;
                let slot = std::mem::replace(&mut c[i + j], R::zero());
                c[i + j] = slot + &t;
            }
        }
        Poly::new(c)
    }

    /// Exact quotient `self / d` when it exists over `R`.
    pub fn exact_div_poly(&self, d: &Poly<R>) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let dd = d.deg() as usize;
        if self.deg() < d.deg() {
            return None;
        }
        let lc = d.lc();
        let mut r = self.c.clone();
        let mut q = vec![R::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let top = r[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let f = top.exact_div(&lc)?;
            for (j, b) in d.c.iter().enumerate() {
                let t = f.clone() * b;
                let slot = std::mem::replace(&mut r[k + j], R::zero());
                r[k + j] = slot - &t;
            }
            q[k] = f;
        }
        if r.iter().all(|a| a.is_zero()) {
            Some(Poly::new(q))
        } else {
            None
        }
    }

    /// Resultant through the Sylvester determinant, with fraction-free
    /// (Bareiss) elimination over the coefficient ring.
    pub fn resultant_sylvester(&self, g: &Poly<R>) -> Result<R, AlgebraError> {
        if self.is_zero() && g.is_zero() {
            return Err(AlgebraError::ZeroResultant);
        }
        if self.is_zero() || g.is_zero() {
            return Ok(R::zero());
        }
        let m = self.deg() as usize;
        let n = g.deg() as usize;
        if m == 0 && n == 0 {
            return Ok(R::one());
        }
        let size = m + n;
        let mut mat = vec![vec![R::zero(); size]; size];
        for (i, row) in mat.iter_mut().enumerate().take(n) {
            for (j, a) in self.c.iter().rev().enumerate() {
                row[i + j] = a.clone();
            }
        }
        for i in 0..m {
            for (j, a) in g.c.iter().rev().enumerate() {
                mat[n + i][i + j] = a.clone();
            }
        }
        Ok(bareiss_det(mat))
    }
}

/// Determinant by Bareiss fraction-free elimination.
pub fn bareiss_det<R: Ring>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    if n == 0 {
        return R::one();
    }
    let mut sign = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return R::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].clone() * &m[k][k] - m[i][k].clone() * &m[k][j];
                m[i][j] = num
                    .exact_div(&prev)
                    .expect("Bareiss step must divide exactly");
            }
            m[i][k] = R::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

impl<F: Field> Poly<F> {
    pub fn div_rem(&self, d: &Poly<F>) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.deg() < d.deg() {
            return (Poly::zero(), self.clone());
        }
        let dd = d.deg() as usize;
        let inv = d.lc().inv().expect("nonzero leading coefficient");
        let mut r = self.c.clone();
        let mut q = vec![F::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let top = r[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let f = top * &inv;
            for (j, b) in d.c.iter().enumerate() {
                let t = f.clone() * b;
                let slot = std::mem::replace(&mut r[k + j], F::zero());
                r[k + j] = slot - &t;
            }
            q[k] = f;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly<F>) -> Self {
        self.div_rem(d).1
    }

    pub fn divides(&self, f: &Poly<F>) -> bool {
        f.rem(self).is_zero()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = self.lc().inv().unwrap();
        self.scale(&inv)
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.lc().is_one()
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Poly<F>) -> Self {
        if self.is_zero() && o.is_zero() {
            return Poly::zero();
        }
        if let Some(g) = F::poly_gcd(self, o) {
            return g;
        }
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*o = g`, `g` monic.
    pub fn ext_gcd(&self, o: &Poly<F>) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0 - &(q.clone() * &s1);
            let t2 = t0 - &(q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inv().unwrap();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn lcm(&self, o: &Poly<F>) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(o);
        (self.clone() * o).div_rem(&g).0.monic()
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &Poly<F>) -> Self {
        let mut base = self.rem(m);
        let mut acc = Poly::one().rem(m);
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = (acc * &base).rem(m);
            }
            if i + 1 < bits {
                base = (base.clone() * &base).rem(m);
            }
        }
        acc
    }

    /// Multiplicity of `d` (non-constant) as a factor of `self`, together
    /// with the cofactor.
    pub fn split_off_power(&self, d: &Poly<F>) -> (usize, Self) {
        assert!(d.deg() > 0);
        let mut k = 0;
        let mut f = self.clone();
        if f.is_zero() {
            return (usize::MAX, f);
        }
        loop {
            let (q, r) = f.div_rem(d);
            if !r.is_zero() {
                return (k, f);
            }
            f = q;
            k += 1;
        }
    }

    /// Squarefree decomposition `f = lc(f) * prod g_k^k` with `g_k` monic,
    /// squarefree and pairwise coprime. Returned in increasing `k`.
    ///
    /// In characteristic `p` the coefficients must lie in the prime field
    /// (Frobenius acts trivially on them).
    pub fn squarefree_decomposition(&self) -> Result<Vec<(Self, usize)>, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        let f = self.monic();
        if f.deg() == 0 {
            return Ok(Vec::new());
        }
        let p = f.lc().characteristic();
        let mut out = if p == 0 { yun(&f) } else { sqf_char_p(&f, p as usize) };
        out.sort_by_key(|(_, k)| *k);
        Ok(out)
    }

    /// Product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self) -> Self {
        match self.squarefree_decomposition() {
            Ok(parts) => parts
                .into_iter()
                .fold(Poly::one(), |acc, (g, _)| acc * &g),
            Err(_) => Poly::zero(),
        }
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).deg() == 0
    }

    /// Resultant by the Euclidean algorithm.
    pub fn resultant(&self, g: &Poly<F>) -> Result<F, AlgebraError> {
        if self.is_zero() && g.is_zero() {
            return Err(AlgebraError::ZeroResultant);
        }
        if self.is_zero() || g.is_zero() {
            return Ok(F::zero());
        }
        let mut a = self.clone();
        let mut b = g.clone();
        let mut acc = F::one();
        loop {
            let m = a.deg() as u64;
            let n = b.deg() as u64;
            if n == 0 {
                return Ok(acc * &b.lc().pow(m));
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return Ok(F::zero());
            }
            let k = r.deg() as u64;
            // res(a, b) = (-1)^{mn} lc(b)^{m-k} res(b, r)
            let mut factor = b.lc().pow(m - k);
            if (m * n) % 2 == 1 {
                factor = -factor;
            }
            acc = acc * &factor;
            a = b;
            b = r;
        }
    }

    pub fn discriminant(&self) -> F {
        let n = self.deg();
        assert!(n >= 1);
        let r = self.resultant(&self.derivative()).unwrap();
        let sign = if (n * (n - 1) / 2) % 2 == 1 { -F::one() } else { F::one() };
        sign * &r / &self.lc()
    }

    /// Lagrange interpolation through distinct abscissae.
    pub fn interpolate(points: &[(F, F)]) -> Self {
        let mut acc = Poly::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = Poly::constant(yi.clone());
            for (j, (xj, _)) in points.iter().enumerate() {
                if i != j {
                    let denom = xi.clone() - xj;
                    let lin = Poly::new(vec![-xj.clone(), F::one()]);
                    basis = (basis * &lin).scale(&denom.inv().expect("distinct nodes"));
                }
            }
            acc = acc + &basis;
        }
        acc
    }

    /// Roots in the coefficient field from linear factors; only for
    /// polynomials whose factorization is known to the caller.
    pub fn root_of_linear(&self) -> Option<F> {
        if self.deg() != 1 {
            return None;
        }
        Some(-self.coeff(0) / &self.coeff(1))
    }
}

fn yun<F: Field>(f: &Poly<F>) -> Vec<(Poly<F>, usize)> {
    let mut out = Vec::new();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.div_rem(&a0).0;
    let c = df.div_rem(&a0).0;
    let mut d = c - &b.derivative();
    let mut i = 1;
    while b.deg() > 0 {
        let a = b.gcd(&d);
        let nb = b.div_rem(&a).0;
        let nc = d.div_rem(&a).0;
        d = nc - &nb.derivative();
        if a.deg() > 0 {
            out.push((a.monic(), i));
        }
        b = nb;
        i += 1;
    }
    out
}

fn pth_root<F: Field>(f: &Poly<F>, p: usize) -> Poly<F> {
    Poly::new(f.c.iter().step_by(p).cloned().collect())
}

fn sqf_char_p<F: Field>(f: &Poly<F>, p: usize) -> Vec<(Poly<F>, usize)> {
    let mut out: Vec<(Poly<F>, usize)> = Vec::new();
    let df = f.derivative();
    if df.is_zero() {
        let r = pth_root(f, p);
        for (g, k) in sqf_char_p(&r.monic(), p) {
            out.push((g, k * p));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while w.deg() > 0 {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).0;
        if z.deg() > 0 {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.div_rem(&w).0;
    }
    if c.deg() > 0 {
        let r = pth_root(&c, p);
        for (g, k) in sqf_char_p(&r.monic(), p) {
            out.push((g, k * p));
        }
    }
    // merge equal multiplicities
    out.sort_by_key(|(_, k)| *k);
    let mut merged: Vec<(Poly<F>, usize)> = Vec::new();
    for (g, k) in out {
        match merged.last_mut() {
            Some((h, kk)) if *kk == k => *h = h.clone() * &g,
            _ => merged.push((g, k)),
        }
    }
    merged
}

forward_ops!(Poly<R>, R: Ring);

impl<R: Ring> std::ops::Neg for Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        Poly {
            c: self.c.into_iter().map(|a| -a).collect(),
        }
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn from_i64(n: i64) -> Self {
        Poly::constant(R::from_i64(n))
    }
    fn from_bigint(n: &num_bigint::BigInt) -> Self {
        Poly::constant(R::from_bigint(n))
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        self.exact_div_poly(other)
    }
}

impl<R: Ring> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.c.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

impl<R: Ring> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `p^k` as a `BigUint`.
pub fn big_pow(p: u64, k: u32) -> BigUint {
    let mut acc = BigUint::one();
    for _ in 0..k {
        acc *= p;
    }
    if acc.is_zero() {
        BigUint::one()
    } else {
        acc
    }
}
