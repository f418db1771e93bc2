use std::fmt;

use crate::algebra::{Fp, Poly, Rat, Ring};
use crate::heights::Theorem1Report;
use crate::kodaira::{shioda_tate_rank, FibreConfiguration};

/// Orders of the roots of unity `zeta` with `[Q(zeta) : Q] <= 4`.
pub const ZETA_ORDERS: [u32; 9] = [1, 2, 3, 4, 5, 6, 8, 10, 12];

/// Cyclotomic polynomial, ascending coefficients.
fn cyclotomic(k: u32) -> Vec<i128> {
    match k {
        1 => vec![-1, 1],
        2 => vec![1, 1],
        3 => vec![1, 1, 1],
        4 => vec![1, 0, 1],
        5 => vec![1, 1, 1, 1, 1],
        6 => vec![1, -1, 1],
        8 => vec![1, 0, 0, 0, 1],
        10 => vec![1, -1, 1, -1, 1],
        12 => vec![1, 0, -1, 0, 1],
        _ => panic!("no cyclotomic polynomial of degree <= 4 for order {k}"),
    }
}

/// Minimal polynomial of `p zeta`: `p^phi Phi_k(X / p)`.
fn scaled_cyclotomic(k: u32, p: i128) -> Vec<i128> {
    let c = cyclotomic(k);
    let d = c.len() - 1;
    c.iter().enumerate().map(|(i, &ci)| ci * p.pow((d - i) as u32)).collect()
}

fn mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact quotient by a monic divisor, if it divides.
fn div_exact(f: &[i128], d: &[i128]) -> Option<Vec<i128>> {
    let (n, m) = (f.len() - 1, d.len() - 1);
    if n < m {
        return None;
    }
    let mut r = f.to_vec();
    let mut q = vec![0; n - m + 1];
    for k in (0..=n - m).rev() {
        let c = r[k + m];
        q[k] = c;
        for (j, &dj) in d.iter().enumerate() {
            r[k + j] -= c * dj;
        }
    }
    r.iter().all(|&c| c == 0).then_some(q)
}

/// Formats an ascending monic integer polynomial in `X`.
pub fn format_poly(c: &[i128]) -> String {
    let mut s = String::new();
    for (i, &ci) in c.iter().enumerate().rev() {
        if ci == 0 {
            continue;
        }
        let sign = if ci < 0 { "-" } else { "+" };
        if s.is_empty() {
            if ci < 0 {
                s.push('-');
            }
        } else {
            s.push_str(&format!(" {sign} "));
        }
        let a = ci.unsigned_abs();
        match (i, a) {
            (0, _) => s.push_str(&a.to_string()),
            (_, 1) => {}
            _ => s.push_str(&a.to_string()),
        }
        match i {
            0 => {}
            1 => s.push('X'),
            _ => s.push_str(&format!("X^{i}")),
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// Splits an integer polynomial into monic integer factors of degree one
/// and two (and a leftover), for display.
pub fn factor_display(c: &[i128]) -> String {
    let f = Poly::new(c.iter().map(|&x| Rat::from_int(x)).collect());
    let fac = crate::algebra::factor_rationals(&f);
    let mut parts: Vec<(i64, String)> = Vec::new();
    for (g, k) in &fac.factors {
        let ints: Vec<i128> = g
            .coeffs()
            .iter()
            .map(|x| x.to_i64().map(|v| v as i128))
            .collect::<Option<_>>()
            .unwrap_or_default();
        let text = if ints.is_empty() { g.to_string() } else { format_poly(&ints) };
        for _ in 0..*k {
            parts.push((g.deg(), text.clone()));
        }
    }
    parts.sort();
    if parts.len() == 1 {
        return parts[0].1.clone();
    }
    parts.iter().map(|(_, t)| format!("({t})")).collect()
}

/// Whether every complex root of the monic integer polynomial has absolute
/// value `p`, decided exactly.
///
/// With `D(Y) = C(pY) / p^d` the condition is that all roots of `D` lie on
/// the unit circle. After removing the factors `Y - 1` and `Y + 1`, `D` must
/// be palindromic, `D(Y) = Y^m R(Y + 1/Y)`, and `R` must have all its roots
/// real and in `(-2, 2)`, which a Sturm sequence counts.
pub fn roots_on_circle(c: &[i128], p: i128) -> bool {
    let d = c.len() - 1;
    if d == 0 {
        return true;
    }
    let pr = Rat::from_int(p);
    let mut dy: Poly<Rat> = Poly::new(
        c.iter()
            .enumerate()
            .map(|(i, &ci)| Rat::from_int(ci) * &pr.pow_i(i as i32 - d as i32))
            .collect(),
    );
    for lin in [Poly::<Rat>::from_i64s(&[-1, 1]), Poly::from_i64s(&[1, 1])] {
        while dy.deg() > 0 && dy.eval(&-lin.coeff(0)).is_zero() {
            dy = dy.exact_div_poly(&lin).expect("root found");
        }
    }
    let n = dy.deg() as usize;
    if n == 0 {
        return true;
    }
    let co = dy.coeffs();
    if n % 2 == 1 || (0..=n).any(|i| co[i] != co[n - i]) {
        return false;
    }
    let m = n / 2;
    // Y^k + Y^-k = V_k(w): V_0 = 2, V_1 = w, V_{k+1} = w V_k - V_{k-1}
    let w = Poly::<Rat>::x();
    let mut v = vec![Poly::constant(Rat::from_i64(2)), w.clone()];
    for k in 1..m {
        let next = w.clone() * &v[k] - &v[k - 1];
        v.push(next);
    }
    let mut r = Poly::constant(co[m].clone());
    for k in 1..=m {
        r = r + &v[k].scale(&co[m + k]);
    }
    let sq = r.squarefree_part();
    let two = Rat::from_i64(2);
    sq.deg() as usize == sturm_count(&sq, &-two.clone(), &two)
        && !sq.eval(&two).is_zero()
        && !sq.eval(&-two).is_zero()
}

/// Number of distinct real roots of a squarefree `f` in `(lo, hi]`.
fn sturm_count(f: &Poly<Rat>, lo: &Rat, hi: &Rat) -> usize {
    let mut seq = vec![f.clone(), f.derivative()];
    while !seq.last().unwrap().is_zero() && seq.last().unwrap().deg() > 0 {
        let k = seq.len();
        let r = -seq[k - 2].rem(&seq[k - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(r);
    }
    let changes = |x: &Rat| {
        let signs: Vec<i32> = seq.iter().map(|g| g.eval(x).signum()).filter(|&s| s != 0).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    changes(lo) - changes(hi)
}

/// Frobenius on `H^2` split into known and unknown eigenvalues, with power
/// sums of the unknown ones derived from two point counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenLedger {
    pub p: u64,
    pub b2: u32,
    /// `(-3/p)`.
    pub epsilon: i32,
    /// Known eigenvalues with multiplicity: `p` from fibre components and
    /// sections, and `(-3/p) p`.
    pub known: Vec<i128>,
    pub unknown_count: usize,
    pub counts: [u64; 2],
    pub traces: [i128; 2],
    pub s1: i128,
    pub s2: i128,
}

impl EigenLedger {
    /// `e1, e2` of the unknown eigenvalues; `None` if `s1^2 - s2` is odd.
    pub fn elementary(&self) -> Option<(i128, i128)> {
        let t = self.s1 * self.s1 - self.s2;
        (t % 2 == 0).then_some((self.s1, t / 2))
    }

    /// `#S(F_{p^n}) = 1 + trace(F^n | H^2) + p^{2n}`.
    pub fn count_from_trace(&self, n: u32) -> u64 {
        let p = self.p as i128;
        (1 + self.traces[n as usize - 1] + p.pow(2 * n)) as u64
    }
}

impl fmt::Display for EigenLedger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.p as i128;
        let plus = self.known.len() - 1;
        writeln!(f, "p = {}", self.p)?;
        writeln!(f, "dim_h2 = {}", self.b2)?;
        writeln!(f, "known = {plus} x {}, 1 x {}", p, self.epsilon as i128 * p)?;
        writeln!(f, "unknown = {}", self.unknown_count)?;
        writeln!(f, "count_1 = {}", self.counts[0])?;
        writeln!(f, "count_2 = {}", self.counts[1])?;
        writeln!(f, "trace_1 = {}", self.traces[0])?;
        writeln!(f, "trace_2 = {}", self.traces[1])?;
        writeln!(f, "s1 = {}", self.s1)?;
        write!(f, "s2 = {}", self.s2)
    }
}

/// The ledger for a K3 surface (`b2 = 22`) with the given known part:
/// `fixed` eigenvalues equal to `p` and one equal to `(-3/p) p`.
pub fn eigen_ledger(p: u64, b2: u32, fixed: usize, counts: [u64; 2]) -> EigenLedger {
    let pi = p as i128;
    let epsilon = Fp::new(-3, p).legendre();
    let mut known = vec![pi; fixed];
    known.push(epsilon as i128 * pi);
    let traces = [1u32, 2].map(|n| counts[n as usize - 1] as i128 - 1 - pi.pow(2 * n));
    let power = |n: u32| traces[n as usize - 1] - known.iter().map(|e| e.pow(n)).sum::<i128>();
    EigenLedger {
        p,
        b2,
        epsilon,
        unknown_count: b2 as usize - known.len(),
        s1: power(1),
        s2: power(2),
        known,
        counts,
        traces,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Contradiction(String),
    /// The cofactor and the full characteristic polynomial of the unknown
    /// block, ascending monic integer coefficients.
    Consistent { cofactor: Vec<i128>, charpoly: Vec<i128> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisOutcome {
    pub zeta_order: u32,
    pub det_sign: i32,
    pub verdict: Verdict,
}

impl HypothesisOutcome {
    pub fn is_contradiction(&self) -> bool {
        matches!(self.verdict, Verdict::Contradiction(_))
    }
}

impl fmt::Display for HypothesisOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.det_sign > 0 { '+' } else { '-' };
        write!(f, "zeta_order = {} det = {sign} ", self.zeta_order)?;
        match &self.verdict {
            Verdict::Contradiction(why) => write!(f, "contradiction ({why})"),
            Verdict::Consistent { cofactor, .. } => {
                write!(f, "consistent cofactor = {} = {}", format_poly(cofactor), factor_display(cofactor))
            }
        }
    }
}

/// For each `zeta` and each sign of `det(F | H^2)`: assume the minimal
/// polynomial `m` of `p zeta` divides the characteristic polynomial `P` of
/// the unknown block and solve for the cofactor.
///
/// `P = X^4 - e1 X^3 + e2 X^2 - e3 X + e4` with `e1, e2` from the power
/// sums, `e4 = det_sign (-3/p) p^4`, and `e3` free.
pub fn test_hypotheses(l: &EigenLedger) -> Vec<HypothesisOutcome> {
    assert_eq!(l.unknown_count, 4, "hypotheses are set up for four unknown eigenvalues");
    let p = l.p as i128;
    let mut out = Vec::new();
    for &k in &ZETA_ORDERS {
        for det_sign in [1, -1] {
            let verdict = match l.elementary() {
                None => Verdict::Contradiction("s1^2 - s2 is odd".into()),
                Some((e1, e2)) => {
                    let e4 = det_sign as i128 * l.epsilon as i128 * p.pow(4);
                    solve_hypothesis(&scaled_cyclotomic(k, p), p, -e1, e2, e4)
                }
            };
            out.push(HypothesisOutcome { zeta_order: k, det_sign, verdict });
        }
    }
    out
}

/// `m` monic ascending; `p3, p2, p0` the known coefficients of `P`.
fn solve_hypothesis(m: &[i128], p: i128, p3: i128, p2: i128, p0: i128) -> Verdict {
    let bad = |s: &str| Verdict::Contradiction(s.to_string());
    let cofactor = match m.len() - 1 {
        1 => {
            // (X + m0)(X^3 + c2 X^2 + c1 X + c0)
            let m0 = m[0];
            let c2 = p3 - m0;
            let c1 = p2 - m0 * c2;
            if p0 % m0 != 0 {
                return bad("constant term not integral");
            }
            vec![p0 / m0, c1, c2, 1]
        }
        2 => {
            // (X^2 + m1 X + m0)(X^2 + c1 X + c0)
            let (m0, m1) = (m[0], m[1]);
            let c1 = p3 - m1;
            let c0 = p2 - m0 - m1 * c1;
            if m0 * c0 != p0 {
                return bad("determinant mismatch");
            }
            vec![c0, c1, 1]
        }
        4 => {
            if m[3] != p3 || m[2] != p2 || m[0] != p0 {
                return bad("power sums or determinant mismatch");
            }
            vec![1]
        }
        _ => unreachable!("minimal polynomials have degree 1, 2 or 4"),
    };
    if !roots_on_circle(&cofactor, p) {
        return bad("cofactor violates the Weil bound");
    }
    Verdict::Consistent { charpoly: mul(m, &cofactor), cofactor }
}

/// Number of roots of the form `p zeta` of a monic integer polynomial,
/// with multiplicity.
pub fn count_root_of_unity_multiples(c: &[i128], p: i128) -> usize {
    let mut f = c.to_vec();
    let mut n = 0;
    for &k in &ZETA_ORDERS {
        let m = scaled_cyclotomic(k, p);
        while let Some(q) = div_exact(&f, &m) {
            n += m.len() - 1;
            f = q;
        }
    }
    n
}

/// Power sums `sum r^n` of the roots of a monic integer polynomial, by
/// Newton's identities.
pub fn power_sum(c: &[i128], n: u32) -> i128 {
    let d = c.len() - 1;
    // e_k with P = sum (-1)^k e_k X^(d-k)
    let e: Vec<i128> = (0..=d).map(|k| if k % 2 == 0 { c[d - k] } else { -c[d - k] }).collect();
    let mut s = vec![d as i128];
    for k in 1..=n as usize {
        let mut v = 0;
        for i in 1..k.min(d + 1) {
            let term = e[i] * s[k - i];
            v += if i % 2 == 1 { term } else { -term };
        }
        if k <= d {
            let term = k as i128 * e[k];
            v += if k % 2 == 1 { term } else { -term };
        }
        s.push(v);
    }
    s[n as usize]
}

/// `#S(F_{p^n})` predicted by the known eigenvalues and the characteristic
/// polynomial of the unknown block.
pub fn predicted_count(l: &EigenLedger, charpoly: &[i128], n: u32) -> i128 {
    let p = l.p as i128;
    let trace = l.known.iter().map(|e| e.pow(n)).sum::<i128>() + power_sum(charpoly, n);
    1 + trace + p.pow(2 * n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NsBound {
    pub ledger: EigenLedger,
    pub outcomes: Vec<HypothesisOutcome>,
    /// Upper bound on `rank NS(S)` over the algebraic closure.
    pub bound: usize,
}

impl NsBound {
    pub fn all_contradictions(&self) -> bool {
        self.outcomes.iter().all(|o| o.is_contradiction())
    }
}

/// Known eigenvalues of the form `p zeta`, plus the most any consistent
/// hypothesis adds.
pub fn ns_rank_bound(ledger: &EigenLedger) -> NsBound {
    let outcomes = test_hypotheses(ledger);
    let p = ledger.p as i128;
    let extra = outcomes
        .iter()
        .filter_map(|o| match &o.verdict {
            Verdict::Consistent { charpoly, .. } => Some(count_root_of_unity_multiples(charpoly, p)),
            Verdict::Contradiction(_) => None,
        })
        .max()
        .unwrap_or(0);
    NsBound { bound: ledger.known.len() + extra, ledger: ledger.clone(), outcomes }
}

/// Ranks over `Qbar(t)` and `Q(t)` from the Neron-Severi bound, the
/// generator Gram rank and the Theorem 1 certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankConclusion {
    pub ns_bound: usize,
    /// Shioda-Tate with the bound.
    pub upper: i64,
    /// Generators over `Q(t)` plus the independent direction from `Q`.
    pub lower: i64,
    pub geometric: Option<i64>,
    pub rational: Option<i64>,
}

impl fmt::Display for RankConclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |v: Option<i64>| v.map_or("undetermined".to_string(), |r| r.to_string());
        writeln!(f, "rank_ns_bound = {}", self.ns_bound)?;
        writeln!(f, "rank_geometric_lower = {}", self.lower)?;
        writeln!(f, "rank_geometric_upper = {}", self.upper)?;
        writeln!(f, "rank_geometric = {}", opt(self.geometric))?;
        write!(f, "rank_rational = {}", opt(self.rational))
    }
}

/// `generators_rank` is the Gram rank of points over `Q(t)`. The certificate
/// is for the point `Q` over `Q(sqrt(-3))(u)`, `u = t^2`: `Q` independent of
/// the norms adds one to the rank over `Q(sqrt(-3))(t)`, and `Q` minus its
/// conjugate is a point of positive height on which conjugation acts by -1,
/// so the rank over `Q(t)` is at most the geometric rank minus one.
pub fn rank_conclusion(
    config: &FibreConfiguration<Rat>,
    ns_bound: usize,
    generators_rank: usize,
    cert: &Theorem1Report,
) -> RankConclusion {
    let upper = shioda_tate_rank(config, ns_bound as i64).unwrap_or(0);
    let lower = generators_rank as i64 + (cert.rank_with_q as i64 - cert.rank_norms as i64);
    let geometric = (upper == lower).then_some(upper);
    let rational = geometric.filter(|&g| {
        cert.height_difference > Rat::zero() && generators_rank as i64 == g - 1
    });
    RankConclusion { ns_bound, upper, lower, geometric, rational: rational.map(|g| g - 1) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_test() {
        // (X + 53)(X^2 + 65 X + 2809)
        assert!(roots_on_circle(&[148877, 6254, 118, 1], 53));
        assert!(roots_on_circle(&[2809, 0, 1], 53));
        assert!(roots_on_circle(&[-2809, 0, 1], 53));
        assert!(!roots_on_circle(&[2809, 106 * 2, 1], 53));
        assert!(!roots_on_circle(&[2809, 1, 0, 1], 53));
        assert!(!roots_on_circle(&[1, 1], 53));
    }

    #[test]
    fn formatting() {
        assert_eq!(format_poly(&[148877, 6254, 118, 1]), "X^3 + 118X^2 + 6254X + 148877");
        assert_eq!(format_poly(&[-1, 0, 1]), "X^2 - 1");
        assert_eq!(factor_display(&[148877, 6254, 118, 1]), "(X + 53)(X^2 + 65X + 2809)");
    }

    #[test]
    fn order_five_is_fully_determined() {
        let m = scaled_cyclotomic(5, 7);
        assert_eq!(m.len(), 5);
        let v = solve_hypothesis(&m, 7, m[3], m[2], m[0]);
        assert_eq!(v, Verdict::Consistent { cofactor: vec![1], charpoly: m.clone() });
        assert!(matches!(solve_hypothesis(&m, 7, m[3] + 1, m[2], m[0]), Verdict::Contradiction(_)));
    }

    #[test]
    fn roots_of_unity_counted() {
        // (X - 7)(X + 7)(X^2 + 49)
        let c = mul(&mul(&[-7, 1], &[7, 1]), &[49, 0, 1]);
        assert_eq!(count_root_of_unity_multiples(&c, 7), 4);
        assert_eq!(count_root_of_unity_multiples(&[148877, 6254, 118, 1], 53), 1);
    }

    #[test]
    fn newton_identities() {
        // roots 1, 2, 3
        let c = [-6, 11, -6, 1];
        assert_eq!(power_sum(&c, 1), 6);
        assert_eq!(power_sum(&c, 2), 14);
        assert_eq!(power_sum(&c, 3), 36);
        assert_eq!(power_sum(&c, 5), 1 + 32 + 243);
        let l = eigen_ledger(53, 22, 17, [3593, 7945269]);
        let p = mul(&mul(&[53, 1], &[-53, 1]), &[2809, 65, 1]);
        assert_eq!(predicted_count(&l, &p, 1), 3593);
        assert_eq!(predicted_count(&l, &p, 2), 7945269);
    }
}
