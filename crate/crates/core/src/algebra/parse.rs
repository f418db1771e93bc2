//! Textual syntax shared by every file format.
//!
//! ```text
//! scalar   := rat | [rat] ("+"|"-") [rat "*"] "sqrt(" int ")"
//! rat      := ["-"] digits ["/" digits]
//! poly     := "[" [scalar ("," scalar)*] "]"          (ascending)
//! ratfunc  := poly ["/" poly]
//! ```
//! Whitespace is ignored between tokens. Errors carry the byte offset.

use num_bigint::BigInt;

use super::{AlgebraError, Field, Poly, QuadExt, Rat, RatFunc};

pub struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

type PResult<T> = Result<T, AlgebraError>;

impl<'a> Parser<'a> {
    pub fn new(s: &'a str) -> Self {
        Parser {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    pub fn err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err(AlgebraError::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    pub fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    pub fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: u8) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub fn finish(&mut self) -> PResult<()> {
        if self.at_end() {
            Ok(())
        } else {
            self.err("trailing input")
        }
    }

    fn digits(&mut self) -> PResult<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn starts_with(&mut self, kw: &str) -> bool {
        self.skip_ws();
        self.src[self.pos..].starts_with(kw.as_bytes())
    }

    /// Unsigned rational `n` or `n/d`.
    fn unsigned_rat(&mut self) -> PResult<Rat> {
        let n = self.digits()?;
        // a '/' followed by '[' belongs to a rational function, not to us
        let save = self.pos;
        if self.eat(b'/') {
            if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                let d = self.digits()?;
                if d == BigInt::from(0) {
                    return self.err("zero denominator");
                }
                return Ok(Rat::new(n, d));
            }
            self.pos = save;
        }
        Ok(Rat::from_int(n))
    }

    pub fn rat(&mut self) -> PResult<Rat> {
        let neg = self.eat(b'-');
        if !neg {
            self.eat(b'+');
        }
        let r = self.unsigned_rat()?;
        Ok(if neg { -r } else { r })
    }

    fn sqrt_tail(&mut self) -> PResult<i64> {
        if !self.starts_with("sqrt") {
            return self.err("expected sqrt(D)");
        }
        self.pos += 4;
        self.expect(b'(')?;
        let neg = self.eat(b'-');
        let d = self.digits()?;
        self.expect(b')')?;
        let d: i64 = match i64::try_from(d) {
            Ok(v) => v,
            Err(_) => return self.err("discriminant out of range"),
        };
        Ok(if neg { -d } else { d })
    }

    /// Optional `[coef *] sqrt(D)` term after a sign has been consumed.
    fn irrational_term(&mut self) -> PResult<(Rat, i64)> {
        if self.starts_with("sqrt") {
            let d = self.sqrt_tail()?;
            return Ok((<Rat as super::Ring>::one(), d));
        }
        let c = self.unsigned_rat()?;
        self.expect(b'*')?;
        let d = self.sqrt_tail()?;
        Ok((c, d))
    }

    pub fn quadext(&mut self) -> PResult<QuadExt> {
        let start = self.pos;
        let neg = self.eat(b'-');
        if !neg {
            self.eat(b'+');
        }
        let (a, mut bd) = if self.starts_with("sqrt") || self.is_coef_times_sqrt() {
            let (b, d) = self.irrational_term()?;
            (<Rat as super::Ring>::zero(), Some((if neg { -b } else { b }, d)))
        } else {
            let r = self.unsigned_rat()?;
            (if neg { -r } else { r }, None)
        };
        if bd.is_none() {
            let save = self.pos;
            let sign = match self.peek() {
                Some(b'+') => Some(false),
                Some(b'-') => Some(true),
                _ => None,
            };
            if let Some(sneg) = sign {
                self.pos += 1;
                if self.starts_with("sqrt") || self.is_coef_times_sqrt() {
                    let (b, d) = self.irrational_term()?;
                    bd = Some((if sneg { -b } else { b }, d));
                } else {
                    self.pos = save;
                }
            }
        }
        match bd {
            None => Ok(QuadExt::rational(a)),
            Some((b, d)) => QuadExt::new(a, b, d).map_err(|e| AlgebraError::Parse {
                pos: start,
                msg: e.to_string(),
            }),
        }
    }

    fn is_coef_times_sqrt(&mut self) -> bool {
        let save = self.pos;
        let ok = self.unsigned_rat().is_ok() && self.eat(b'*') && self.starts_with("sqrt");
        self.pos = save;
        ok
    }

    pub fn poly<F: ParseScalar>(&mut self) -> PResult<Poly<F>> {
        self.expect(b'[')?;
        let mut c = Vec::new();
        if !self.eat(b']') {
            loop {
                c.push(F::parse_scalar(self)?);
                if self.eat(b']') {
                    break;
                }
                self.expect(b',')?;
            }
        }
        Ok(Poly::new(c))
    }

    pub fn ratfunc<F: ParseScalar + Field>(&mut self) -> PResult<RatFunc<F>> {
        if self.peek() != Some(b'[') {
            let c = F::parse_scalar(self)?;
            return Ok(RatFunc::constant(c));
        }
        let num = self.poly::<F>()?;
        if self.eat(b'/') {
            let at = self.pos;
            let den = self.poly::<F>()?;
            if den.is_zero() {
                return Err(AlgebraError::Parse {
                    pos: at,
                    msg: "zero denominator".into(),
                });
            }
            return Ok(RatFunc::new(num, den));
        }
        Ok(RatFunc::from_poly(num))
    }
}

/// Scalars that have a textual form.
pub trait ParseScalar: Sized + super::Ring {
    fn parse_scalar(p: &mut Parser<'_>) -> PResult<Self>;
}

impl ParseScalar for Rat {
    fn parse_scalar(p: &mut Parser<'_>) -> PResult<Self> {
        p.rat()
    }
}

impl ParseScalar for QuadExt {
    fn parse_scalar(p: &mut Parser<'_>) -> PResult<Self> {
        p.quadext()
    }
}

fn whole<T>(s: &str, f: impl FnOnce(&mut Parser<'_>) -> PResult<T>) -> PResult<T> {
    let mut p = Parser::new(s);
    if p.at_end() {
        return p.err("empty input");
    }
    let v = f(&mut p)?;
    p.finish()?;
    Ok(v)
}

pub fn parse_rat(s: &str) -> PResult<Rat> {
    whole(s, |p| p.rat())
}

pub fn parse_quadext(s: &str) -> PResult<QuadExt> {
    whole(s, |p| p.quadext())
}

pub fn parse_poly<F: ParseScalar>(s: &str) -> PResult<Poly<F>> {
    whole(s, |p| p.poly())
}

pub fn parse_ratfunc<F: ParseScalar + Field>(s: &str) -> PResult<RatFunc<F>> {
    whole(s, |p| p.ratfunc())
}

/// Comma-separated rationals, as used by `--b 148,116,...`.
pub fn parse_rat_list(s: &str) -> PResult<Vec<Rat>> {
    whole(s, |p| {
        let mut v = vec![p.rat()?];
        while p.eat(b',') {
            v.push(p.rat()?);
        }
        Ok(v)
    })
}

/// Serializes a rational function: `[..]` for polynomials, `[..]/[..]` otherwise.
pub fn format_ratfunc<F: Field>(f: &RatFunc<F>) -> String {
    if f.is_polynomial() {
        f.num().to_string()
    } else {
        format!("{}/{}", f.num(), f.den())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Ring;

    #[test]
    fn scalars() {
        assert_eq!(parse_rat("2/4").unwrap(), Rat::new(1, 2));
        assert_eq!(parse_rat(" -17 ").unwrap(), Rat::from_int(-17));
        let q = parse_quadext("-757109813-168316272*sqrt(-3)").unwrap();
        assert_eq!(q.to_string(), "-757109813-168316272*sqrt(-3)");
        let r = parse_quadext("sqrt(-3)").unwrap();
        assert_eq!(r.d(), -3);
        assert_eq!(parse_quadext("5/3").unwrap(), QuadExt::from_i64(5) / QuadExt::from_i64(3));
    }

    #[test]
    fn polys_round_trip() {
        let s = "[1/2,0,-3]";
        let p: Poly<Rat> = parse_poly(s).unwrap();
        assert_eq!(p.to_string(), s);
        let z: Poly<Rat> = parse_poly("[]").unwrap();
        assert!(z.is_zero());
        let f: RatFunc<Rat> = parse_ratfunc("[703,1]/[15]").unwrap();
        assert_eq!(format_ratfunc(&f), "[703/15,1/15]");
        let g: RatFunc<Rat> = parse_ratfunc("[23550,0,-1]/[0,2]").unwrap();
        assert_eq!(format_ratfunc(&g), "[11775,0,-1/2]/[0,1]");
    }

    #[test]
    fn errors_carry_positions() {
        match parse_poly::<Rat>("[1,2,x]") {
            Err(AlgebraError::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_rat("").is_err());
        assert!(parse_rat("1/0").is_err());
        assert!(parse_quadext("1+2*sqrt(12)").is_err());
    }
}
