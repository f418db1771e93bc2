//! Plain-text file formats: curves, quartics, seeds and point lists.
//!
//! Every file is a list of `key = value` lines. Blank lines and lines
//! starting with `#` are ignored. Two metadata keys are shared:
//! `field = Q` or `field = Q(sqrt(D))` for the constants, and `var = t` for
//! the name of the function-field variable. Values use the scalar and
//! polynomial syntax of [`crate::algebra::parse`].
//!
//! ```text
//! var = u
//! a1 = 0
//! a2 = 0
//! a3 = 0
//! a4 = [-340079781902569707,...,-432]
//! a6 = [...]
//! ```
//!
//! Points are written `x, y` with `O` for the identity; points at infinity
//! of a quartic are written `inf, w`.

use std::fmt::Write as _;

use crate::algebra::parse::{format_ratfunc, ParseScalar, Parser};
use crate::algebra::{AlgebraError, Field, Poly, QuadExt, Rat, RatFunc};
use crate::ellcurve::{CurvePoint, QuarticPoint, WeierstrassCurve};
use crate::mestre::MestreSeed;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum IoError {
    #[error("empty file")]
    Empty,
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}, column {col}: {msg}")]
    Value { line: usize, col: usize, msg: String },
    #[error("missing key `{0}`")]
    Missing(String),
    #[error("duplicate key `{0}`")]
    Duplicate(String),
    #[error("{0}")]
    Invalid(String),
}

/// A parsed `key = value` file, in input order.
#[derive(Clone, Debug, Default)]
pub struct Document {
    entries: Vec<Entry>,
}

#[derive(Clone, Debug)]
struct Entry {
    key: String,
    value: String,
    line: usize,
    /// Byte offset of the value within its line, for error columns.
    offset: usize,
}

impl Document {
    pub fn parse(text: &str) -> Result<Self, IoError> {
        let mut entries: Vec<Entry> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let eq = raw.find('=').ok_or_else(|| IoError::Syntax {
                line,
                msg: "expected `key = value`".into(),
            })?;
            let key = raw[..eq].trim().to_string();
            if key.is_empty() || key.contains(char::is_whitespace) {
                return Err(IoError::Syntax {
                    line,
                    msg: format!("bad key `{key}`"),
                });
            }
            if entries.iter().any(|e| e.key == key) {
                return Err(IoError::Duplicate(key));
            }
            let value = &raw[eq + 1..];
            let lead = value.len() - value.trim_start().len();
            entries.push(Entry {
                key,
                value: value.trim().to_string(),
                line,
                offset: eq + 1 + lead,
            });
        }
        if entries.is_empty() {
            return Err(IoError::Empty);
        }
        Ok(Document { entries })
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.key.as_str())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entry(key).map(|e| e.value.as_str())
    }

    fn entry(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    pub fn require(&self, key: &str) -> Result<&str, IoError> {
        self.get(key).ok_or_else(|| IoError::Missing(key.into()))
    }

    /// Parses the value of `key` with `f`, mapping parser errors to a
    /// line and column.
    pub fn value<T>(
        &self,
        key: &str,
        f: impl FnOnce(&mut Parser<'_>) -> Result<T, AlgebraError>,
    ) -> Result<T, IoError> {
        let e = self.entry(key).ok_or_else(|| IoError::Missing(key.into()))?;
        parse_value(e, f)
    }

    pub fn var(&self) -> String {
        self.get("var").unwrap_or("t").to_string()
    }

    /// The constant field: `None` for Q, `Some(D)` for Q(sqrt(D)).
    pub fn field(&self) -> Result<Option<i64>, IoError> {
        match self.get("field") {
            None => Ok(None),
            Some(s) => parse_field(s),
        }
    }
}

fn parse_value<T>(
    e: &Entry,
    f: impl FnOnce(&mut Parser<'_>) -> Result<T, AlgebraError>,
) -> Result<T, IoError> {
    let mut p = Parser::new(&e.value);
    let out = f(&mut p).and_then(|v| p.finish().map(|_| v));
    out.map_err(|err| match err {
        AlgebraError::Parse { pos, msg } => IoError::Value {
            line: e.line,
            col: e.offset + pos + 1,
            msg,
        },
        other => IoError::Value {
            line: e.line,
            col: e.offset + 1,
            msg: other.to_string(),
        },
    })
}

pub fn parse_field(s: &str) -> Result<Option<i64>, IoError> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s == "Q" {
        return Ok(None);
    }
    let inner = s
        .strip_prefix("Q(sqrt(")
        .and_then(|r| r.strip_suffix("))"))
        .ok_or_else(|| IoError::Invalid(format!("unknown field `{s}`")))?;
    let d: i64 = inner
        .parse()
        .map_err(|_| IoError::Invalid(format!("bad discriminant `{inner}`")))?;
    QuadExt::generator(d).map_err(|e| IoError::Invalid(e.to_string()))?;
    Ok(Some(d))
}

pub fn format_field(d: Option<i64>) -> String {
    match d {
        None => "Q".into(),
        Some(d) => format!("Q(sqrt({d}))"),
    }
}

/// A coefficient: a bare scalar when constant, otherwise `[..]` or `[..]/[..]`.
pub fn format_coeff<F: Field>(c: &RatFunc<F>) -> String {
    match c.as_constant() {
        Some(k) => k.to_string(),
        None => format_ratfunc(c),
    }
}

fn point_value<F: ParseScalar + Field>(p: &mut Parser<'_>) -> Result<CurvePoint<RatFunc<F>>, AlgebraError> {
    if p.peek() == Some(b'O') {
        p.eat(b'O');
        return Ok(CurvePoint::Infinity);
    }
    let x = p.ratfunc()?;
    p.expect(b',')?;
    let y = p.ratfunc()?;
    Ok(CurvePoint::Affine(x, y))
}

fn quartic_point_value(p: &mut Parser<'_>) -> Result<QuarticPoint<RatFunc<Rat>>, AlgebraError> {
    if p.peek() == Some(b'i') {
        for c in b"inf" {
            p.expect(*c)?;
        }
        p.expect(b',')?;
        return Ok(QuarticPoint::Infinity(p.ratfunc()?));
    }
    let x = p.ratfunc()?;
    p.expect(b',')?;
    let y = p.ratfunc()?;
    Ok(QuarticPoint::Affine(x, y))
}

pub fn format_point<F: Field>(p: &CurvePoint<RatFunc<F>>) -> String {
    match p {
        CurvePoint::Infinity => "O".into(),
        CurvePoint::Affine(x, y) => format!("{}, {}", format_coeff(x), format_coeff(y)),
    }
}

pub fn format_quartic_point(p: &QuarticPoint<RatFunc<Rat>>) -> String {
    match p {
        QuarticPoint::Affine(x, y) => format!("{}, {}", format_coeff(x), format_coeff(y)),
        QuarticPoint::Infinity(w) => format!("inf, {}", format_coeff(w)),
    }
}

/// Parses a single point written `x, y` or `O`.
pub fn parse_point<F: ParseScalar + Field>(s: &str) -> Result<CurvePoint<RatFunc<F>>, IoError> {
    let e = Entry {
        key: String::new(),
        value: s.trim().to_string(),
        line: 1,
        offset: 0,
    };
    parse_value(&e, point_value::<F>)
}

pub fn parse_quartic_point(s: &str) -> Result<QuarticPoint<RatFunc<Rat>>, IoError> {
    let e = Entry {
        key: String::new(),
        value: s.trim().to_string(),
        line: 1,
        offset: 0,
    };
    parse_value(&e, quartic_point_value)
}

const META: [&str; 2] = ["field", "var"];
const CURVE_KEYS: [&str; 5] = ["a1", "a2", "a3", "a4", "a6"];
const QUARTIC_KEYS: [&str; 5] = ["r0", "r1", "r2", "r3", "r4"];

/// A Weierstrass curve over Q(var).
#[derive(Clone, Debug, PartialEq)]
pub struct CurveFile {
    pub var: String,
    pub curve: WeierstrassCurve<RatFunc<Rat>>,
}

impl CurveFile {
    pub fn new(var: &str, curve: WeierstrassCurve<RatFunc<Rat>>) -> Self {
        CurveFile {
            var: var.into(),
            curve,
        }
    }

    pub fn parse(text: &str) -> Result<Self, IoError> {
        Self::from_document(&Document::parse(text)?)
    }

    pub fn from_document(doc: &Document) -> Result<Self, IoError> {
        if doc.field()?.is_some() {
            return Err(IoError::Invalid("curve files are over Q(var)".into()));
        }
        reject_unknown(doc, &CURVE_KEYS)?;
        let c: Vec<RatFunc<Rat>> = CURVE_KEYS
            .iter()
            .map(|k| doc.value(k, |p| p.ratfunc::<Rat>()))
            .collect::<Result<_, _>>()?;
        let curve = WeierstrassCurve::new(
            c[0].clone(),
            c[1].clone(),
            c[2].clone(),
            c[3].clone(),
            c[4].clone(),
        )
        .map_err(|e| IoError::Invalid(e.to_string()))?;
        Ok(CurveFile {
            var: doc.var(),
            curve,
        })
    }

    pub fn serialize(&self) -> String {
        let e = &self.curve;
        let mut s = format!("var = {}\n", self.var);
        for (k, v) in CURVE_KEYS.iter().zip([&e.a1, &e.a2, &e.a3, &e.a4, &e.a6]) {
            let _ = writeln!(s, "{k} = {}", format_coeff(v));
        }
        s
    }
}

/// `y^2 = r4 x^4 + ... + r0` over Q(var) with optional named points.
#[derive(Clone, Debug, PartialEq)]
pub struct QuarticFile {
    pub var: String,
    /// Ascending in `x`.
    pub r: Poly<RatFunc<Rat>>,
    pub points: Vec<(String, QuarticPoint<RatFunc<Rat>>)>,
}

impl QuarticFile {
    pub fn parse(text: &str) -> Result<Self, IoError> {
        Self::from_document(&Document::parse(text)?)
    }

    pub fn from_document(doc: &Document) -> Result<Self, IoError> {
        if doc.field()?.is_some() {
            return Err(IoError::Invalid("quartic files are over Q(var)".into()));
        }
        let c: Vec<RatFunc<Rat>> = QUARTIC_KEYS
            .iter()
            .map(|k| doc.value(k, |p| p.ratfunc::<Rat>()))
            .collect::<Result<_, _>>()?;
        let r = Poly::new(c);
        if r.deg() != 4 {
            return Err(IoError::Invalid("r4 must be nonzero".into()));
        }
        let mut points = Vec::new();
        for k in doc.keys() {
            if META.contains(&k) || QUARTIC_KEYS.contains(&k) {
                continue;
            }
            points.push((k.to_string(), doc.value(k, quartic_point_value)?));
        }
        Ok(QuarticFile {
            var: doc.var(),
            r,
            points,
        })
    }

    pub fn serialize(&self) -> String {
        let mut s = format!("var = {}\n", self.var);
        for (i, k) in QUARTIC_KEYS.iter().enumerate() {
            let _ = writeln!(s, "{k} = {}", format_coeff(&self.r.coeff(i)));
        }
        for (name, p) in &self.points {
            let _ = writeln!(s, "{name} = {}", format_quartic_point(p));
        }
        s
    }
}

/// Named points over `F(var)`, `F` being Q or Q(sqrt(D)).
#[derive(Clone, PartialEq)]
pub struct PointsFile<F> {
    pub field: Option<i64>,
    pub var: String,
    pub points: Vec<(String, CurvePoint<RatFunc<F>>)>,
}

impl<F: Field> std::fmt::Debug for PointsFile<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PointsFile")
            .field("field", &self.field)
            .field("var", &self.var)
            .field("points", &self.points)
            .finish()
    }
}

impl<F: ParseScalar + Field> PointsFile<F> {
    pub fn parse(text: &str) -> Result<Self, IoError> {
        Self::from_document(&Document::parse(text)?)
    }

    pub fn from_document(doc: &Document) -> Result<Self, IoError> {
        let mut points = Vec::new();
        for k in doc.keys() {
            if META.contains(&k) {
                continue;
            }
            points.push((k.to_string(), doc.value(k, point_value::<F>)?));
        }
        Ok(PointsFile {
            field: doc.field()?,
            var: doc.var(),
            points,
        })
    }

    pub fn serialize(&self) -> String {
        let mut s = String::new();
        if self.field.is_some() {
            let _ = writeln!(s, "field = {}", format_field(self.field));
        }
        let _ = writeln!(s, "var = {}", self.var);
        for (name, p) in &self.points {
            let _ = writeln!(s, "{name} = {}", format_point(p));
        }
        s
    }

    pub fn get(&self, name: &str) -> Option<&CurvePoint<RatFunc<F>>> {
        self.points.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }
}

/// `b = b1,...,b6`.
pub fn parse_seed(text: &str) -> Result<MestreSeed, IoError> {
    let doc = Document::parse(text)?;
    let b = doc.value("b", |p| {
        let mut v = vec![p.rat()?];
        while p.eat(b',') {
            v.push(p.rat()?);
        }
        Ok(v)
    })?;
    MestreSeed::new(b).map_err(|e| IoError::Invalid(e.to_string()))
}

pub fn serialize_seed(seed: &MestreSeed) -> String {
    let b: Vec<String> = seed.b().iter().map(|x| x.to_string()).collect();
    format!("b = {}\n", b.join(","))
}

fn reject_unknown(doc: &Document, allowed: &[&str]) -> Result<(), IoError> {
    for k in doc.keys() {
        if !META.contains(&k) && !allowed.contains(&k) {
            return Err(IoError::Invalid(format!("unexpected key `{k}`")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Ring;

    #[test]
    fn curve_round_trip_normalizes() {
        let text = "# comment\nvar = t\na1 = 0\na2 = 2/4\na3 = 0\na4 = [0, 2/4]\na6 = [1,0,0,0,0,0,0]/[2]\n";
        let f = CurveFile::parse(text).unwrap();
        let s = f.serialize();
        assert_eq!(
            s,
            "var = t\na1 = 0\na2 = 1/2\na3 = 0\na4 = [0,1/2]\na6 = 1/2\n"
        );
        assert_eq!(CurveFile::parse(&s).unwrap().serialize(), s);
    }

    #[test]
    fn errors() {
        assert_eq!(Document::parse("").unwrap_err(), IoError::Empty);
        assert_eq!(Document::parse("# only\n\n").unwrap_err(), IoError::Empty);
        match CurveFile::parse("a1 = 0\na2 = 0\na3 = 0\na4 = [1,x]\na6 = 1\n") {
            Err(IoError::Value { line: 4, col: 9, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            CurveFile::parse("a1 = 0\n").unwrap_err(),
            IoError::Missing("a2".into())
        );
        assert!(matches!(
            CurveFile::parse("a1=0\na2=0\na3=0\na4=0\na6=0\n"),
            Err(IoError::Invalid(_))
        ));
        assert_eq!(
            Document::parse("a = 1\na = 2\n").unwrap_err(),
            IoError::Duplicate("a".into())
        );
    }

    #[test]
    fn points_over_quadratic_field() {
        let text = "field = Q(sqrt(-3))\nvar = u\nP = [1+sqrt(-3), 2], [0, 1/2*sqrt(-3)]\nZ = O\n";
        let f: PointsFile<QuadExt> = PointsFile::parse(text).unwrap();
        assert_eq!(f.field, Some(-3));
        assert!(f.get("Z").unwrap().is_infinity());
        let again: PointsFile<QuadExt> = PointsFile::parse(&f.serialize()).unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn quartic_points_and_seed() {
        let text = "r0 = 1\nr1 = 0\nr2 = 0\nr3 = 0\nr4 = 1\nP = 0, 1\nW = inf, -1\n";
        let f = QuarticFile::parse(text).unwrap();
        assert_eq!(f.points.len(), 2);
        assert_eq!(f.points[1].1, QuarticPoint::Infinity(RatFunc::from_i64(-1)));
        assert_eq!(QuarticFile::parse(&f.serialize()).unwrap(), f);
        let seed = parse_seed("b = 148,116,104,57,25,0").unwrap();
        assert_eq!(serialize_seed(&seed), "b = 148,116,104,57,25,0\n");
        assert!(parse_seed("b = 1,1,2,3,4,5").is_err());
    }
}
