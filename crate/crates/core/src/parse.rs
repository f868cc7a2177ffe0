//! A small recursive-descent parser for polynomials in `X0`, `X1` and `t`
//! with exact rational coefficients.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | X0 | X1 | t | '(' expr ')'
//! ```
//!
//! Products must be written with `*`: `2 X0` and `2X0` are rejected rather
//! than guessed.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{BinaryForm, Field, Poly, TForm};
use crate::{Error, Result};

/// Exponents of `(X0, X1, t)`.
type Monomial = [u32; 3];

/// A polynomial with rational coefficients, kept sparse.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Sparse {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Sparse {
    fn constant(c: BigRational) -> Sparse {
        let mut s = Sparse::default();
        if !c.is_zero() {
            s.terms.insert([0, 0, 0], c);
        }
        s
    }

    fn var(k: usize) -> Sparse {
        let mut m = [0; 3];
        m[k] = 1;
        let mut s = Sparse::default();
        s.terms.insert(m, BigRational::one());
        s
    }

    fn add(mut self, other: &Sparse, sign: i32) -> Sparse {
        for (m, c) in &other.terms {
            let entry = self.terms.entry(*m).or_insert_with(BigRational::zero);
            if sign < 0 {
                *entry -= c;
            } else {
                *entry += c;
            }
            if entry.is_zero() {
                self.terms.remove(m);
            }
        }
        self
    }

    fn mul(&self, other: &Sparse) -> Sparse {
        let mut out = Sparse::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = [ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]];
                let piece = Sparse {
                    terms: BTreeMap::from([(m, ca * cb)]),
                };
                out = out.add(&piece, 1);
            }
        }
        out
    }

    fn neg(&self) -> Sparse {
        Sparse::default().add(self, -1)
    }

    /// The common `X0, X1` degree, `None` for zero; errors if the
    /// polynomial is not homogeneous in `X0, X1`.
    fn form_degree(&self) -> Result<Option<usize>> {
        let mut degrees = self.terms.keys().map(|m| (m[0] + m[1]) as usize);
        let Some(first) = degrees.next() else {
            return Ok(None);
        };
        if degrees.any(|x| x != first) {
            return Err(Error::Parse("not homogeneous in X0, X1".into()));
        }
        Ok(Some(first))
    }

    fn resolve_degree(&self, degree: Option<usize>) -> Result<usize> {
        match (self.form_degree()?, degree) {
            (Some(found), Some(want)) if found != want => Err(Error::DegreeMismatch(format!(
                "expected a form of degree {want}, found degree {found}"
            ))),
            (Some(found), _) => Ok(found),
            (None, Some(want)) => Ok(want),
            (None, None) => Err(Error::Parse("the zero polynomial has no degree; give one".into())),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse(format!("{msg} at column {} of {:?}", self.pos + 1, self.src)))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        Ok(self.src[start..self.pos].parse().expect("digits"))
    }

    fn expr(&mut self) -> Result<Sparse> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?, 1);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?, -1);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Sparse> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(b'+') | Some(b'-') | Some(b')') | None => return Ok(acc),
                Some(_) => return self.err("ambiguous juxtaposition, write products with '*'"),
            }
        }
    }

    fn unary(&mut self) -> Result<Sparse> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Sparse> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let exp: u32 = self
                .integer()?
                .try_into()
                .or_else(|_| self.err("exponent too large"))?;
            let mut acc = Sparse::constant(BigRational::one());
            for _ in 0..exp {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Sparse> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut value = BigRational::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let den = self.integer()?;
                    if den.is_zero() {
                        return self.err("zero denominator");
                    }
                    value /= BigRational::from_integer(den);
                }
                Ok(Sparse::constant(value))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                match &self.src[start..self.pos] {
                    "X0" | "x0" => Ok(Sparse::var(0)),
                    "X1" | "x1" => Ok(Sparse::var(1)),
                    "t" => Ok(Sparse::var(2)),
                    other => {
                        self.pos = start;
                        self.err(&format!("unknown symbol {other:?}"))
                    }
                }
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a polynomial in `X0`, `X1`, `t`.
pub fn parse_sparse(text: &str) -> Result<Sparse> {
    let mut p = Parser {
        src: text,
        bytes: text.as_bytes(),
        pos: 0,
    };
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Parses a binary form. The degree is read from the input; passing
/// `Some(l)` checks it (and is required for the zero form).
pub fn parse_form(text: &str, field: Field, degree: Option<usize>) -> Result<BinaryForm> {
    let s = parse_sparse(text)?;
    if s.terms.keys().any(|m| m[2] != 0) {
        return Err(Error::Parse(format!("{text:?} depends on t")));
    }
    let l = s.resolve_degree(degree)?;
    let mut coeffs = vec![field.zero(); l + 1];
    for (m, c) in &s.terms {
        coeffs[m[1] as usize] = field.from_rational(c)?;
    }
    Ok(BinaryForm::new(field, coeffs))
}

/// Parses a form whose coefficients may involve `t`.
pub fn parse_tform(text: &str, field: Field, degree: Option<usize>) -> Result<TForm> {
    let s = parse_sparse(text)?;
    let l = s.resolve_degree(degree)?;
    let tdeg = s.terms.keys().map(|m| m[2] as usize).max().unwrap_or(0);
    let mut coeffs = vec![vec![field.zero(); tdeg + 1]; l + 1];
    for (m, c) in &s.terms {
        coeffs[m[1] as usize][m[2] as usize] = field.from_rational(c)?;
    }
    Ok(TForm::new(field, coeffs.into_iter().map(|c| Poly::new(field, c)).collect()))
}

/// Parses a polynomial in `t` alone.
pub fn parse_tpoly(text: &str, field: Field) -> Result<Poly> {
    let s = parse_sparse(text)?;
    if s.terms.keys().any(|m| m[0] != 0 || m[1] != 0) {
        return Err(Error::Parse(format!("{text:?} should only involve t")));
    }
    let tdeg = s.terms.keys().map(|m| m[2] as usize).max().unwrap_or(0);
    let mut coeffs = vec![field.zero(); tdeg + 1];
    for (m, c) in &s.terms {
        coeffs[m[2] as usize] = field.from_rational(c)?;
    }
    Ok(Poly::new(field, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        let q = Field::Rational;
        let f = parse_form("X0^2 + 2*X0*X1 + X1^2", q, None).unwrap();
        assert_eq!(f, BinaryForm::from_i64s(q, &[1, 2, 1]));
        let g = parse_form("(X0 - X1)*(X0 + X1)", q, Some(2)).unwrap();
        assert_eq!(g, BinaryForm::from_i64s(q, &[1, 0, -1]));
        let h = parse_form("1/2*X0 - -3/4*X1", q, None).unwrap();
        assert_eq!(h.to_string(), "1/2*X0 + 3/4*X1");
        assert_eq!(parse_form("0", q, Some(3)).unwrap(), BinaryForm::zero(q, 3));
    }

    #[test]
    fn rejects_ambiguity_and_junk() {
        let q = Field::Rational;
        for bad in ["2 X0", "2X0", "X0X1", "X0 + ", "X0^", "X0 + X1^2", "1/0*X0", "Y", "X0)"] {
            assert!(parse_form(bad, q, None).is_err(), "{bad}");
        }
        assert!(parse_form("X0 + t*X1", q, None).is_err());
        assert!(parse_form("X0", q, Some(2)).is_err());
    }

    #[test]
    fn modular_reduction() {
        let f5 = Field::Prime(5);
        let f = parse_form("6*X0 + 1/2*X1", f5, None).unwrap();
        assert_eq!(f, BinaryForm::from_i64s(f5, &[1, 3]));
        assert!(parse_form("1/5*X0", f5, None).is_err());
    }

    #[test]
    fn families() {
        let q = Field::Rational;
        let f = parse_tform("X0^2 + t*X0*X1 + t^2*X1^2", q, None).unwrap();
        assert_eq!(f.t_degree(), 2);
        assert_eq!(f.eval(&q.zero()), BinaryForm::from_i64s(q, &[1, 0, 0]));
        assert_eq!(parse_tpoly("1 - 2*t + t^3", q).unwrap().to_string(), "1 - 2*t + t^3");
        assert!(parse_tpoly("X0", q).is_err());
    }
}
