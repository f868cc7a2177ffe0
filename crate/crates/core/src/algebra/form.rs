//! Binary forms `F = sum_j c_j X0^(l-j) X1^j`.

use std::fmt;

use super::field::{Field, Scalar};
use super::poly::Poly;
use crate::{linalg, Error, Result};

/// A homogeneous polynomial of degree `l` in `X0, X1`, stored as its `l + 1`
/// coefficients; entry `j` multiplies `X0^(l-j) X1^j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl BinaryForm {
    /// Panics on an empty coefficient vector or mixed fields.
    pub fn new(field: Field, coeffs: Vec<Scalar>) -> BinaryForm {
        assert!(!coeffs.is_empty(), "a form needs at least one coefficient");
        for c in &coeffs {
            assert_eq!(c.field(), field, "coefficient outside {field}");
        }
        BinaryForm { field, coeffs }
    }

    pub fn zero(field: Field, degree: usize) -> BinaryForm {
        BinaryForm::new(field, vec![field.zero(); degree + 1])
    }

    /// `X0^(degree-j) X1^j`.
    pub fn monomial(field: Field, degree: usize, j: usize) -> BinaryForm {
        assert!(j <= degree);
        let mut f = BinaryForm::zero(field, degree);
        f.coeffs[j] = field.one();
        f
    }

    pub fn constant(c: Scalar) -> BinaryForm {
        BinaryForm::new(c.field(), vec![c])
    }

    pub fn from_i64s(field: Field, coeffs: &[i64]) -> BinaryForm {
        BinaryForm::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &Scalar {
        &self.coeffs[j]
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Exponent of the largest power of `X1` dividing the form.
    pub fn x1_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn check_degree(&self, other: &BinaryForm, op: &str) {
        assert_eq!(
            self.degree(),
            other.degree(),
            "{op} of forms of degrees {} and {}",
            self.degree(),
            other.degree()
        );
    }

    pub fn add(&self, other: &BinaryForm) -> BinaryForm {
        self.check_degree(other, "sum");
        BinaryForm::new(self.field, self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &BinaryForm) -> BinaryForm {
        self.check_degree(other, "difference");
        BinaryForm::new(self.field, self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> BinaryForm {
        BinaryForm::new(self.field, self.coeffs.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: &Scalar) -> BinaryForm {
        BinaryForm::new(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        form_mul(self, other)
    }

    pub fn pow(&self, k: usize) -> BinaryForm {
        let mut acc = BinaryForm::constant(self.field.one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Scales so that the first nonzero coefficient (in `X0`-descending
    /// order) is 1. The zero form is returned unchanged.
    pub fn normalize(&self) -> BinaryForm {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            Some(lead) => self.scale(&lead.inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    pub fn eval(&self, x0: &Scalar, x1: &Scalar) -> Scalar {
        let l = self.degree();
        let mut acc = self.field.zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            acc = &acc + &(&(c * &x0.pow((l - j) as u64)) * &x1.pow(j as u64));
        }
        acc
    }

    /// `F(x, 1)` as a polynomial in `x`.
    pub fn dehomogenize(&self) -> Poly {
        Poly::new(self.field, self.coeffs.iter().rev().cloned().collect())
    }

    /// `X1^degree * p(X0/X1)`, requires `degree >= deg p`.
    pub fn homogenize(p: &Poly, degree: usize) -> BinaryForm {
        let mut coeffs = vec![p.field().zero(); degree + 1];
        for (i, c) in p.coeffs().iter().enumerate() {
            coeffs[degree - i] = c.clone();
        }
        BinaryForm::new(p.field(), coeffs)
    }

    /// The quotient `self / divisor` when it exists. The divisor must be
    /// nonzero.
    pub fn exact_div(&self, divisor: &BinaryForm) -> Option<BinaryForm> {
        let s = divisor.x1_valuation().expect("division by the zero form");
        if divisor.degree() > self.degree() {
            return None;
        }
        let n = self.degree() - divisor.degree();
        let lead_inv = divisor.coeffs[s].inv().expect("nonzero");
        let mut quot: Vec<Scalar> = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut acc = if i + s <= self.degree() {
                self.coeffs[i + s].clone()
            } else {
                self.field.zero()
            };
            for (k, qk) in quot.iter().enumerate() {
                if let Some(dc) = divisor.coeffs.get(i + s - k) {
                    acc = &acc - &(qk * dc);
                }
            }
            quot.push(&acc * &lead_inv);
        }
        let quot = BinaryForm::new(self.field, quot);
        (form_mul(&quot, divisor) == *self).then_some(quot)
    }

    pub fn divides(&self, other: &BinaryForm) -> bool {
        other.is_zero() || other.exact_div(self).is_some()
    }

    /// Reinterprets the coefficients in a larger field.
    pub fn embed(&self, field: Field) -> BinaryForm {
        BinaryForm::new(field, self.coeffs.iter().map(|c| field.embed(c)).collect())
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = self.degree();
        let mut out = String::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut cs = c.to_string();
            let negative = cs.starts_with('-');
            if negative {
                cs.remove(0);
            }
            if !out.is_empty() {
                out.push_str(if negative { " - " } else { " + " });
            } else if negative {
                out.push('-');
            }
            let mut factors = Vec::new();
            if cs != "1" || l == 0 {
                factors.push(if cs.contains('+') { format!("({cs})") } else { cs });
            }
            for (var, exp) in [("X0", l - j), ("X1", j)] {
                match exp {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{exp}")),
                }
            }
            out.push_str(&factors.join("*"));
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// Product of two forms: the convolution of their coefficient vectors.
pub fn form_mul(f: &BinaryForm, g: &BinaryForm) -> BinaryForm {
    let field = f.field;
    let mut out = vec![field.zero(); f.coeffs.len() + g.coeffs.len() - 1];
    for (i, a) in f.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in g.coeffs.iter().enumerate() {
            out[i + j] = &out[i + j] + &(a * b);
        }
    }
    BinaryForm::new(field, out)
}

/// Normalized gcd of two forms of arbitrary degrees.
///
/// The common power of `X1` is split off first; what remains has no root at
/// `(1:0)`, so Euclid on the dehomogenizations and rehomogenization to the
/// degree of the univariate gcd is exact.
pub fn form_gcd(f: &BinaryForm, g: &BinaryForm) -> Result<BinaryForm> {
    assert_eq!(f.field, g.field, "gcd across fields");
    let (vf, vg) = match (f.x1_valuation(), g.x1_valuation()) {
        (None, None) => return Err(Error::UndefinedGcd),
        (None, Some(_)) => return Ok(g.normalize()),
        (Some(_), None) => return Ok(f.normalize()),
        (Some(a), Some(b)) => (a, b),
    };
    let strip = |h: &BinaryForm, v: usize| Poly::new(h.field, h.coeffs[v..].iter().rev().cloned().collect());
    let common = strip(f, vf).gcd(&strip(g, vg));
    let cdeg = common.degree().expect("gcd of nonzero polynomials");
    let core = BinaryForm::homogenize(&common, cdeg);
    let x1_power = BinaryForm::monomial(f.field, vf.min(vg), vf.min(vg));
    Ok(form_mul(&core, &x1_power).normalize())
}

/// Determinant of the Sylvester matrix of `F` (degree `a`) and `G` (degree
/// `b`), with the `a` shifted copies of `G` listed first and the `b` shifted
/// copies of `F` after them. Under this convention `Res(X0, X1) = -1`, and
/// for `F = (X0 - r X1)(X0 - s X1)` one gets `Res(F, G) = G(r, 1) G(s, 1)`.
pub fn resultant(f: &BinaryForm, g: &BinaryForm) -> Result<Scalar> {
    let (a, b) = (f.degree(), g.degree());
    if a == 0 || b == 0 {
        return Err(Error::InvalidInput(format!(
            "resultant needs positive degrees, got {a} and {b}"
        )));
    }
    assert_eq!(f.field, g.field, "resultant across fields");
    Ok(linalg::det(f.field, &sylvester(f, g)))
}

pub(crate) fn sylvester(f: &BinaryForm, g: &BinaryForm) -> Vec<Vec<Scalar>> {
    let (a, b) = (f.degree(), g.degree());
    let n = a + b;
    let mut rows = Vec::with_capacity(n);
    for (form, copies) in [(g, a), (f, b)] {
        for shift in 0..copies {
            let mut row = vec![f.field.zero(); n];
            for (j, c) in form.coeffs.iter().enumerate() {
                row[shift + j] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}
