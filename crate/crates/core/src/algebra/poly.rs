//! Dense univariate polynomials over a [`Field`], used for the family
//! parameter `t` and for dehomogenized binary forms.

use std::fmt;

use super::field::{Field, Scalar};

/// A polynomial with ascending coefficients; trailing zeros are trimmed so
/// the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: Field, coeffs: Vec<Scalar>) -> Poly {
        for c in &coeffs {
            assert_eq!(c.field(), field, "coefficient outside {field}");
        }
        let mut p = Poly { field, coeffs };
        p.trim();
        p
    }

    pub fn zero(field: Field) -> Poly {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Poly {
        Poly::new(c.field(), vec![c])
    }

    pub fn one(field: Field) -> Poly {
        Poly::constant(field.one())
    }

    /// `c * t^k`.
    pub fn monomial(c: Scalar, k: usize) -> Poly {
        let field = c.field();
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Poly::new(field, coeffs)
    }

    pub fn from_i64s(field: Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Scalar::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    /// Largest `k` with `t^k` dividing `self`; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(self.field, (0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(self.field, out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.coeffs[dd].inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1;
            let c = &rem[k] * &lead_inv;
            if !c.is_zero() {
                for (i, b) in divisor.coeffs.iter().enumerate() {
                    rem[k - dd + i] = &rem[k - dd + i] - &(&c * b);
                }
                quot[k - dd] = c;
            }
            rem.pop();
        }
        (Poly::new(self.field, quot), Poly::new(self.field, rem))
    }

    /// Quotient of an exact division, `None` when the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(divisor);
        r.is_zero().then_some(q)
    }

    /// Scales to leading coefficient 1; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(lc) => self.scale(&lc.inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Divides by `t^k`; panics if that is not exact.
    pub fn shift_down(&self, k: usize) -> Poly {
        assert!(self.is_zero() || self.valuation().unwrap() >= k, "t^{k} does not divide {self}");
        Poly::new(self.field, self.coeffs.iter().skip(k).cloned().collect())
    }

    /// `t^n * p(1/t)`, requires `n >= deg p`.
    pub fn reverse(&self, n: usize) -> Poly {
        assert!(self.degree().is_none_or(|deg| deg <= n));
        let mut coeffs = vec![self.field.zero(); n + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[n - k] = c.clone();
        }
        Poly::new(self.field, coeffs)
    }

    /// `p(t + t0)`.
    pub fn taylor_shift(&self, t0: &Scalar) -> Poly {
        let shift = Poly::new(self.field, vec![t0.clone(), self.field.one()]);
        let mut acc = Poly::zero(self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&shift).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// Reinterprets the coefficients in a larger field.
    pub fn embed(&self, field: Field) -> Poly {
        Poly::new(field, self.coeffs.iter().map(|c| field.embed(c)).collect())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| &self.field.from_i64(k as i64) * c)
                .collect(),
        )
    }

    /// Formats with the given variable name.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut cs = c.to_string();
            let negative = cs.starts_with('-');
            if negative {
                cs.remove(0);
            }
            let composite = cs.contains('+');
            if !out.is_empty() {
                out.push_str(if negative { " - " } else { " + " });
            } else if negative {
                out.push('-');
            }
            let body = match k {
                0 => cs,
                _ => {
                    let power = if k == 1 { var.to_string() } else { format!("{var}^{k}") };
                    if cs == "1" {
                        power
                    } else if composite {
                        format!("({cs})*{power}")
                    } else {
                        format!("{cs}*{power}")
                    }
                }
            };
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}
