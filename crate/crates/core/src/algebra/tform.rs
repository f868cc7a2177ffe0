//! Binary forms whose coefficients are polynomials in a parameter `t`.

use std::fmt;

use super::field::{Field, Scalar};
use super::form::BinaryForm;
use super::poly::Poly;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TForm {
    field: Field,
    coeffs: Vec<Poly>,
}

impl TForm {
    pub fn new(field: Field, coeffs: Vec<Poly>) -> TForm {
        assert!(!coeffs.is_empty(), "a form needs at least one coefficient");
        for c in &coeffs {
            assert_eq!(c.field(), field, "coefficient outside {field}");
        }
        TForm { field, coeffs }
    }

    /// A form that does not depend on `t`.
    pub fn constant(f: &BinaryForm) -> TForm {
        TForm::new(f.field(), f.coeffs().iter().map(|c| Poly::constant(c.clone())).collect())
    }

    /// `sum_k t^k F_k`.
    pub fn from_parts(parts: &[BinaryForm]) -> TForm {
        let field = parts[0].field();
        let l = parts[0].degree();
        let coeffs = (0..=l)
            .map(|j| Poly::new(field, parts.iter().map(|p| p.coeff(j).clone()).collect()))
            .collect();
        TForm::new(field, coeffs)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    /// Largest power of `t` appearing; 0 for the zero form.
    pub fn t_degree(&self) -> usize {
        self.coeffs.iter().filter_map(Poly::degree).max().unwrap_or(0)
    }

    /// Substitutes `t = t0`.
    pub fn eval(&self, t0: &Scalar) -> BinaryForm {
        BinaryForm::new(self.field, self.coeffs.iter().map(|c| c.eval(t0)).collect())
    }

    /// The largest `k` with `t^k` dividing every coefficient.
    pub fn content(&self) -> Result<usize> {
        self.coeffs
            .iter()
            .filter_map(Poly::valuation)
            .min()
            .ok_or_else(|| Error::InvalidInput("t-content of the zero form is infinite".into()))
    }

    /// Divides every coefficient by `t^k`.
    pub fn shift_down(&self, k: usize) -> TForm {
        TForm::new(self.field, self.coeffs.iter().map(|c| c.shift_down(k)).collect())
    }

    /// Divides out the full `t`-content.
    pub fn clear_content(&self) -> Result<TForm> {
        Ok(self.shift_down(self.content()?))
    }

    /// The same form in the chart `s = 1/t`, multiplied by `s^(t-degree)`.
    pub fn reverse(&self) -> TForm {
        let n = self.t_degree();
        TForm::new(self.field, self.coeffs.iter().map(|c| c.reverse(n)).collect())
    }

    /// Substitutes `t -> t + t0`.
    pub fn taylor_shift(&self, t0: &Scalar) -> TForm {
        TForm::new(self.field, self.coeffs.iter().map(|c| c.taylor_shift(t0)).collect())
    }

    /// Multiplies by `t^k`.
    pub fn shift_up(&self, k: usize) -> TForm {
        let tk = Poly::monomial(self.field.one(), k);
        TForm::new(self.field, self.coeffs.iter().map(|c| c.mul(&tk)).collect())
    }

    /// Coefficient vector of `X0^(m-j) X1^j * self`, a form of degree
    /// `deg + m`.
    pub fn monomial_multiple(&self, m: usize, j: usize) -> Vec<Poly> {
        let mut out = vec![Poly::zero(self.field); self.degree() + m + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[j + k] = c.clone();
        }
        out
    }

    pub fn add(&self, other: &TForm) -> TForm {
        assert_eq!(self.degree(), other.degree(), "sum of forms of different degrees");
        TForm::new(self.field, self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect())
    }

    pub fn mul(&self, other: &TForm) -> TForm {
        let mut out = vec![Poly::zero(self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        TForm::new(self.field, out)
    }

    pub fn embed(&self, field: Field) -> TForm {
        TForm::new(field, self.coeffs.iter().map(|c| c.embed(field)).collect())
    }
}

impl fmt::Display for TForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = self.degree();
        let mut terms = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut factors = Vec::new();
            let cs = c.to_string();
            if cs != "1" || l == 0 {
                factors.push(format!("({cs})"));
            }
            for (var, exp) in [("X0", l - j), ("X1", j)] {
                match exp {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{exp}")),
                }
            }
            terms.push(factors.join("*"));
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> Poly {
        Poly::from_i64s(Field::Rational, c)
    }

    #[test]
    fn eval_and_content() {
        let q = Field::Rational;
        // X0 + t X1
        let h = TForm::new(q, vec![poly(&[1]), poly(&[0, 1])]);
        assert_eq!(h.eval(&q.zero()), BinaryForm::from_i64s(q, &[1, 0]));
        // t X0^2 + t^2 X1^2
        let k = TForm::new(q, vec![poly(&[0, 1]), poly(&[]), poly(&[0, 0, 1])]);
        assert_eq!(k.content().unwrap(), 1);
        assert_eq!(k.shift_up(1).content().unwrap(), 2);
        assert!(TForm::new(q, vec![poly(&[]), poly(&[])]).content().is_err());
    }

    #[test]
    fn reverse_chart() {
        let q = Field::Rational;
        let h = TForm::new(q, vec![poly(&[1]), poly(&[0, 1]), poly(&[0, 0, 1])]);
        let r = h.reverse();
        assert_eq!(r.eval(&q.zero()), BinaryForm::from_i64s(q, &[0, 0, 1]));
    }
}
