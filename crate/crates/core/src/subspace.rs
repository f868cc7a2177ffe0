//! Subspaces of `V_l` held in canonical reduced row echelon form, so that
//! equality of subspaces is equality of values.

use crate::algebra::{form_mul, BinaryForm, Field, Scalar};
use crate::linalg::{self, Matrix};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    degree: usize,
    rows: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// The span of coordinate vectors of length `degree + 1`.
    pub fn from_rows(field: Field, degree: usize, rows: Matrix) -> Subspace {
        for r in &rows {
            assert_eq!(r.len(), degree + 1, "row length does not match V_{degree}");
        }
        let (rows, pivots) = linalg::rref(field, rows, degree + 1);
        Subspace { field, degree, rows, pivots }
    }

    pub fn span(field: Field, degree: usize, forms: &[BinaryForm]) -> Result<Subspace> {
        if let Some(bad) = forms.iter().find(|f| f.degree() != degree) {
            return Err(Error::DegreeMismatch(format!(
                "form of degree {} in a span inside V_{degree}",
                bad.degree()
            )));
        }
        Ok(Subspace::from_rows(
            field,
            degree,
            forms.iter().map(|f| f.coeffs().to_vec()).collect(),
        ))
    }

    pub fn zero(field: Field, degree: usize) -> Subspace {
        Subspace {
            field,
            degree,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// All of `V_degree`.
    pub fn full(field: Field, degree: usize) -> Subspace {
        let rows = (0..=degree)
            .map(|j| BinaryForm::monomial(field, degree, j).into_coeffs())
            .collect();
        Subspace {
            field,
            degree,
            rows,
            pivots: (0..=degree).collect(),
        }
    }

    /// `<F>_l`, the degree `l` multiples of `F` (zero below `deg F`).
    pub fn multiples(f: &BinaryForm, l: usize) -> Subspace {
        if l < f.degree() {
            return Subspace::zero(f.field(), l);
        }
        mul_into(f, &Subspace::full(f.field(), l - f.degree()))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// The degree `l` of the ambient `V_l`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// `(l + 1) - dim`.
    pub fn quotient_dim(&self) -> usize {
        self.degree + 1 - self.dim()
    }

    pub fn is_full(&self) -> bool {
        self.quotient_dim() == 0
    }

    pub fn rows(&self) -> &Matrix {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates not used as pivots, in increasing order.
    pub fn non_pivots(&self) -> Vec<usize> {
        (0..=self.degree).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// The canonical basis as forms.
    pub fn basis(&self) -> Vec<BinaryForm> {
        self.rows
            .iter()
            .map(|r| BinaryForm::new(self.field, r.clone()))
            .collect()
    }

    /// Residue of a coordinate vector after clearing every pivot column.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = &*x - &(&c * y);
                }
            }
        }
        v
    }

    pub fn reduce_form(&self, f: &BinaryForm) -> Result<BinaryForm> {
        self.check_form(f)?;
        Ok(BinaryForm::new(self.field, self.reduce(f.coeffs())))
    }

    fn check_form(&self, f: &BinaryForm) -> Result<()> {
        if f.degree() != self.degree {
            return Err(Error::DegreeMismatch(format!(
                "form of degree {} tested against V_{}",
                f.degree(),
                self.degree
            )));
        }
        Ok(())
    }

    pub fn contains(&self, f: &BinaryForm) -> Result<bool> {
        self.check_form(f)?;
        Ok(self.contains_vec(f.coeffs()))
    }

    pub fn contains_vec(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.degree == other.degree && self.rows.iter().all(|r| other.contains_vec(r))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(format!(
                "sum of subspaces of V_{} and V_{}",
                self.degree, other.degree
            )));
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(Subspace::from_rows(self.field, self.degree, rows))
    }

    /// Zassenhaus: row reduce `[s | s]` over `[t | 0]`; rows whose left half
    /// vanishes carry a basis of the intersection on the right.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(format!(
                "intersection of subspaces of V_{} and V_{}",
                self.degree, other.degree
            )));
        }
        let n = self.degree + 1;
        let zero = self.field.zero();
        let mut stacked: Matrix = self
            .rows
            .iter()
            .map(|r| r.iter().chain(r.iter()).cloned().collect())
            .collect();
        stacked.extend(
            other
                .rows
                .iter()
                .map(|r| r.iter().cloned().chain(std::iter::repeat_n(zero.clone(), n)).collect()),
        );
        let (red, pivots) = linalg::rref(self.field, stacked, 2 * n);
        let rows = red
            .into_iter()
            .zip(pivots)
            .filter(|(_, p)| *p >= n)
            .map(|(r, _)| r[n..].to_vec())
            .collect();
        Ok(Subspace::from_rows(self.field, self.degree, rows))
    }

    /// All maximal minors of the canonical basis matrix, column subsets in
    /// lexicographic order, scaled so the first nonzero coordinate is 1.
    /// The zero subspace has the single coordinate 1.
    pub fn pluecker(&self) -> Vec<Scalar> {
        let k = self.dim();
        let mut coords: Vec<Scalar> = combinations(self.degree + 1, k)
            .into_iter()
            .map(|cols| {
                let minor: Matrix = self
                    .rows
                    .iter()
                    .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
                    .collect();
                linalg::det(self.field, &minor)
            })
            .collect();
        if let Some(lead) = coords.iter().find(|c| !c.is_zero()).cloned() {
            let inv = lead.inv().expect("nonzero");
            for c in coords.iter_mut() {
                *c = &*c * &inv;
            }
        }
        coords
    }
}

/// `span { F s : s in S }` inside `V_(deg F + deg S)`.
pub fn mul_into(f: &BinaryForm, s: &Subspace) -> Subspace {
    let rows = s
        .basis()
        .iter()
        .map(|b| form_mul(f, b).into_coeffs())
        .collect();
    Subspace::from_rows(s.field, s.degree + f.degree(), rows)
}

/// The `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}
