//! Invariants of the translations `(F, G) -> (F, G + H F)` on `V_d x V_e`,
//! one bigraded slice at a time.
//!
//! Coordinates are `a_0..a_d` (coefficients of `F`) and `b_0..b_e`
//! (coefficients of `G`). Translating by `X0^(e-d-j) X1^j` moves `b_m` by
//! `a_(m-j)`, so in characteristic 0 the invariants are the common kernel
//! of the derivations `D_j = sum_m a_(m-j) d/db_m`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Field, Scalar};
use crate::ideal::check_type;
use crate::linalg::{self, Matrix};
use crate::{Error, Result};

/// Exponent vectors of all monomials of total degree `k` in `n` variables,
/// in lexicographic order.
pub fn monomials(n: usize, k: usize) -> Vec<Vec<u32>> {
    if n == 0 {
        return if k == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=k).rev() {
        for mut rest in monomials(n - 1, k - first) {
            rest.insert(0, first as u32);
            out.push(rest);
        }
    }
    out
}

/// A polynomial in `a_0..a_d, b_0..b_e` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    d: usize,
    e: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl MPoly {
    pub fn zero(d: usize, e: usize) -> MPoly {
        MPoly {
            d,
            e,
            terms: BTreeMap::new(),
        }
    }

    fn nvars(&self) -> usize {
        self.d + self.e + 2
    }

    fn var(d: usize, e: usize, k: usize) -> MPoly {
        let mut m = vec![0; d + e + 2];
        m[k] = 1;
        MPoly::from_terms(d, e, [(m, BigRational::one())])
    }

    pub fn a(d: usize, e: usize, i: usize) -> MPoly {
        MPoly::var(d, e, i)
    }

    pub fn b(d: usize, e: usize, m: usize) -> MPoly {
        MPoly::var(d, e, d + 1 + m)
    }

    pub fn from_terms(d: usize, e: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>) -> MPoly {
        let mut p = MPoly::zero(d, e);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Vec<u32>, c: BigRational) {
        let entry = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> MPoly {
        MPoly::from_terms(self.d, self.e, self.terms.iter().map(|(m, x)| (m.clone(), x * c)))
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.d, self.e);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    /// Bidegree `(a, b)` if homogeneous in both groups of variables.
    pub fn bidegree(&self) -> Option<(usize, usize)> {
        let split = |m: &Vec<u32>| {
            let a: u32 = m[..=self.d].iter().sum();
            let b: u32 = m[self.d + 1..].iter().sum();
            (a as usize, b as usize)
        };
        let mut it = self.terms.keys().map(split);
        let first = it.next()?;
        it.all(|x| x == first).then_some(first)
    }

    fn partial(&self, k: usize) -> MPoly {
        let mut out = MPoly::zero(self.d, self.e);
        for (m, c) in &self.terms {
            if m[k] > 0 {
                let mut n = m.clone();
                n[k] -= 1;
                out.add_term(n, c * BigRational::from_integer(m[k].into()));
            }
        }
        out
    }

    /// `D_j` applied to this polynomial.
    pub fn apply_derivation(&self, j: usize) -> MPoly {
        let (d, e) = (self.d, self.e);
        let mut out = MPoly::zero(d, e);
        for m in j..=(j + d).min(e) {
            let db = self.partial(d + 1 + m);
            if !db.is_zero() {
                out = out.add(&MPoly::a(d, e, m - j).mul(&db));
            }
        }
        debug_assert_eq!(self.nvars(), out.nvars());
        out
    }
}

/// The monomial basis of the polynomials of degree `a` in the `a`-variables
/// and `b` in the `b`-variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiGradedSlice {
    pub d: usize,
    pub e: usize,
    pub a: usize,
    pub b: usize,
    pub monomials: Vec<Vec<u32>>,
}

impl BiGradedSlice {
    pub fn new(d: usize, e: usize, a: usize, b: usize) -> BiGradedSlice {
        let mut out = Vec::new();
        for ma in monomials(d + 1, a) {
            for mb in monomials(e + 1, b) {
                let mut m = ma.clone();
                m.extend(mb);
                out.push(m);
            }
        }
        BiGradedSlice { d, e, a, b, monomials: out }
    }

    pub fn dimension(&self) -> usize {
        self.monomials.len()
    }

    pub fn element(&self, coeffs: &[BigRational]) -> MPoly {
        MPoly::from_terms(self.d, self.e, self.monomials.iter().cloned().zip(coeffs.iter().cloned()))
    }
}

fn require_char_zero(field: Field) -> Result<()> {
    match field {
        Field::Rational => Ok(()),
        other => Err(Error::PositiveCharacteristic(other.characteristic())),
    }
}

fn check(field: Field, d: usize, e: usize) -> Result<()> {
    require_char_zero(field)?;
    check_type(d, e)
}

/// Matrix of `D_j` from the `(a, b)` slice to the `(a + 1, b - 1)` slice:
/// column `c` holds the image of the `c`-th source monomial.
pub fn derivation_matrix(field: Field, d: usize, e: usize, j: usize, slice: &BiGradedSlice) -> Result<Matrix> {
    check(field, d, e)?;
    if j > e - d {
        return Err(Error::OutOfRange(format!("j = {j} exceeds e - d = {}", e - d)));
    }
    if slice.b == 0 {
        return Ok(Vec::new());
    }
    let target = BiGradedSlice::new(d, e, slice.a + 1, slice.b - 1);
    let index: BTreeMap<&Vec<u32>, usize> = target.monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = vec![vec![field.zero(); slice.dimension()]; target.dimension()];
    for (c, m) in slice.monomials.iter().enumerate() {
        let image = MPoly::from_terms(d, e, [(m.clone(), BigRational::one())]).apply_derivation(j);
        for (mono, coeff) in image.terms() {
            rows[index[mono]][c] = Scalar::Rat(coeff.clone());
        }
    }
    Ok(rows)
}

fn stacked(field: Field, d: usize, e: usize, slice: &BiGradedSlice) -> Result<Matrix> {
    let mut rows = Vec::new();
    for j in 0..=e - d {
        rows.extend(derivation_matrix(field, d, e, j, slice)?);
    }
    Ok(rows)
}

/// Dimension of the invariants in bidegree `(a, b)`.
pub fn invariant_dimension(field: Field, d: usize, e: usize, a: usize, b: usize) -> Result<usize> {
    let slice = BiGradedSlice::new(d, e, a, b);
    let rows = stacked(field, d, e, &slice)?;
    Ok(slice.dimension() - linalg::rank(field, &rows, slice.dimension()))
}

/// A basis of the invariants in bidegree `(a, b)`.
pub fn invariant_basis(field: Field, d: usize, e: usize, a: usize, b: usize) -> Result<Vec<MPoly>> {
    let slice = BiGradedSlice::new(d, e, a, b);
    let rows = stacked(field, d, e, &slice)?;
    let kernel = if rows.is_empty() {
        (0..slice.dimension())
            .map(|i| (0..slice.dimension()).map(|k| if k == i { field.one() } else { field.zero() }).collect())
            .collect()
    } else {
        linalg::kernel(field, &rows, slice.dimension())
    };
    Ok(kernel
        .iter()
        .map(|v| slice.element(&v.iter().map(|s| s.as_rational().clone()).collect::<Vec<_>>()))
        .collect())
}

/// Monomials of bidegree `(a, b)` in a polynomial ring on two generators of
/// bidegree `(1, 0)` and one of bidegree `(e, 1)`.
pub fn free_ring_count(e: usize, a: usize, b: usize) -> usize {
    (a + 1).saturating_sub(e * b)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SliceRow {
    pub a: usize,
    pub b: usize,
    pub ambient: usize,
    pub invariant: usize,
    pub free_ring: Option<usize>,
}

/// Invariant dimensions for `a <= amax`, `b <= bmax`, sorted by `(a, b)`.
/// The free-ring column is filled in for `d = 1`.
pub fn invariant_table(field: Field, d: usize, e: usize, amax: usize, bmax: usize) -> Result<Vec<SliceRow>> {
    check(field, d, e)?;
    let cells: Vec<(usize, usize)> = (0..=amax).flat_map(|a| (0..=bmax).map(move |b| (a, b))).collect();
    cells
        .into_par_iter()
        .map(|(a, b)| {
            Ok(SliceRow {
                a,
                b,
                ambient: BiGradedSlice::new(d, e, a, b).dimension(),
                invariant: invariant_dimension(field, d, e, a, b)?,
                free_ring: (d == 1).then(|| free_ring_count(e, a, b)),
            })
        })
        .collect()
}

pub fn table_csv(rows: &[SliceRow]) -> String {
    let mut out = String::from("a,b,ambient,invariant,free_ring\n");
    for r in rows {
        let free = r.free_ring.map(|x| x.to_string()).unwrap_or_default();
        out.push_str(&format!("{},{},{},{},{}\n", r.a, r.b, r.ambient, r.invariant, free));
    }
    out
}

/// For `d = 1`, whether every slice with `a <= amax`, `b <= bmax` has as
/// many invariants as the free ring predicts.
pub fn series_vs_free_ring(e: usize, amax: usize, bmax: usize) -> Result<bool> {
    let rows = invariant_table(Field::Rational, 1, e, amax, bmax)?;
    Ok(rows.iter().all(|r| Some(r.invariant) == r.free_ring))
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    if n == 0 {
        return vec![(Vec::new(), true)];
    }
    let mut out = Vec::new();
    for (p, even) in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            // inserting n-1 at `pos` performs n-1-pos transpositions
            out.push((q, even == (n - 1 - pos).is_multiple_of(2)));
        }
    }
    out
}

/// The resultant of the generic forms of degrees `d` and `e` as a
/// polynomial in their coefficients, by Leibniz expansion of the Sylvester
/// matrix. Bidegree `(e, d)`.
pub fn generic_resultant(d: usize, e: usize) -> MPoly {
    let n = d + e;
    let zero = MPoly::zero(d, e);
    let mut rows: Vec<Vec<MPoly>> = Vec::with_capacity(n);
    for shift in 0..d {
        let mut row = vec![zero.clone(); n];
        for m in 0..=e {
            row[shift + m] = MPoly::b(d, e, m);
        }
        rows.push(row);
    }
    for shift in 0..e {
        let mut row = vec![zero.clone(); n];
        for i in 0..=d {
            row[shift + i] = MPoly::a(d, e, i);
        }
        rows.push(row);
    }
    let mut det = zero.clone();
    for (perm, even) in permutations(n) {
        let mut term = MPoly::from_terms(d, e, [(vec![0; d + e + 2], BigRational::one())]);
        for (r, &c) in perm.iter().enumerate() {
            if rows[r][c].is_zero() {
                term = zero.clone();
                break;
            }
            term = term.mul(&rows[r][c]);
        }
        det = if even { det.add(&term) } else { det.sub(&term) };
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn slice_dimensions() {
        assert_eq!(BiGradedSlice::new(1, 2, 2, 1).dimension(), 9);
        assert_eq!(BiGradedSlice::new(2, 3, 0, 0).dimension(), 1);
        assert_eq!(monomials(3, 2).len(), 6);
    }

    #[test]
    fn small_slices() {
        assert_eq!(invariant_dimension(q(), 1, 2, 1, 0), Ok(2));
        assert_eq!(invariant_dimension(q(), 1, 2, 2, 1), Ok(1));
        assert_eq!(invariant_dimension(q(), 1, 2, 0, 1), Ok(0));
        assert_eq!(invariant_dimension(q(), 3, 5, 1, 0), Ok(4));
        assert_eq!(invariant_dimension(Field::Prime(7), 1, 2, 1, 0), Err(Error::PositiveCharacteristic(7)));
    }

    #[test]
    fn the_degree_two_one_invariant() {
        let basis = invariant_basis(q(), 1, 2, 2, 1).unwrap();
        assert_eq!(basis.len(), 1);
        let (d, e) = (1, 2);
        let a = |i| MPoly::a(d, e, i);
        let b = |m| MPoly::b(d, e, m);
        let r = a(1).mul(&a(1)).mul(&b(0)).sub(&a(0).mul(&a(1)).mul(&b(1))).add(&a(0).mul(&a(0)).mul(&b(2)));
        assert!(r.apply_derivation(0).is_zero() && r.apply_derivation(1).is_zero());
        // spans the same line as the computed basis vector
        let c = basis[0].terms().values().next().unwrap().clone();
        let lead = r.terms().get(basis[0].terms().keys().next().unwrap()).unwrap().clone();
        assert_eq!(basis[0].scale(&(lead / c)), r);
    }

    #[test]
    fn free_ring_tables() {
        assert!(series_vs_free_ring(2, 4, 4).unwrap());
        assert!(series_vs_free_ring(3, 6, 2).unwrap());
        assert_eq!(free_ring_count(2, 0, 0), 1);
    }

    #[test]
    fn resultant_is_invariant() {
        let r = generic_resultant(2, 3);
        assert_eq!(r.bidegree(), Some((3, 2)));
        for j in 0..=1 {
            assert!(r.apply_derivation(j).is_zero());
        }
        // Res(X0, X1) = -1 in the b-first row order
        let r11 = generic_resultant(1, 1);
        let x0 = [BigRational::one(), BigRational::zero()];
        let x1 = [BigRational::zero(), BigRational::one()];
        let mut value = BigRational::zero();
        for (m, c) in r11.terms() {
            let mut t = c.clone();
            for (k, &p) in m.iter().enumerate() {
                let v = if k < 2 { &x0[k] } else { &x1[k - 2] };
                for _ in 0..p {
                    t *= v;
                }
            }
            value += t;
        }
        assert_eq!(value, -BigRational::one());
    }

    #[test]
    fn products_of_invariants_are_invariant() {
        let x = invariant_basis(q(), 1, 2, 1, 0).unwrap();
        let y = invariant_basis(q(), 1, 2, 2, 1).unwrap();
        let p = x[0].mul(&y[0]);
        assert!(p.apply_derivation(0).is_zero() && p.apply_derivation(1).is_zero());
    }
}
