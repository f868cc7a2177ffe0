//! Dense exact linear algebra over a [`Field`] and over `k[t]`.
//!
//! Matrices are plain `Vec<Vec<_>>` in row-major order. Everything here is
//! small (ambient dimensions of a few dozen), so no effort is spent on
//! sparsity.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{Field, Poly, Scalar};

pub type Matrix = Vec<Vec<Scalar>>;

/// Reduced row echelon form. Returns the nonzero rows (each with pivot entry
/// 1) and their pivot columns, strictly increasing.
pub fn rref(field: Field, mut rows: Matrix, ncols: usize) -> (Matrix, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !y.is_zero() {
                    *x = &*x - &(&factor * y);
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    debug_assert!(rows.iter().all(|row| row.iter().all(|x| x.field() == field)));
    (rows, pivots)
}

pub fn rank(field: Field, rows: &Matrix, ncols: usize) -> usize {
    rref(field, rows.clone(), ncols).1.len()
}

/// A basis of the right kernel `{x : M x = 0}`.
pub fn kernel(field: Field, rows: &Matrix, ncols: usize) -> Matrix {
    let (red, pivots) = rref(field, rows.clone(), ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (row, &p) in red.iter().zip(&pivots) {
            v[p] = -&row[free];
        }
        basis.push(v);
    }
    basis
}

/// A basis of the left kernel `{y : y M = 0}`.
pub fn left_kernel(field: Field, rows: &Matrix, ncols: usize) -> Matrix {
    kernel(field, &transpose(rows, ncols), rows.len())
}

pub fn transpose(rows: &Matrix, ncols: usize) -> Matrix {
    (0..ncols)
        .map(|c| rows.iter().map(|r| r[c].clone()).collect())
        .collect()
}

/// Some solution of `M x = b`, or `None` if the system is inconsistent.
pub fn solve(field: Field, rows: &Matrix, ncols: usize, b: &[Scalar]) -> Option<Vec<Scalar>> {
    let augmented: Matrix = rows
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (red, pivots) = rref(field, augmented, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![field.zero(); ncols];
    for (row, &p) in red.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// Determinant of a square matrix. Over the rationals each row is scaled to
/// integers and the fraction-free Bareiss recurrence is used; over finite
/// fields plain Gaussian elimination.
pub fn det(field: Field, m: &Matrix) -> Scalar {
    let n = m.len();
    if n == 0 {
        return field.one();
    }
    match field {
        Field::Rational => {
            let mut scale = BigInt::one();
            let ints: Vec<Vec<BigInt>> = m
                .iter()
                .map(|row| {
                    let lcm = row
                        .iter()
                        .fold(BigInt::one(), |acc, x| acc.lcm(x.as_rational().denom()));
                    scale *= &lcm;
                    row.iter()
                        .map(|x| {
                            let q = x.as_rational();
                            q.numer() * (&lcm / q.denom())
                        })
                        .collect()
                })
                .collect();
            Scalar::Rat(BigRational::new(bareiss_det(ints), scale))
        }
        _ => {
            let mut a = m.clone();
            let mut acc = field.one();
            for k in 0..n {
                let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                    return field.zero();
                };
                if p != k {
                    a.swap(p, k);
                    acc = -acc;
                }
                acc = &acc * &a[k][k];
                let inv = a[k][k].inv().expect("nonzero pivot");
                for i in k + 1..n {
                    if a[i][k].is_zero() {
                        continue;
                    }
                    let factor = &a[i][k] * &inv;
                    let (top, rest) = a.split_at_mut(i);
                    for (x, y) in rest[0][k..].iter_mut().zip(&top[k][k..]) {
                        *x = &*x - &(&factor * y);
                    }
                }
            }
            acc
        }
    }
}

/// Fraction-free Bareiss determinant of an integer matrix.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Bareiss determinant of a square matrix over `k[t]`.
pub fn poly_det(field: Field, m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(field);
    }
    let mut a = m.to_vec();
    let mut negate = false;
    let mut prev = Poly::one(field);
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Poly::zero(field);
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = v.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

/// Monic gcd of all entries of a vector; zero for the zero vector.
pub fn poly_content(row: &[Poly]) -> Poly {
    let field = row.first().map(Poly::field).expect("nonempty row");
    row.iter().fold(Poly::zero(field), |acc, x| acc.gcd(x))
}

/// Row echelon form over `k[t]` without fractions: returns rows spanning the
/// same `k(t)`-space, each divided by its content, with the column of each
/// row's leading entry. Rows are independent over `k(t)`.
pub fn poly_echelon(rows: Vec<Vec<Poly>>, ncols: usize) -> (Vec<Vec<Poly>>, Vec<usize>) {
    let mut rows: Vec<Vec<Poly>> = rows
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|r| primitive(&r))
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let best = (r..rows.len())
            .filter(|&i| !rows[i][col].is_zero())
            .min_by_key(|&i| rows[i][col].degree());
        let Some(p) = best else { continue };
        rows.swap(r, p);
        let pivot_row = rows[r].clone();
        let pv = pivot_row[col].clone();
        let mut i = r + 1;
        while i < rows.len() {
            if !rows[i][col].is_zero() {
                let a = rows[i][col].clone();
                let g = pv.gcd(&a);
                let mul_self = pv.exact_div(&g).expect("gcd divides");
                let mul_pivot = a.exact_div(&g).expect("gcd divides");
                let combined: Vec<Poly> = rows[i]
                    .iter()
                    .zip(&pivot_row)
                    .map(|(x, y)| x.mul(&mul_self).sub(&y.mul(&mul_pivot)))
                    .collect();
                if combined.iter().all(Poly::is_zero) {
                    rows.remove(i);
                    continue;
                }
                rows[i] = primitive(&combined);
            }
            i += 1;
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Rank over `k(t)`.
pub fn poly_rank(rows: &[Vec<Poly>], ncols: usize) -> usize {
    poly_echelon(rows.to_vec(), ncols).1.len()
}

fn primitive(row: &[Poly]) -> Vec<Poly> {
    let c = poly_content(row);
    if c.degree() == Some(0) {
        return row.to_vec();
    }
    row.iter()
        .map(|x| x.exact_div(&c).expect("content divides"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(field: Field, rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect()
    }

    #[test]
    fn rref_and_kernel() {
        let q = Field::Rational;
        let m = mat(q, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let (red, piv) = rref(q, m.clone(), 3);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(red.len(), 2);
        let ker = kernel(q, &m, 3);
        assert_eq!(ker.len(), 1);
        for row in &m {
            let dot = row.iter().zip(&ker[0]).fold(q.zero(), |acc, (a, b)| &acc + &(a * b));
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn determinants_agree() {
        let q = Field::Rational;
        let m = mat(q, &[&[2, -1, 0], &[1, 3, 4], &[0, 5, -2]]);
        // expansion along the first row
        assert_eq!(det(q, &m), q.from_i64(2 * (-6 - 20) + (-2)));
        let f = Field::Prime(7);
        let mf = mat(f, &[&[2, -1, 0], &[1, 3, 4], &[0, 5, -2]]);
        assert_eq!(det(f, &mf), f.from_i64(-54));
        let half = mat(q, &[&[1, 0], &[0, 1]]);
        let mut half = half;
        half[0][0] = q.parse_scalar("1/2").unwrap();
        assert_eq!(det(q, &half), q.parse_scalar("1/2").unwrap());
    }

    #[test]
    fn solve_consistent_and_not() {
        let q = Field::Rational;
        let m = mat(q, &[&[1, 1], &[1, -1]]);
        let x = solve(q, &m, 2, &[q.from_i64(3), q.from_i64(1)]).unwrap();
        assert_eq!(x, vec![q.from_i64(2), q.from_i64(1)]);
        let sing = mat(q, &[&[1, 1], &[2, 2]]);
        assert!(solve(q, &sing, 2, &[q.from_i64(1), q.from_i64(3)]).is_none());
    }

    #[test]
    fn poly_determinant() {
        let q = Field::Rational;
        let p = |c: &[i64]| Poly::from_i64s(q, c);
        // [[t, 1], [1, t]] has determinant t^2 - 1
        let m = vec![vec![p(&[0, 1]), p(&[1])], vec![p(&[1]), p(&[0, 1])]];
        assert_eq!(poly_det(q, &m), p(&[-1, 0, 1]));
        let (rows, piv) = poly_echelon(m.clone(), 2);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(rows.len(), 2);
        let dep = vec![vec![p(&[0, 1]), p(&[0, 0, 1])], vec![p(&[1]), p(&[0, 1])]];
        assert_eq!(poly_rank(&dep, 2), 1);
    }
}
