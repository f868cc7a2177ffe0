//! The Picard lattice of the blow-up tower over `P_{d,e}` as an integer
//! lattice with basis `h = O(1,0)`, `xi = O(0,1)` and the exceptional
//! classes `E^1, ..., E^(d-2)`.
//!
//! The last exceptional class `E^(d-1)` is not a basis element: it equals
//! the resultant class `e h + d xi - sum_u (d-u) E^u`. For `d = 1` the
//! relation `xi = -e h` is applied on construction, so every class is a
//! multiple of `h`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::algebra::{Field, Scalar};
use crate::linalg;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PicClass {
    #[serde(skip)]
    d: usize,
    #[serde(skip)]
    e: usize,
    pub h: i64,
    pub xi: i64,
    pub exc: Vec<i64>,
}

fn check_lattice(d: usize, e: usize) -> Result<()> {
    if d == 0 || d >= e {
        return Err(Error::InvalidInput(format!("need 1 <= d < e, got d={d}, e={e}")));
    }
    Ok(())
}

impl PicClass {
    /// `exc` must have length `max(d - 2, 0)`.
    pub fn new(d: usize, e: usize, h: i64, xi: i64, exc: Vec<i64>) -> Result<PicClass> {
        check_lattice(d, e)?;
        if exc.len() != d.saturating_sub(2) {
            return Err(Error::InvalidInput(format!(
                "expected {} exceptional coefficients for d={d}, got {}",
                d.saturating_sub(2),
                exc.len()
            )));
        }
        let mut c = PicClass { d, e, h, xi, exc };
        if d == 1 {
            c.h -= e as i64 * c.xi;
            c.xi = 0;
        }
        Ok(c)
    }

    /// Parses `"h,xi,e1,..."`.
    pub fn parse(d: usize, e: usize, text: &str) -> Result<PicClass> {
        let nums = text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad class coefficient {s:?}")))
            })
            .collect::<Result<Vec<i64>>>()?;
        if nums.len() < 2 {
            return Err(Error::Parse("a class needs at least h and xi".into()));
        }
        PicClass::new(d, e, nums[0], nums[1], nums[2..].to_vec())
    }

    pub fn zero(d: usize, e: usize) -> Result<PicClass> {
        PicClass::new(d, e, 0, 0, vec![0; d.saturating_sub(2)])
    }

    /// `O(l, m)`.
    pub fn o(d: usize, e: usize, l: i64, m: i64) -> Result<PicClass> {
        PicClass::new(d, e, l, m, vec![0; d.saturating_sub(2)])
    }

    /// `E^v` for `1 <= v <= d - 1`; `E^(d-1)` is expanded as the resultant
    /// class.
    pub fn exceptional(d: usize, e: usize, v: usize) -> Result<PicClass> {
        check_lattice(d, e)?;
        if v == 0 || v >= d {
            return Err(Error::OutOfRange(format!("E^{v} does not exist for d={d}")));
        }
        if v == d - 1 {
            return delta_class(d, e);
        }
        let mut c = PicClass::zero(d, e)?;
        c.exc[v - 1] = 1;
        Ok(c)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn e(&self) -> usize {
        self.e
    }

    fn same_lattice(&self, other: &PicClass) {
        assert_eq!((self.d, self.e), (other.d, other.e), "classes from different lattices");
    }

    pub fn add(&self, other: &PicClass) -> PicClass {
        self.same_lattice(other);
        PicClass {
            d: self.d,
            e: self.e,
            h: self.h + other.h,
            xi: self.xi + other.xi,
            exc: self.exc.iter().zip(&other.exc).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> PicClass {
        PicClass {
            d: self.d,
            e: self.e,
            h: k * self.h,
            xi: k * self.xi,
            exc: self.exc.iter().map(|a| k * a).collect(),
        }
    }

    pub fn sub(&self, other: &PicClass) -> PicClass {
        self.add(&other.scale(-1))
    }

    pub fn is_zero(&self) -> bool {
        self.h == 0 && self.xi == 0 && self.exc.iter().all(|&x| x == 0)
    }

    /// Coordinates in the lattice basis: `(h, xi, e1, ...)`, or `(h)` when
    /// `d = 1`.
    pub fn coords(&self) -> Vec<i64> {
        if self.d == 1 {
            return vec![self.h];
        }
        let mut v = vec![self.h, self.xi];
        v.extend(&self.exc);
        v
    }

    pub fn rank(&self) -> usize {
        self.d
    }
}

/// `L^i = O(e-d+i, i) - sum_(1 <= u < i) (i-u) E^u` for `0 <= i <= d`, with
/// `E^(d-1)` expanded. `L^d` is the zero class.
pub fn l_class(d: usize, e: usize, i: usize) -> Result<PicClass> {
    check_lattice(d, e)?;
    if i > d {
        return Err(Error::OutOfRange(format!("L^{i} needs 0 <= i <= d = {d}")));
    }
    let mut c = PicClass::o(d, e, (e - d + i) as i64, i as i64)?;
    for u in 1..i {
        c = c.sub(&PicClass::exceptional(d, e, u)?.scale((i - u) as i64));
    }
    Ok(c)
}

/// The class of the resultant divisor: `e h + d xi - sum_u (d-u) E^u`.
pub fn delta_class(d: usize, e: usize) -> Result<PicClass> {
    check_lattice(d, e)?;
    if d == 1 {
        return Err(Error::InvalidInput("the resultant divisor is empty for d = 1".into()));
    }
    PicClass::new(d, e, e as i64, d as i64, (1..d - 1).map(|u| -((d - u) as i64)).collect())
}

/// Image of `E^v` under restriction to the `u`-th exceptional divisor,
/// `1 <= v <= d - 1`. For `v = d - 1` the rule is applied to the symbol
/// directly, without expanding it first; [`restrict`] expands instead, and
/// the two must agree.
pub fn restrict_exceptional(d: usize, e: usize, u: usize, v: usize) -> Result<(PicClass, PicClass)> {
    check_restriction(d, e, u)?;
    if v == 0 || v >= d {
        return Err(Error::OutOfRange(format!("E^{v} does not exist for d={d}")));
    }
    let (d1, e1, d2, e2) = (d - u, e + u, u, e - d + u);
    Ok(if v < u {
        (PicClass::zero(d1, e1)?, PicClass::exceptional(d2, e2, v)?)
    } else if v > u {
        (PicClass::exceptional(d1, e1, v - u)?, PicClass::zero(d2, e2)?)
    } else {
        let mut second = PicClass::o(d2, e2, 1, 1)?;
        for w in 1..u {
            second = second.sub(&PicClass::exceptional(d2, e2, w)?);
        }
        (PicClass::o(d1, e1, 1, -1)?, second)
    })
}

fn check_restriction(d: usize, e: usize, u: usize) -> Result<()> {
    check_lattice(d, e)?;
    if u == 0 || u >= d {
        return Err(Error::OutOfRange(format!("need 1 <= u <= d-1, got u={u}, d={d}")));
    }
    Ok(())
}

/// Restriction to `E^u`, which is a product of the spaces of types
/// `(d-u, e+u)` and `(u, e-d+u)`:
/// `O(l,m) -> (O(l+m, 0), O(l, m))`, `E^v -> (0, E^v)` for `v < u`,
/// `E^v -> (E^(v-u), 0)` for `v > u`, and
/// `E^u -> (O(1,-1), O(1,1) - sum_(w<u) E^w)`.
pub fn restrict(u: usize, c: &PicClass) -> Result<(PicClass, PicClass)> {
    let (d, e) = (c.d, c.e);
    check_restriction(d, e, u)?;
    let (d1, e1, d2, e2) = (d - u, e + u, u, e - d + u);
    let mut first = PicClass::o(d1, e1, c.h + c.xi, 0)?;
    let mut second = PicClass::o(d2, e2, c.h, c.xi)?;
    for (idx, &k) in c.exc.iter().enumerate() {
        if k == 0 {
            continue;
        }
        let (a, b) = restrict_exceptional(d, e, u, idx + 1)?;
        first = first.add(&a.scale(k));
        second = second.add(&b.scale(k));
    }
    Ok((first, second))
}

/// Checks the restriction identities on the lattice of type `(d, e)`:
/// `L^d = 0`, and for every `1 <= u < d`, `0 <= i <= d`,
/// `L^i|E^u = (L^(i-u), 0)` when `i >= u` and
/// `L^i|E^u = (O(e-d+2i, 0), L^i)` when `i <= u`.
/// Returns the `(u, i)` where one fails; `u = 0` flags `L^d`.
pub fn restriction_identity_failures(d: usize, e: usize) -> Result<Vec<(usize, usize)>> {
    let mut bad = Vec::new();
    if !l_class(d, e, d)?.is_zero() {
        bad.push((0, d));
    }
    for u in 1..d {
        for i in 0..=d {
            let got = restrict(u, &l_class(d, e, i)?)?;
            let mut ok = true;
            if i >= u {
                ok &= got == (l_class(d - u, e + u, i - u)?, PicClass::zero(u, e - d + u)?);
            }
            if i <= u {
                let first = PicClass::o(d - u, e + u, (e - d + 2 * i) as i64, 0)?;
                ok &= got == (first, l_class(u, e - d + u, i)?);
            }
            if !ok {
                bad.push((u, i));
            }
        }
    }
    Ok(bad)
}

fn l_matrix(d: usize, e: usize) -> Result<Vec<Vec<Scalar>>> {
    let q = Field::Rational;
    let cols = (0..d).map(|i| l_class(d, e, i)).collect::<Result<Vec<_>>>()?;
    Ok((0..d)
        .map(|r| cols.iter().map(|c| q.from_i64(c.coords()[r])).collect())
        .collect())
}

/// Determinant of the matrix whose columns are `L^0, ..., L^(d-1)`.
pub fn l_basis_determinant(d: usize, e: usize) -> Result<BigRational> {
    Ok(linalg::det(Field::Rational, &l_matrix(d, e)?).as_rational().clone())
}

/// The coordinates `lambda` with `c = sum_i lambda_i L^i`.
pub fn nef_coords(c: &PicClass) -> Result<Vec<BigRational>> {
    let q = Field::Rational;
    let m = l_matrix(c.d, c.e)?;
    let rhs: Vec<Scalar> = c.coords().into_iter().map(|x| q.from_i64(x)).collect();
    let sol = linalg::solve(q, &m, c.d, &rhs)
        .ok_or_else(|| Error::InvalidInput(format!("L-basis singular for ({},{})", c.d, c.e)))?;
    Ok(sol.into_iter().map(|s| s.as_rational().clone()).collect())
}

/// All coordinates in the `L`-basis are nonnegative.
pub fn is_nef(c: &PicClass) -> Result<bool> {
    Ok(nef_coords(c)?.iter().all(|x| !x.is_negative()))
}

/// The two boundary rays `(h, delta)` of the effective cone.
pub fn eff_generators(d: usize, e: usize) -> Result<(PicClass, PicClass)> {
    Ok((PicClass::o(d, e, 1, 0)?, delta_class(d, e)?))
}

/// Exact rational rendered as `"a"` or `"a/b"`.
pub fn rational_string(x: &BigRational) -> String {
    if x.denom() == &BigInt::from(1) || x.is_zero() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(d: usize, e: usize, h: i64, xi: i64, exc: &[i64]) -> PicClass {
        PicClass::new(d, e, h, xi, exc.to_vec()).unwrap()
    }

    #[test]
    fn l_classes() {
        assert_eq!(l_class(3, 5, 2).unwrap(), class(3, 5, 4, 2, &[-1]));
        assert_eq!(l_class(3, 5, 0).unwrap(), class(3, 5, 2, 0, &[0]));
        assert_eq!(l_class(2, 7, 1).unwrap(), class(2, 7, 6, 1, &[]));
        for d in 1..6 {
            assert!(l_class(d, d + 3, d).unwrap().is_zero());
        }
        assert!(l_class(3, 5, 4).is_err());
    }

    #[test]
    fn delta() {
        assert_eq!(delta_class(2, 3).unwrap(), class(2, 3, 3, 2, &[]));
        assert_eq!(delta_class(3, 5).unwrap(), class(3, 5, 5, 3, &[-2]));
        assert!(delta_class(1, 4).is_err());
        let json = serde_json::to_string(&delta_class(3, 5).unwrap()).unwrap();
        assert_eq!(json, r#"{"h":5,"xi":3,"exc":[-2]}"#);
    }

    #[test]
    fn d1_normalization() {
        let c = class(1, 4, 1, 1, &[]);
        assert_eq!((c.h, c.xi), (-3, 0));
    }

    #[test]
    fn restriction_rule_matches_delta_expansion() {
        for d in 2..7 {
            for e in d + 1..10 {
                for u in 1..d {
                    let formal = restrict_exceptional(d, e, u, d - 1).unwrap();
                    let expanded = restrict(u, &delta_class(d, e).unwrap()).unwrap();
                    assert_eq!(formal, expanded, "(d,e,u)=({d},{e},{u})");
                }
            }
        }
        let (a, b) = restrict(1, &delta_class(2, 3).unwrap()).unwrap();
        assert_eq!((a.h, b.h), (5, -1));
    }

    #[test]
    fn restricting_l2() {
        let (a, b) = restrict(1, &l_class(3, 5, 2).unwrap()).unwrap();
        assert_eq!(a, l_class(2, 6, 1).unwrap());
        assert!(b.is_zero());
    }

    #[test]
    fn restriction_of_l_classes_on_grid() {
        for d in 2..=8 {
            for e in d + 1..=12 {
                for u in 1..d {
                    for i in 0..=d {
                        let got = restrict(u, &l_class(d, e, i).unwrap()).unwrap();
                        if i >= u {
                            let want = (l_class(d - u, e + u, i - u).unwrap(), PicClass::zero(u, e - d + u).unwrap());
                            assert_eq!(got, want, "(d,e,u,i)=({d},{e},{u},{i})");
                        }
                        if i <= u {
                            let first = PicClass::o(d - u, e + u, (e - d + 2 * i) as i64, 0).unwrap();
                            let want = (first, l_class(u, e - d + u, i).unwrap());
                            assert_eq!(got, want, "(d,e,u,i)=({d},{e},{u},{i})");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn identity_checker_is_clean() {
        assert_eq!(restriction_identity_failures(5, 9), Ok(vec![]));
        assert_eq!(restriction_identity_failures(2, 3), Ok(vec![]));
    }

    #[test]
    fn nef_coordinates() {
        let h = PicClass::o(4, 9, 1, 0).unwrap();
        let coords = nef_coords(&h).unwrap();
        assert_eq!(rational_string(&coords[0]), "1/5");
        assert!(coords[1..].iter().all(|x| x.is_zero()));
        let l1 = nef_coords(&l_class(3, 5, 1).unwrap()).unwrap();
        assert_eq!(l1.iter().map(rational_string).collect::<Vec<_>>(), ["0", "1", "0"]);
        assert!(!is_nef(&delta_class(2, 3).unwrap()).unwrap());
        assert_eq!(
            nef_coords(&delta_class(2, 3).unwrap()).unwrap().iter().map(rational_string).collect::<Vec<_>>(),
            ["-1", "2"]
        );
    }
}
