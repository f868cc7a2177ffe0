//! Complete curves avoiding the resultant divisor, and degrees of the
//! Plücker maps along one-parameter families.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{form_gcd, Field, Poly, Scalar, TForm};
use crate::ideal::{check_type, model_hf};
use crate::json::PointJson;
use crate::limits::{limit_param_point, Chart, TFamily};
use crate::linalg;
use crate::strata::canonicalize;
use crate::subspace::combinations;
use crate::{Error, Result};

/// `[X0^d + t X0^(d-1) X1 + ... + t^d X1^d, X0 X1 (X0^(d-1) + ... + t^(d-1) X1^(d-1))]`,
/// a family of type `(d, d + 1)`.
pub fn explicit_curve(d: usize, field: Field) -> Result<TFamily> {
    if d == 0 {
        return Err(Error::InvalidInput("explicit curve needs d >= 1".into()));
    }
    let one = field.one();
    let f = TForm::new(field, (0..=d).map(|j| Poly::monomial(one.clone(), j)).collect());
    let mut g = vec![Poly::zero(field); d + 2];
    for j in 0..d {
        g[j + 1] = Poly::monomial(one.clone(), j);
    }
    TFamily::new(f, TForm::new(field, g))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialPoint {
    pub t: String,
    pub limit: PointJson,
    pub gcd_degree: usize,
}

/// Evidence that a family closes up to a complete curve inside the
/// coprime locus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveCertificate {
    pub d: usize,
    pub e: usize,
    pub field: String,
    pub resultant_profile: String,
    /// The profile with the roots found divided out. The search was
    /// exhaustive exactly when this is constant.
    pub residual: String,
    /// Where the per-point search ran (the base field over `Q`).
    pub search_field: String,
    pub points_searched: u64,
    pub special_points: Vec<SpecialPoint>,
    pub complete: bool,
    pub verdict: bool,
}

fn special_point(fam: &TFamily, chart: Chart) -> Result<SpecialPoint> {
    let limit = limit_param_point(fam, &chart)?;
    let gcd_degree = form_gcd(limit.f(), limit.g())?.degree();
    Ok(SpecialPoint {
        t: chart.to_string(),
        limit: PointJson::from_point(&limit),
        gcd_degree,
    })
}

fn linear(t0: &Scalar) -> Poly {
    let field = t0.field();
    Poly::new(field, vec![-t0.clone(), field.one()])
}

/// Strips every factor `t - r` from `p`.
fn divide_out(mut p: Poly, r: &Scalar) -> Poly {
    let lin = linear(r);
    while !p.is_zero() && p.eval(r).is_zero() {
        p = p.exact_div(&lin).expect("root gives a linear factor");
    }
    p
}

/// Finds every parameter value where `[F_t, G_t]` meets the resultant
/// divisor and checks that the limit there is coprime. Over `Q` only
/// `t = 0` can be found, so the certificate is complete when the resultant
/// profile is a monomial. Over a finite field every `t` in the quadratic
/// extension is tested directly.
pub fn verify_complete_curve(fam: &TFamily) -> Result<CurveCertificate> {
    let field = fam.field();
    let profile = fam.resultant_profile();
    let mut cert = CurveCertificate {
        d: fam.d(),
        e: fam.e(),
        field: field.to_string(),
        resultant_profile: profile.display_in("t"),
        residual: profile.display_in("t"),
        search_field: field.to_string(),
        points_searched: 0,
        special_points: Vec::new(),
        complete: false,
        verdict: false,
    };
    if profile.is_zero() {
        return Ok(cert);
    }

    let mut residual = profile.clone();
    match field {
        Field::Rational => {
            cert.points_searched = 1;
            if residual.eval(&field.zero()).is_zero() {
                residual = divide_out(residual, &field.zero());
                cert.special_points.push(special_point(fam, Chart::Zero)?);
            }
        }
        _ => {
            let search = match field {
                Field::Prime(p) => Field::galois(p, 2)?,
                other => other,
            };
            let local = fam.embed(search);
            let elements = search.elements();
            cert.search_field = search.to_string();
            cert.points_searched = elements.len() as u64;
            let special: Vec<Scalar> = elements
                .into_par_iter()
                .filter(|t0| {
                    let (f, g) = local.eval(t0);
                    f.is_zero() || form_gcd(&f, &g).map(|h| h.degree() > 0).unwrap_or(true)
                })
                .collect();
            residual = residual.embed(search);
            for t0 in &special {
                residual = divide_out(residual, t0);
            }
            let points = special
                .into_par_iter()
                .map(|t0| special_point(&local, Chart::At(t0)))
                .collect::<Result<Vec<_>>>()?;
            cert.special_points.extend(points);
        }
    }
    cert.points_searched += 1;
    cert.special_points.push(special_point(fam, Chart::Infinity)?);
    cert.residual = residual.display_in("t");
    cert.complete = residual.degree() == Some(0);
    cert.verdict = cert.complete && cert.special_points.iter().all(|s| s.gcd_degree == 0);
    Ok(cert)
}

/// Result of pushing a family of type `(1, e)` through `[F, G] -> [F^p, G^p]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusCertificate {
    pub p: u32,
    pub e: usize,
    pub field: String,
    pub points_checked: u64,
    /// Parameter values whose image failed, as strings.
    pub failures: Vec<String>,
    pub verdict: bool,
}

/// Checks, at every `t` of `GF(p^2)` and at infinity, that the image of the
/// limit point under the `p`-th power map is a coprime point of type
/// `(p, p e)` and that `gcd(F^p, G^p) = gcd(F, G)^p`.
pub fn frobenius_curve(p: u32, base: &TFamily) -> Result<FrobeniusCertificate> {
    let field = base.field();
    match field.characteristic() {
        0 => return Err(Error::InvalidField("the Frobenius curve needs positive characteristic".into())),
        c if c != p => {
            return Err(Error::InvalidField(format!("family lives in characteristic {c}, not {p}")));
        }
        _ => {}
    }
    if base.d() != 1 {
        return Err(Error::InvalidInput(format!("base family must have d = 1, got {}", base.d())));
    }
    let search = match field {
        Field::Prime(p) => Field::galois(p, 2)?,
        other => other,
    };
    let local = base.embed(search);
    let mut charts: Vec<Chart> = search.elements().into_iter().map(Chart::At).collect();
    charts.push(Chart::Infinity);
    let outcomes = charts
        .par_iter()
        .map(|chart| -> Result<Option<String>> {
            let point = limit_param_point(&local, chart)?;
            let (f, g) = (point.f().pow(p as usize), point.g().pow(p as usize));
            let lifted = match canonicalize(&f, &g) {
                Ok(q) => q,
                Err(_) => return Ok(Some(chart.to_string())),
            };
            let transfer = form_gcd(&f, &g)? == form_gcd(point.f(), point.g())?.pow(p as usize).normalize();
            let coprime = form_gcd(lifted.f(), lifted.g())?.degree() == 0;
            Ok((!(transfer && coprime)).then(|| chart.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    let failures: Vec<String> = outcomes.into_iter().flatten().collect();
    Ok(FrobeniusCertificate {
        p,
        e: base.e(),
        field: search.to_string(),
        points_checked: charts.len() as u64,
        verdict: failures.is_empty(),
        failures,
    })
}

fn content_free_degree(field: Field, minors: Vec<Poly>) -> usize {
    let nonzero: Vec<Poly> = minors.into_iter().filter(|m| !m.is_zero()).collect();
    let g = nonzero.iter().fold(Poly::zero(field), |acc, m| acc.gcd(m));
    nonzero
        .iter()
        .map(|m| m.exact_div(&g).expect("gcd divides").degree().unwrap_or(0))
        .max()
        .unwrap_or(0)
}

fn pluecker_degree(fam: &TFamily, l: usize, k: usize) -> Result<usize> {
    let rows = fam.layer_generators(l);
    if rows.len() != k || linalg::poly_rank(&rows, l + 1) != k {
        return Err(Error::NonFlat(format!(
            "layer {l} has generic rank {} instead of {k}",
            linalg::poly_rank(&rows, l + 1)
        )));
    }
    let minors = combinations(l + 1, k)
        .into_par_iter()
        .map(|cols| {
            let sub: Vec<Vec<Poly>> = rows.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect();
            linalg::poly_det(fam.field(), &sub)
        })
        .collect();
    Ok(content_free_degree(fam.field(), minors))
}

/// Degree of the `i`-th Plücker map along the closure of the family in
/// `P^1`: the equation layer of degree `e + i - 1`, as a point of a
/// Grassmannian, has content-free Plücker coordinates of this maximal
/// `t`-degree. The same number is recomputed in the chart at infinity.
pub fn mdegree(fam: &TFamily, i: usize) -> Result<usize> {
    let (d, e) = (fam.d(), fam.e());
    check_type(d, e)?;
    if i > d {
        return Err(Error::OutOfRange(format!("i = {i} exceeds d = {d}")));
    }
    let l = e + i - 1;
    let k = model_hf(d, e, l)?;
    let here = pluecker_degree(fam, l, k)?;
    let there = pluecker_degree(&fam.in_chart(&Chart::Infinity), l, k)?;
    if here != there {
        return Err(Error::NonFlat(format!("degree {here} in t but {there} in 1/t")));
    }
    Ok(here)
}

/// `mdegree` for `i = 0..=d`, with the shape checks made along curves that
/// avoid every boundary stratum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub values: Vec<usize>,
    /// The values lie on the line through the first two.
    pub affine: bool,
    pub top_trivial: bool,
}

pub fn degree_profile(fam: &TFamily) -> Result<DegreeProfile> {
    let values = (0..=fam.d()).map(|i| mdegree(fam, i)).collect::<Result<Vec<_>>>()?;
    let v: Vec<i64> = values.iter().map(|&x| x as i64).collect();
    let step = v[1] - v[0];
    let affine = v.iter().enumerate().all(|(i, &x)| x == v[0] + step * i as i64);
    Ok(DegreeProfile {
        top_trivial: values[fam.d()] == 0,
        values,
        affine,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BinaryForm;

    #[test]
    fn explicit_shapes() {
        let q = Field::Rational;
        let c1 = explicit_curve(1, q).unwrap();
        assert_eq!(c1.eval(&q.from_i64(2)).0, BinaryForm::from_i64s(q, &[1, 2]));
        assert_eq!(c1.eval(&q.from_i64(2)).1, BinaryForm::from_i64s(q, &[0, 1, 0]));
        let c2 = explicit_curve(2, q).unwrap();
        let (f, g) = c2.eval(&q.from_i64(3));
        assert_eq!(f, BinaryForm::from_i64s(q, &[1, 3, 9]));
        assert_eq!(g, BinaryForm::from_i64s(q, &[0, 1, 3, 0]));
        assert!(explicit_curve(0, q).is_err());
    }

    #[test]
    fn explicit_curve_two_certificate() {
        let q = Field::Rational;
        let cert = verify_complete_curve(&explicit_curve(2, q).unwrap()).unwrap();
        assert_eq!(cert.resultant_profile, "t^4");
        assert_eq!(cert.special_points[0].t, "0");
        assert_eq!(cert.special_points[0].limit.text, "[X0^2, X1^3]");
        assert!(cert.verdict);
    }

    #[test]
    fn constant_divisor_family_fails() {
        let q = Field::Rational;
        let fam = TFamily::constant(&BinaryForm::from_i64s(q, &[0, 1, 0]), &BinaryForm::from_i64s(q, &[1, 0, 0, 0])).unwrap();
        let cert = verify_complete_curve(&fam).unwrap();
        assert!(!cert.verdict);
        assert_eq!(cert.resultant_profile, "0");
    }

    #[test]
    fn finite_field_search_agrees() {
        let f7 = Field::Prime(7);
        let cert = verify_complete_curve(&explicit_curve(3, f7).unwrap()).unwrap();
        assert_eq!(cert.points_searched, 50);
        assert_eq!(cert.special_points.len(), 2);
        assert!(cert.verdict);
    }

    #[test]
    fn frobenius_small() {
        let f2 = Field::Prime(2);
        let f = crate::parse::parse_tform("X0 + t*X1", f2, Some(1)).unwrap();
        let g = crate::parse::parse_tform("X1^2", f2, Some(2)).unwrap();
        let cert = frobenius_curve(2, &TFamily::new(f, g).unwrap()).unwrap();
        assert_eq!(cert.points_checked, 5);
        assert!(cert.verdict);
        let q = Field::Rational;
        assert!(frobenius_curve(2, &explicit_curve(1, q).unwrap()).is_err());
    }

    #[test]
    fn degrees_along_explicit_curves() {
        let q = Field::Rational;
        let p2 = degree_profile(&explicit_curve(2, q).unwrap()).unwrap();
        assert_eq!(p2.values, vec![2, 1, 0]);
        assert!(p2.affine && p2.top_trivial);
        let p3 = degree_profile(&explicit_curve(3, q).unwrap()).unwrap();
        assert_eq!(p3.values, vec![3, 2, 1, 0]);
    }
}
