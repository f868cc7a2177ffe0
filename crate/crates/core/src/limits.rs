//! One-parameter families `[F_t, G_t]` and their flat limits.
//!
//! Limits are computed degree by degree. The multiples of `F_t` and `G_t`
//! in degree `l` span a `k(t)`-subspace; its saturation (the vectors with
//! polynomial entries) specializes at `t = 0` to the limit layer. The
//! saturation is found without Gröbner bases: starting from a
//! fraction-free echelon basis, whenever the `t = 0` evaluations become
//! dependent the dependent combination is divided by the largest possible
//! power of `t` and replaces one of the vectors it involves.

use std::fmt;

use rayon::prelude::*;

use crate::algebra::{form_gcd, form_mul, BinaryForm, Field, Poly, Scalar, TForm};
use crate::ideal::{check_type, psi, GradedIdeal};
use crate::linalg::{self, Matrix};
use crate::strata::{canonicalize, dmu_matrix, ParamPoint};
use crate::subspace::Subspace;
use crate::{Error, Result};

/// A pair of forms of degrees `d < e` with coefficients in `k[t]`, whose
/// class `G_t mod <F_t>` is nonzero over `k(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TFamily {
    f: TForm,
    g: TForm,
}

/// Where a family is specialized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Chart {
    /// `t = 0`.
    Zero,
    /// `t = t0`, reduced to `t = 0` by a shift.
    At(Scalar),
    /// `t = infinity`, reduced to `s = 0` for `s = 1/t`.
    Infinity,
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Chart::Zero => f.write_str("0"),
            Chart::At(t0) => write!(f, "{t0}"),
            Chart::Infinity => f.write_str("inf"),
        }
    }
}

/// Coefficient vectors of the degree `l` multiples `X0^(m-j) X1^j H`.
fn multiples_rows(h: &TForm, l: usize) -> Vec<Vec<Poly>> {
    if l < h.degree() {
        return Vec::new();
    }
    let m = l - h.degree();
    (0..=m).map(|j| h.monomial_multiple(m, j)).collect()
}

impl TFamily {
    pub fn new(f: TForm, g: TForm) -> Result<TFamily> {
        check_type(f.degree(), g.degree())?;
        if f.field() != g.field() {
            return Err(Error::InvalidInput(format!("F over {} but G over {}", f.field(), g.field())));
        }
        if f.is_zero() {
            return Err(Error::InvalidInput("F_t is identically zero".into()));
        }
        let fam = TFamily { f, g };
        let (d, e) = (fam.d(), fam.e());
        let mut rows = multiples_rows(&fam.f, e);
        rows.push(fam.g.coeffs().to_vec());
        if linalg::poly_rank(&rows, e + 1) != e - d + 2 {
            return Err(Error::ZeroClass("G_t is a multiple of F_t over k(t)".into()));
        }
        Ok(fam)
    }

    /// The family `[F, G]` not depending on `t`.
    pub fn constant(f: &BinaryForm, g: &BinaryForm) -> Result<TFamily> {
        TFamily::new(TForm::constant(f), TForm::constant(g))
    }

    pub fn d(&self) -> usize {
        self.f.degree()
    }

    pub fn e(&self) -> usize {
        self.g.degree()
    }

    pub fn field(&self) -> Field {
        self.f.field()
    }

    pub fn f(&self) -> &TForm {
        &self.f
    }

    pub fn g(&self) -> &TForm {
        &self.g
    }

    /// `Res(F_t, G_t)` as a polynomial in `t`.
    pub fn resultant_profile(&self) -> Poly {
        let (a, b) = (self.d(), self.e());
        let n = a + b;
        let field = self.field();
        let mut rows = Vec::with_capacity(n);
        for (form, copies) in [(&self.g, a), (&self.f, b)] {
            for shift in 0..copies {
                let mut row = vec![Poly::zero(field); n];
                for (j, c) in form.coeffs().iter().enumerate() {
                    row[shift + j] = c.clone();
                }
                rows.push(row);
            }
        }
        linalg::poly_det(field, &rows)
    }

    /// Coprime at all but finitely many `t`.
    pub fn is_generically_coprime(&self) -> bool {
        !self.resultant_profile().is_zero()
    }

    pub fn eval(&self, t0: &Scalar) -> (BinaryForm, BinaryForm) {
        (self.f.eval(t0), self.g.eval(t0))
    }

    /// The family rewritten so that the chart's point sits at parameter 0.
    pub fn in_chart(&self, chart: &Chart) -> TFamily {
        match chart {
            Chart::Zero => self.clone(),
            Chart::At(t0) => TFamily {
                f: self.f.taylor_shift(t0),
                g: self.g.taylor_shift(t0),
            },
            Chart::Infinity => TFamily {
                f: self.f.reverse(),
                g: self.g.reverse(),
            },
        }
    }

    pub fn embed(&self, field: Field) -> TFamily {
        TFamily {
            f: self.f.embed(field),
            g: self.g.embed(field),
        }
    }

    /// The `k[t]` vectors of all degree `l` multiples of `F_t` and `G_t`.
    pub fn layer_generators(&self, l: usize) -> Vec<Vec<Poly>> {
        let mut rows = multiples_rows(&self.f, l);
        rows.extend(multiples_rows(&self.g, l));
        rows
    }
}

/// Evaluations at `t = 0` of a saturated basis of the `k(t)`-span of
/// `rows`. The number of returned rows is the `k(t)`-rank.
pub fn saturate_at_zero(field: Field, rows: Vec<Vec<Poly>>, ncols: usize) -> Result<Matrix> {
    let (mut basis, pivots) = linalg::poly_echelon(rows, ncols);
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let minor: Vec<Vec<Poly>> = basis
        .iter()
        .map(|r| pivots.iter().map(|&c| r[c].clone()).collect())
        .collect();
    let mut budget = linalg::poly_det(field, &minor)
        .valuation()
        .expect("echelon rows are independent");
    let zero = field.zero();
    loop {
        let at_zero: Matrix = basis
            .iter()
            .map(|r| r.iter().map(|p| p.eval(&zero)).collect())
            .collect();
        let dependencies = linalg::left_kernel(field, &at_zero, ncols);
        let Some(c) = dependencies.into_iter().next() else {
            return Ok(at_zero);
        };
        let combo: Vec<Poly> = (0..ncols)
            .map(|col| {
                basis
                    .iter()
                    .zip(&c)
                    .filter(|(_, ci)| !ci.is_zero())
                    .fold(Poly::zero(field), |acc, (r, ci)| acc.add(&r[col].scale(ci)))
            })
            .collect();
        let k = combo
            .iter()
            .filter_map(Poly::valuation)
            .min()
            .ok_or_else(|| Error::NonFlat("generators collapsed over k(t)".into()))?;
        if k > budget {
            return Err(Error::NonFlat(format!(
                "saturation needs t^{k} but the determinant bound left t^{budget}"
            )));
        }
        budget -= k;
        let replaced = c.iter().rposition(|x| !x.is_zero()).expect("nonzero dependency");
        basis[replaced] = combo.iter().map(|p| p.shift_down(k)).collect();
    }
}

/// The flat limit at `t = 0`, on the window `[0, window]`. Every layer has
/// the dimension of the generic layer.
pub fn flat_limit(fam: &TFamily, window: usize) -> Result<GradedIdeal> {
    if !fam.is_generically_coprime() {
        return Err(Error::Precondition("the family is not generically coprime".into()));
    }
    let field = fam.field();
    let layers = (0..=window)
        .into_par_iter()
        .map(|l| {
            let rows = fam.layer_generators(l);
            if rows.is_empty() {
                return Ok(Subspace::zero(field, l));
            }
            let generic = linalg::poly_rank(&rows, l + 1);
            let special = saturate_at_zero(field, rows, l + 1)?;
            let layer = Subspace::from_rows(field, l, special);
            if layer.dim() != generic {
                return Err(Error::NonFlat(format!(
                    "layer {l} has dimension {} but the generic layer has {generic}",
                    layer.dim()
                )));
            }
            Ok(layer)
        })
        .collect::<Result<Vec<_>>>()?;
    GradedIdeal::new(fam.d(), fam.e(), layers)
}

/// The limit at `t = 0` of `[AB + tF, AC + tG]` and the prediction
/// `psi(u, Z, Z')` with `Z' = (B, C)` and `Z = (A, BG - CF)`.
#[derive(Clone, Debug)]
pub struct Degeneration {
    pub u: usize,
    pub family: TFamily,
    pub limit: GradedIdeal,
    pub predicted: GradedIdeal,
}

impl Degeneration {
    /// Degrees where the two ideals differ.
    pub fn differing_layers(&self) -> Vec<usize> {
        (0..=self.limit.window())
            .filter(|&l| self.limit.layer(l) != self.predicted.layer(l))
            .collect()
    }

    pub fn agrees(&self) -> bool {
        self.limit == self.predicted
    }
}

/// Runs both sides of the degeneration formula after checking its
/// hypotheses: `B, C` coprime, `(F, G)` outside the image of the
/// differential at `(A, B, C)`, `A` coprime to `BG - CF`, and the family
/// generically coprime.
pub fn degeneration(
    a: &BinaryForm,
    b: &BinaryForm,
    c: &BinaryForm,
    f: &BinaryForm,
    g: &BinaryForm,
) -> Result<Degeneration> {
    let u = b.degree();
    let d = a.degree() + u;
    let e = a.degree() + c.degree();
    check_type(d, e)?;
    if a.degree() == 0 || u == 0 {
        return Err(Error::OutOfRange(format!("need 1 <= u < d, got u={u}, d={d}")));
    }
    if f.degree() != d || g.degree() != e {
        return Err(Error::DegreeMismatch(format!(
            "F, G must have degrees ({d},{e}), got ({},{})",
            f.degree(),
            g.degree()
        )));
    }
    if form_gcd(b, c)?.degree() != 0 {
        return Err(Error::Precondition("B and C are not coprime".into()));
    }
    if dmu_matrix(u, a, b, c)?.image_contains(f, g) {
        return Err(Error::Precondition("(F, G) lies in the image of the differential".into()));
    }
    let h = form_mul(b, g).sub(&form_mul(c, f));
    if h.is_zero() {
        return Err(Error::Precondition("BG - CF vanishes".into()));
    }
    let z = GradedIdeal::from_forms(d - u, e + u, &[a.clone(), h], d + e)?;
    if !z.is_hilb_point() {
        return Err(Error::Precondition("A and BG - CF share a factor".into()));
    }
    let zp = GradedIdeal::from_forms(u, e - d + u, &[b.clone(), c.clone()], e - d + 2 * u)?;
    let t = |x: &BinaryForm| TForm::constant(x);
    let family = TFamily::new(
        t(&form_mul(a, b)).add(&t(f).shift_up(1)),
        t(&form_mul(a, c)).add(&t(g).shift_up(1)),
    )?;
    if !family.is_generically_coprime() {
        return Err(Error::Precondition("the family is not generically coprime".into()));
    }
    let predicted = psi(u, &z, &zp)?;
    let limit = flat_limit(&family, d + e)?;
    Ok(Degeneration {
        u,
        family,
        limit,
        predicted,
    })
}

/// Whether the flat limit of `[AB + tF, AC + tG]` equals the `psi`
/// prediction in every degree.
pub fn limit_vs_psi(a: &BinaryForm, b: &BinaryForm, c: &BinaryForm, f: &BinaryForm, g: &BinaryForm) -> Result<bool> {
    Ok(degeneration(a, b, c, f, g)?.agrees())
}

/// The limit point in `P_{d,e}` at the given chart. `F` is the `t = 0`
/// value of `F_t` with its `t`-content removed; `G` is any element of the
/// limit of `<F_t, G_t>_e` outside `<F>_e`.
pub fn limit_param_point(fam: &TFamily, chart: &Chart) -> Result<ParamPoint> {
    let local = fam.in_chart(chart);
    let field = local.field();
    let (d, e) = (local.d(), local.e());
    let f0 = local.f.clear_content()?.eval(&field.zero());
    let mut rows = multiples_rows(&local.f, e);
    rows.push(local.g.coeffs().to_vec());
    let w0 = saturate_at_zero(field, rows, e + 1)?;
    debug_assert_eq!(w0.len(), e - d + 2);
    let fe = Subspace::multiples(&f0, e);
    let g0 = w0
        .into_iter()
        .find(|r| !fe.contains_vec(r))
        .ok_or_else(|| Error::Precondition(format!("base point at t = {chart}")))?;
    canonicalize(&f0, &BinaryForm::new(field, g0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(coeffs: &[i64]) -> BinaryForm {
        BinaryForm::from_i64s(Field::Rational, coeffs)
    }

    fn tf(parts: &[&[i64]]) -> TForm {
        TForm::from_parts(&parts.iter().map(|p| q(p)).collect::<Vec<_>>())
    }

    #[test]
    fn coprime_specialization_needs_no_saturation() {
        // [X0^2 + t X0 X1, X1^3]
        let fam = TFamily::new(tf(&[&[1, 0, 0], &[0, 1, 0]]), tf(&[&[0, 0, 0, 1]])).unwrap();
        let lim = flat_limit(&fam, 5).unwrap();
        let direct = GradedIdeal::from_forms(2, 3, &[q(&[1, 0, 0]), q(&[0, 0, 0, 1])], 5).unwrap();
        assert_eq!(lim, direct);
    }

    #[test]
    fn one_saturation_step() {
        // [X0 X1 + t X1^2, X0^3 + t X1^3]
        let fam = TFamily::new(tf(&[&[0, 1, 0], &[0, 0, 1]]), tf(&[&[1, 0, 0, 0], &[0, 0, 0, 1]])).unwrap();
        let lim = flat_limit(&fam, 5).unwrap();
        assert!(lim.layer(4).contains(&q(&[0, 0, -1, 0, 1])).unwrap());
        assert!(lim.is_hilb_point());
    }

    #[test]
    fn monomial_degeneration() {
        let ok = limit_vs_psi(&q(&[1, 0]), &q(&[0, 1]), &q(&[1, 0, 0]), &q(&[0, 0, 1]), &q(&[0, 0, 0, 1]));
        assert_eq!(ok, Ok(true));
        let bad = limit_vs_psi(&q(&[1, 0]), &q(&[0, 1]), &q(&[0, 1, 0]), &q(&[0, 0, 1]), &q(&[0, 0, 0, 1]));
        assert!(matches!(bad, Err(Error::Precondition(_))));
    }

    #[test]
    fn param_point_limits() {
        // d = 2 explicit curve
        let f = tf(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let g = tf(&[&[0, 1, 0, 0], &[0, 0, 1, 0]]);
        let fam = TFamily::new(f, g).unwrap();
        let p0 = limit_param_point(&fam, &Chart::Zero).unwrap();
        assert_eq!(p0, canonicalize(&q(&[1, 0, 0]), &q(&[0, 0, 0, 1])).unwrap());
        let pinf = limit_param_point(&fam, &Chart::Infinity).unwrap();
        assert_eq!(pinf.stratum().0, 0);
        let c = TFamily::constant(&q(&[1, 0, 1]), &q(&[0, 1, 0, 0])).unwrap();
        let here = canonicalize(&q(&[1, 0, 1]), &q(&[0, 1, 0, 0])).unwrap();
        assert_eq!(limit_param_point(&c, &Chart::At(Field::Rational.from_i64(3))).unwrap(), here);
    }
}
