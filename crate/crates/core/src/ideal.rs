//! Graded ideals of `k[X0, X1]` stored degree by degree on a window
//! `[0, D]`, their Hilbert functions, and the boundary construction `psi`.
//!
//! Hilbert functions count equations: `HF(l)` is the dimension of the
//! degree `l` layer, not of the quotient.

use crate::algebra::{form_gcd, BinaryForm, Field, Scalar};
use crate::strata::{canonicalize, ParamPoint};
use crate::subspace::{mul_into, Subspace};
use crate::{Error, Result};

/// The Hilbert function of a complete intersection of forms of degrees
/// `d < e`:
///
/// | range of `l`          | value           |
/// |-----------------------|-----------------|
/// | `l < d`               | 0               |
/// | `d <= l < e`          | `l + 1 - d`     |
/// | `e <= l < d + e`      | `2l + 2 - d - e`|
/// | `l >= d + e`          | `l + 1`         |
pub fn model_hf(d: usize, e: usize, l: usize) -> Result<usize> {
    check_type(d, e)?;
    Ok(hf_formula(d, e, l))
}

pub(crate) fn check_type(d: usize, e: usize) -> Result<()> {
    if d == 0 || d >= e {
        return Err(Error::InvalidInput(format!("need 1 <= d < e, got d={d}, e={e}")));
    }
    Ok(())
}

fn hf_formula(d: usize, e: usize, l: usize) -> usize {
    if l < d {
        0
    } else if l < e {
        l + 1 - d
    } else if l < d + e {
        2 * l + 2 - d - e
    } else {
        l + 1
    }
}

/// `dim V_(l-d) + dim V_(l-e) - dim V_(l-d-e)` with `dim V_m = max(0, m+1)`:
/// the layer dimension forced by the Koszul complex of a regular sequence.
pub fn koszul_dimension(d: usize, e: usize, l: usize) -> usize {
    let dim_v = |m: i64| (m + 1).max(0);
    let (d, e, l) = (d as i64, e as i64, l as i64);
    (dim_v(l - d) + dim_v(l - e) - dim_v(l - d - e)) as usize
}

/// Whether the Koszul count agrees with [`model_hf`] in degree `l`.
pub fn koszul_dimension_identity(d: usize, e: usize, l: usize) -> Result<bool> {
    Ok(koszul_dimension(d, e, l) == model_hf(d, e, l)?)
}

/// A family of subspaces `layers[l]` of `V_l` for `0 <= l <= D`, tagged with
/// the type `(d, e)` it is compared against.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedIdeal {
    d: usize,
    e: usize,
    field: Field,
    layers: Vec<Subspace>,
}

impl GradedIdeal {
    /// Checks that `layers[l]` lives in `V_l`. Closure under multiplication
    /// is not enforced here; see [`GradedIdeal::is_closed`].
    pub fn new(d: usize, e: usize, layers: Vec<Subspace>) -> Result<GradedIdeal> {
        let field = layers
            .first()
            .map(Subspace::field)
            .ok_or_else(|| Error::InvalidInput("an ideal needs at least one layer".into()))?;
        for (l, s) in layers.iter().enumerate() {
            if s.degree() != l {
                return Err(Error::DegreeMismatch(format!("layer {l} lives in V_{}", s.degree())));
            }
            if s.field() != field {
                return Err(Error::InvalidInput(format!("layer {l} is over {}", s.field())));
            }
        }
        Ok(GradedIdeal { d, e, field, layers })
    }

    /// The ideal generated by `gens`, truncated at degree `window`.
    pub fn from_forms(d: usize, e: usize, gens: &[BinaryForm], window: usize) -> Result<GradedIdeal> {
        let field = gens
            .first()
            .map(BinaryForm::field)
            .ok_or_else(|| Error::InvalidInput("no generators".into()))?;
        if gens.iter().any(BinaryForm::is_zero) {
            return Err(Error::InvalidInput("zero generator".into()));
        }
        let layers = (0..=window)
            .map(|l| {
                gens.iter()
                    .filter(|g| g.degree() <= l)
                    .fold(Subspace::zero(field, l), |acc, g| {
                        acc.sum(&Subspace::multiples(g, l)).expect("same degree")
                    })
            })
            .collect();
        GradedIdeal::new(d, e, layers)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// The top degree `D` of the window.
    pub fn window(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn layer(&self, l: usize) -> &Subspace {
        &self.layers[l]
    }

    pub fn layers(&self) -> &[Subspace] {
        &self.layers
    }

    pub fn hilbert_function(&self) -> Vec<usize> {
        self.layers.iter().map(Subspace::dim).collect()
    }

    /// `X0 * layers[l]` and `X1 * layers[l]` lie in `layers[l+1]` for every
    /// `l < D`.
    pub fn is_closed(&self) -> bool {
        let x0 = BinaryForm::monomial(self.field, 1, 0);
        let x1 = BinaryForm::monomial(self.field, 1, 1);
        self.layers.windows(2).all(|w| {
            mul_into(&x0, &w[0]).is_subspace_of(&w[1]) && mul_into(&x1, &w[0]).is_subspace_of(&w[1])
        })
    }

    /// Closed, window reaching `d + e`, and Hilbert function equal to the
    /// model on `[0, d + e]`.
    pub fn is_hilb_point(&self) -> bool {
        check_type(self.d, self.e).is_ok()
            && self.window() >= self.d + self.e
            && (0..=self.d + self.e).all(|l| self.layers[l].dim() == hf_formula(self.d, self.e, l))
            && self.is_closed()
    }

    /// Layer dimensions against the Koszul count on the whole window.
    pub fn satisfies_koszul(&self) -> bool {
        (0..=self.window()).all(|l| self.layers[l].dim() == koszul_dimension(self.d, self.e, l))
    }

    /// The point `[F, G]` read off the layers of degrees `d` and `e`.
    pub fn projection(&self) -> Result<ParamPoint> {
        let (d, e) = (self.d, self.e);
        if self.window() < e || self.layers[d].dim() != 1 {
            return Err(Error::NotHilbPoint(format!("layer {d} is not a line")));
        }
        let f = self.layers[d].basis().remove(0);
        let fe = Subspace::multiples(&f, e);
        let g = self.layers[e]
            .basis()
            .into_iter()
            .find(|g| !fe.contains_vec(g.coeffs()))
            .ok_or_else(|| Error::NotHilbPoint(format!("layer {e} holds only multiples of F")))?;
        canonicalize(&f, &g)
    }

    /// Plücker coordinates of `layers[l]`, which must have the model
    /// dimension.
    pub fn pluecker(&self, l: usize) -> Result<Vec<Scalar>> {
        let expected = model_hf(self.d, self.e, l)?;
        let layer = self
            .layers
            .get(l)
            .ok_or_else(|| Error::OutOfRange(format!("degree {l} beyond window {}", self.window())))?;
        if layer.dim() != expected {
            return Err(Error::DegreeMismatch(format!(
                "layer {l} has dimension {} instead of {expected}",
                layer.dim()
            )));
        }
        Ok(layer.pluecker())
    }
}

/// Glues `Z` of type `(d-u, e+u)` and `Z'` of type `(u, e-d+u)` into a point
/// of type `(d, e)`: below degree `e+u` the layers are `F * Z'` where `F`
/// spans the degree `d-u` layer of `Z`; from `e+u` on they are the layers of
/// `Z` (which already contain `F * Z'`).
pub fn psi(u: usize, z: &GradedIdeal, zp: &GradedIdeal) -> Result<GradedIdeal> {
    let d = z.d + u;
    if zp.d != u || z.e < d || zp.e + z.d + u != z.e {
        return Err(Error::DegreeMismatch(format!(
            "types ({},{}) and ({},{}) do not fit u={u}",
            z.d, z.e, zp.d, zp.e
        )));
    }
    let e = z.e - u;
    for (name, ideal) in [("Z", z), ("Z'", zp)] {
        if !ideal.is_hilb_point() {
            return Err(Error::NotHilbPoint(format!("{name} has HF {:?}", ideal.hilbert_function())));
        }
    }
    let f = z.layers[d - u].basis().remove(0);
    let zp_layer = |m: usize| {
        if m <= zp.window() {
            zp.layers[m].clone()
        } else {
            Subspace::full(z.field, m)
        }
    };
    let layers = (0..=d + e)
        .map(|l| {
            let below = if l >= d - u {
                mul_into(&f, &zp_layer(l - (d - u)))
            } else {
                Subspace::zero(z.field, l)
            };
            if l < e + u {
                below
            } else {
                z.layers[l].sum(&below).expect("same degree")
            }
        })
        .collect();
    GradedIdeal::new(d, e, layers)
}

/// Recovers `(u, Z, Z')` from a boundary point `Y = psi(u, Z, Z')`. Here `u`
/// comes from the gcd stratum of the projection of `Y`, `F` is the gcd of
/// the equations of degree below `e+u`, and `Z'` consists of those
/// equations divided by `F`. The inverse is exact when `Z'` is interior.
pub fn psi_inverse(y: &GradedIdeal) -> Result<(usize, GradedIdeal, GradedIdeal)> {
    if !y.is_hilb_point() {
        return Err(Error::NotHilbPoint(format!("HF {:?}", y.hilbert_function())));
    }
    let (d, e, field) = (y.d, y.e, y.field);
    let (g, u) = y.projection()?.stratum();
    if g == 0 {
        return Err(Error::InteriorPoint);
    }
    let low: Vec<BinaryForm> = (0..e + u).flat_map(|l| y.layers[l].basis()).collect();
    let f = low
        .iter()
        .try_fold(None::<BinaryForm>, |acc, h| -> Result<_> {
            Ok(Some(match acc {
                None => h.normalize(),
                Some(a) => form_gcd(&a, h)?,
            }))
        })?
        .ok_or(Error::InteriorPoint)?;
    if f.degree() != d - u {
        return Err(Error::Precondition(format!(
            "common factor of degree {} where {} was expected",
            f.degree(),
            d - u
        )));
    }
    let zp_window = e - d + 2 * u;
    let zp_layers = (0..=zp_window)
        .map(|m| {
            let l = m + d - u;
            if l < e + u {
                let rows = y.layers[l]
                    .basis()
                    .iter()
                    .map(|h| h.exact_div(&f).expect("F divides every low equation").into_coeffs())
                    .collect();
                Subspace::from_rows(field, m, rows)
            } else {
                Subspace::full(field, m)
            }
        })
        .collect();
    let zp = GradedIdeal::new(u, e - d + u, zp_layers)?;
    let z_layers = (0..=d + e)
        .map(|l| {
            if l < e + u {
                Subspace::multiples(&f, l)
            } else {
                y.layers[l].clone()
            }
        })
        .collect();
    let z = GradedIdeal::new(d - u, e + u, z_layers)?;
    for (name, ideal) in [("Z", &z), ("Z'", &zp)] {
        if !ideal.is_hilb_point() {
            return Err(Error::Precondition(format!(
                "recovered {name} is not a Hilbert-scheme point (HF {:?})",
                ideal.hilbert_function()
            )));
        }
    }
    Ok((u, z, zp))
}

/// The boundary index of a point: `d` when it is cut out by a coprime pair,
/// otherwise the `u` with `pi(Y) = [AB, AC]`, `deg A = d - u`.
pub fn classify_boundary(y: &GradedIdeal) -> Result<usize> {
    if !y.is_hilb_point() {
        return Err(Error::NotHilbPoint(format!("HF {:?}", y.hilbert_function())));
    }
    Ok(y.projection()?.stratum().1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(coeffs: &[i64]) -> BinaryForm {
        BinaryForm::from_i64s(Field::Rational, coeffs)
    }

    fn mono(l: usize, j: usize) -> BinaryForm {
        BinaryForm::monomial(Field::Rational, l, j)
    }

    #[test]
    fn model_values() {
        let hf: Vec<usize> = (0..=6).map(|l| model_hf(2, 3, l).unwrap()).collect();
        assert_eq!(hf, vec![0, 0, 1, 3, 5, 6, 7]);
        assert_eq!(model_hf(3, 5, 5).unwrap(), 4);
        assert!(model_hf(3, 3, 1).is_err());
        assert_eq!(koszul_dimension(2, 3, 4), 5);
        assert_eq!(koszul_dimension(2, 3, 5), 6);
    }

    #[test]
    fn principal_ideal() {
        let i = GradedIdeal::from_forms(1, 2, &[mono(1, 0)], 3).unwrap();
        assert_eq!(i.hilbert_function(), vec![0, 1, 2, 3]);
        assert!(i.is_closed());
    }

    #[test]
    fn monomial_complete_intersection() {
        let i = GradedIdeal::from_forms(2, 3, &[mono(2, 0), mono(3, 3)], 5).unwrap();
        assert_eq!(i.hilbert_function(), vec![0, 0, 1, 3, 5, 6]);
        assert!(i.is_hilb_point());
        assert!(i.satisfies_koszul());
        let bad = GradedIdeal::from_forms(2, 3, &[mono(2, 0), mono(3, 2)], 5).unwrap();
        assert_eq!(bad.hilbert_function(), vec![0, 0, 1, 3, 4, 5]);
        assert!(!bad.is_hilb_point());
        let pair = GradedIdeal::from_forms(2, 3, &[mono(2, 0), mono(2, 1)], 5).unwrap();
        assert_eq!(&pair.hilbert_function()[2..4], &[2, 3]);
    }

    #[test]
    fn psi_monomial_example() {
        // Z = (X0, X1^4) of type (1,4), Z' = (X1, X0^2) of type (1,2)
        let z = GradedIdeal::from_forms(1, 4, &[mono(1, 0), mono(4, 4)], 5).unwrap();
        let zp = GradedIdeal::from_forms(1, 2, &[mono(1, 1), mono(2, 0)], 3).unwrap();
        let y = psi(1, &z, &zp).unwrap();
        assert!(y.is_hilb_point());
        assert_eq!(y.layer(2), &Subspace::span(Field::Rational, 2, &[mono(2, 1)]).unwrap());
        assert_eq!(
            y.layer(3),
            &Subspace::span(Field::Rational, 3, &[mono(3, 0), mono(3, 1), mono(3, 2)]).unwrap()
        );
        assert!(y.layer(4).contains(&mono(4, 4)).unwrap());
        let (u, z2, zp2) = psi_inverse(&y).unwrap();
        assert_eq!((u, &z2, &zp2), (1, &z, &zp));
        assert_eq!(classify_boundary(&y).unwrap(), 1);
    }

    #[test]
    fn interior_point_has_no_inverse() {
        let i = GradedIdeal::from_forms(2, 3, &[mono(2, 0), mono(3, 3)], 5).unwrap();
        assert_eq!(psi_inverse(&i), Err(Error::InteriorPoint));
        assert_eq!(classify_boundary(&i).unwrap(), 2);
    }

    #[test]
    fn pluecker_of_layers() {
        let i = GradedIdeal::from_forms(2, 3, &[mono(2, 0), q(&[0, 0, 0, 1])], 5).unwrap();
        assert_eq!(i.pluecker(3).unwrap().len(), 4);
        assert_eq!(i.pluecker(4).unwrap(), vec![Field::Rational.one()]);
        let p2 = i.pluecker(2).unwrap();
        assert_eq!(p2[0], Field::Rational.one());
        assert!(p2[1..].iter().all(Scalar::is_zero));
    }
}
