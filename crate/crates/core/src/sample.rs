//! Random inputs for the property checks. Every sampler draws until its
//! conditions hold and reports how many draws it threw away.

use log::debug;
use rand::Rng;

use crate::algebra::{form_gcd, form_mul, BinaryForm, Field};
use crate::ideal::GradedIdeal;
use crate::limits::{degeneration, Degeneration};
use crate::{Error, Result};

/// Gives up after this many rejected draws.
pub const MAX_REJECTIONS: u64 = 10_000;

/// A sampled value and the number of rejected draws before it.
#[derive(Clone, Debug)]
pub struct Draw<T> {
    pub value: T,
    pub rejections: u64,
}

fn retry<T, R: Rng + ?Sized>(
    what: &str,
    rng: &mut R,
    mut attempt: impl FnMut(&mut R) -> Result<Option<T>>,
) -> Result<Draw<T>> {
    for rejections in 0..=MAX_REJECTIONS {
        if let Some(value) = attempt(rng)? {
            if rejections > 0 {
                debug!("{what}: {rejections} rejected draws");
            }
            return Ok(Draw { value, rejections });
        }
    }
    Err(Error::Precondition(format!("no admissible {what} after {MAX_REJECTIONS} draws")))
}

/// A form of degree `l` with independent random coefficients, possibly zero.
pub fn random_form<R: Rng + ?Sized>(field: Field, l: usize, rng: &mut R) -> BinaryForm {
    BinaryForm::new(field, (0..=l).map(|_| field.random(rng)).collect())
}

pub fn random_nonzero_form<R: Rng + ?Sized>(field: Field, l: usize, rng: &mut R) -> BinaryForm {
    loop {
        let f = random_form(field, l, rng);
        if !f.is_zero() {
            return f;
        }
    }
}

fn coprime(f: &BinaryForm, g: &BinaryForm) -> Result<bool> {
    if f.is_zero() || g.is_zero() {
        return Ok(false);
    }
    Ok(form_gcd(f, g)?.degree() == 0)
}

/// `(F, G)` of degrees `(d, e)` with no common factor.
pub fn coprime_pair<R: Rng + ?Sized>(field: Field, d: usize, e: usize, rng: &mut R) -> Result<Draw<(BinaryForm, BinaryForm)>> {
    retry("coprime pair", rng, |rng| {
        let f = random_form(field, d, rng);
        let g = random_form(field, e, rng);
        Ok(coprime(&f, &g)?.then_some((f, g)))
    })
}

/// The ideal of a random coprime pair, up to degree `d + e`.
pub fn interior_point<R: Rng + ?Sized>(field: Field, d: usize, e: usize, rng: &mut R) -> Result<Draw<GradedIdeal>> {
    let pair = coprime_pair(field, d, e, rng)?;
    let (f, g) = pair.value;
    Ok(Draw {
        value: GradedIdeal::from_forms(d, e, &[f, g], d + e)?,
        rejections: pair.rejections,
    })
}

/// `(A, B, C)` of degrees `(d - u, u, e - d + u)`, pairwise coprime.
pub fn coprime_triple<R: Rng + ?Sized>(
    field: Field,
    d: usize,
    e: usize,
    u: usize,
    rng: &mut R,
) -> Result<Draw<(BinaryForm, BinaryForm, BinaryForm)>> {
    check_u(d, e, u)?;
    retry("coprime triple", rng, |rng| {
        let a = random_form(field, d - u, rng);
        let b = random_form(field, u, rng);
        let c = random_form(field, e - d + u, rng);
        let ok = coprime(&b, &c)? && coprime(&a, &form_mul(&b, &c))?;
        Ok(ok.then_some((a, b, c)))
    })
}

/// A coprime triple with a random common factor `K` of degree `k` planted
/// into each form: degrees stay `(d - u, u, e - d + u)`.
pub fn planted_triple<R: Rng + ?Sized>(
    field: Field,
    d: usize,
    e: usize,
    u: usize,
    k: usize,
    rng: &mut R,
) -> Result<Draw<(BinaryForm, BinaryForm, BinaryForm)>> {
    check_u(d, e, u)?;
    if k == 0 || k > u.min(d - u) {
        return Err(Error::OutOfRange(format!("planted degree {k} must lie in 1..={}", u.min(d - u))));
    }
    retry("planted triple", rng, |rng| {
        let kf = random_nonzero_form(field, k, rng);
        let a = random_nonzero_form(field, d - u - k, rng);
        let b = random_nonzero_form(field, u - k, rng);
        let c = random_nonzero_form(field, e - d + u - k, rng);
        Ok(Some((form_mul(&kf, &a), form_mul(&kf, &b), form_mul(&kf, &c))))
    })
}

fn check_u(d: usize, e: usize, u: usize) -> Result<()> {
    crate::ideal::check_type(d, e)?;
    if u == 0 || u >= d {
        return Err(Error::OutOfRange(format!("need 1 <= u < d, got u={u}, d={d}")));
    }
    Ok(())
}

/// Inputs `(Z, Z')` of `psi`: `Z` of type `(d - u, e + u)` and `Z'` of type
/// `(u, e - d + u)`, both cut out by coprime pairs.
pub fn psi_inputs<R: Rng + ?Sized>(
    field: Field,
    d: usize,
    e: usize,
    u: usize,
    rng: &mut R,
) -> Result<Draw<(GradedIdeal, GradedIdeal)>> {
    check_u(d, e, u)?;
    let z = interior_point(field, d - u, e + u, rng)?;
    let zp = interior_point(field, u, e - d + u, rng)?;
    Ok(Draw {
        value: (z.value, zp.value),
        rejections: z.rejections + zp.rejections,
    })
}

/// A tuple `(A, B, C, F, G)` meeting every hypothesis of the degeneration
/// formula, with both sides already computed.
pub fn admissible_degeneration<R: Rng + ?Sized>(
    field: Field,
    d: usize,
    e: usize,
    u: usize,
    rng: &mut R,
) -> Result<Draw<(Vec<BinaryForm>, Degeneration)>> {
    check_u(d, e, u)?;
    retry("degeneration tuple", rng, |rng| {
        let a = random_nonzero_form(field, d - u, rng);
        let b = random_nonzero_form(field, u, rng);
        let c = random_nonzero_form(field, e - d + u, rng);
        let f = random_form(field, d, rng);
        let g = random_form(field, e, rng);
        if a.degree() == 0 || b.is_zero() || c.is_zero() {
            return Ok(None);
        }
        match degeneration(&a, &b, &c, &f, &g) {
            Ok(deg) => Ok(Some((vec![a, b, c, f, g], deg))),
            Err(Error::Precondition(_)) | Err(Error::ZeroClass(_)) | Err(Error::UndefinedGcd) => Ok(None),
            Err(other) => Err(other),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samplers_meet_their_conditions() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = Field::Prime(101);
        let (x, y) = coprime_pair(f, 2, 3, &mut rng).unwrap().value;
        assert_eq!(form_gcd(&x, &y).unwrap().degree(), 0);
        let (a, b, c) = coprime_triple(f, 3, 5, 2, &mut rng).unwrap().value;
        assert_eq!((a.degree(), b.degree(), c.degree()), (1, 2, 4));
        let (a, b, c) = planted_triple(f, 3, 4, 1, 1, &mut rng).unwrap().value;
        assert!(form_gcd(&form_gcd(&a, &b).unwrap(), &c).unwrap().degree() >= 1);
        let (z, zp) = psi_inputs(f, 3, 4, 1, &mut rng).unwrap().value;
        assert_eq!((z.d(), z.e(), zp.d(), zp.e()), (2, 5, 1, 2));
        assert!(psi_inputs(f, 3, 4, 3, &mut rng).is_err());
    }

    #[test]
    fn degeneration_sample() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let draw = admissible_degeneration(Field::Prime(101), 2, 3, 1, &mut rng).unwrap();
        assert!(draw.value.1.agrees());
    }

    #[test]
    fn seeded_draws_repeat() {
        let f = Field::Prime(101);
        let a = random_form(f, 4, &mut ChaCha8Rng::seed_from_u64(9));
        let b = random_form(f, 4, &mut ChaCha8Rng::seed_from_u64(9));
        assert_eq!(a, b);
    }
}
