//! Exact base fields: the rationals, prime fields `GF(p)` and small
//! extensions `GF(p^m)` with `m <= 3`.
//!
//! A [`Field`] is a cheap `Copy` descriptor. A [`Scalar`] carries enough of
//! its field to do arithmetic on its own; mixing scalars of different fields
//! is a logic error and panics.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::{Error, Result};

/// Largest supported extension degree.
pub const MAX_EXTENSION_DEGREE: usize = 3;

/// A finite field `GF(p^m)` presented as `GF(p)[w] / (modulus(w))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExtensionField {
    p: u32,
    degree: u8,
    /// Low coefficients of the monic modulus `w^m + sum modulus[i] w^i`.
    modulus: [u32; MAX_EXTENSION_DEGREE],
}

impl ExtensionField {
    /// Builds `GF(p^m)` using the lexicographically first monic irreducible
    /// polynomial of degree `m` (irreducibility is a root test, exact for
    /// `m <= 3`).
    pub fn new(p: u32, degree: usize) -> Result<Self> {
        check_prime(p)?;
        if !(2..=MAX_EXTENSION_DEGREE).contains(&degree) {
            return Err(Error::InvalidField(format!(
                "extension degree {degree} not in 2..={MAX_EXTENSION_DEGREE}"
            )));
        }
        let count = (p as u64).pow(degree as u32);
        for code in 0..count {
            let mut modulus = [0u32; MAX_EXTENSION_DEGREE];
            let mut rest = code;
            for slot in modulus.iter_mut().take(degree) {
                *slot = (rest % p as u64) as u32;
                rest /= p as u64;
            }
            let has_root = (0..p).any(|x| {
                let mut acc = 1u64; // leading coefficient
                for i in (0..degree).rev() {
                    acc = (acc * x as u64 + modulus[i] as u64) % p as u64;
                }
                acc == 0
            });
            if !has_root {
                return Ok(ExtensionField {
                    p,
                    degree: degree as u8,
                    modulus,
                });
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.degree as u32)
    }

    fn mul(&self, a: &[u32; MAX_EXTENSION_DEGREE], b: &[u32; MAX_EXTENSION_DEGREE]) -> [u32; MAX_EXTENSION_DEGREE] {
        let m = self.degree();
        let p = self.p as u64;
        let mut prod = [0u64; 2 * MAX_EXTENSION_DEGREE];
        for i in 0..m {
            for j in 0..m {
                prod[i + j] = (prod[i + j] + a[i] as u64 * b[j] as u64) % p;
            }
        }
        // reduce w^k for k >= m using w^m = -sum modulus[i] w^i
        for k in (m..2 * m - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..m {
                let sub = c * self.modulus[i] as u64 % p;
                prod[k - m + i] = (prod[k - m + i] + p - sub) % p;
            }
        }
        let mut out = [0u32; MAX_EXTENSION_DEGREE];
        for i in 0..m {
            out[i] = prod[i] as u32;
        }
        out
    }
}

/// Field descriptor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u32),
    Extension(ExtensionField),
}

fn check_prime(p: u32) -> Result<()> {
    if !(2..1 << 31).contains(&p) {
        return Err(Error::InvalidField(format!("modulus {p} outside 2..2^31")));
    }
    let mut k = 2u64;
    while k * k <= p as u64 {
        if (p as u64).is_multiple_of(k) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        k += 1;
    }
    Ok(())
}

impl Field {
    pub fn prime(p: u32) -> Result<Field> {
        check_prime(p)?;
        Ok(Field::Prime(p))
    }

    /// `GF(p^m)`; `m = 1` gives the prime field.
    pub fn galois(p: u32, m: usize) -> Result<Field> {
        if m == 1 {
            Field::prime(p)
        } else {
            Ok(Field::Extension(ExtensionField::new(p, m)?))
        }
    }

    /// 0 for the rationals.
    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
            Field::Extension(ext) => ext.p,
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(*p as u64),
            Field::Extension(ext) => Some(ext.order()),
        }
    }

    /// The prime subfield.
    pub fn prime_subfield(&self) -> Field {
        match self {
            Field::Extension(ext) => Field::Prime(ext.p),
            other => *other,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Mod {
                value: n.rem_euclid(*p as i64) as u32,
                p: *p,
            },
            Field::Extension(ext) => {
                let mut c = [0u32; MAX_EXTENSION_DEGREE];
                c[0] = n.rem_euclid(ext.p as i64) as u32;
                Scalar::Ext { c, field: *ext }
            }
        }
    }

    /// Maps an exact rational into the field; fails when the denominator
    /// vanishes in characteristic p.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rational => Ok(Scalar::Rat(q.clone())),
            _ => {
                let p = BigInt::from(self.characteristic());
                let num = q.numer().mod_floor(&p).to_i64().expect("reduced below p");
                let den = q.denom().mod_floor(&p).to_i64().expect("reduced below p");
                if den == 0 {
                    return Err(Error::Parse(format!(
                        "denominator of {q} vanishes in characteristic {}",
                        self.characteristic()
                    )));
                }
                Ok(self.from_i64(num) * self.from_i64(den).inv().expect("nonzero"))
            }
        }
    }

    /// The residue class of a Scalar of the prime subfield, embedded here.
    pub fn embed(&self, s: &Scalar) -> Scalar {
        match (self, s) {
            (f, s) if s.field() == *f => s.clone(),
            (Field::Extension(ext), Scalar::Mod { value, p }) if *p == ext.p => {
                let mut c = [0u32; MAX_EXTENSION_DEGREE];
                c[0] = *value;
                Scalar::Ext { c, field: *ext }
            }
            _ => panic!("cannot embed {s} into {self}"),
        }
    }

    /// All elements of a finite field, in a fixed order starting with 0, 1.
    pub fn elements(&self) -> Vec<Scalar> {
        match self {
            Field::Rational => panic!("the rationals are not enumerable here"),
            Field::Prime(p) => (0..*p).map(|v| Scalar::Mod { value: v, p: *p }).collect(),
            Field::Extension(ext) => {
                let q = ext.order();
                (0..q)
                    .map(|code| {
                        let mut c = [0u32; MAX_EXTENSION_DEGREE];
                        let mut rest = code;
                        for slot in c.iter_mut().take(ext.degree()) {
                            *slot = (rest % ext.p as u64) as u32;
                            rest /= ext.p as u64;
                        }
                        Scalar::Ext { c, field: *ext }
                    })
                    .collect()
            }
        }
    }

    /// Uniform element of a finite field; small integers in `[-9, 9]` over the
    /// rationals.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self {
            Field::Rational => self.from_i64(rng.gen_range(-9..=9)),
            Field::Prime(p) => Scalar::Mod {
                value: rng.gen_range(0..*p),
                p: *p,
            },
            Field::Extension(ext) => {
                let mut c = [0u32; MAX_EXTENSION_DEGREE];
                for slot in c.iter_mut().take(ext.degree()) {
                    *slot = rng.gen_range(0..ext.p);
                }
                Scalar::Ext { c, field: *ext }
            }
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        loop {
            let s = self.random(rng);
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// Parses a coefficient: `"a"` or `"a/b"` with decimal integers, reduced
    /// into the field.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let q = parse_rational(text)?;
        self.from_rational(&q)
    }
}

pub(crate) fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("malformed rational literal {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(BigRational::new(num, den))
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "q"),
            Field::Prime(p) => write!(f, "fp:{p}"),
            Field::Extension(ext) => write!(f, "gf:{}^{}", ext.p, ext.degree),
        }
    }
}

/// Accepts `q`, `fp:p` and `gf:p^m`.
impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        let bad = || Error::InvalidField(format!("unknown field descriptor {s:?}"));
        if s.eq_ignore_ascii_case("q") {
            return Ok(Field::Rational);
        }
        if let Some(rest) = s.strip_prefix("fp:") {
            return Field::prime(rest.parse().map_err(|_| bad())?);
        }
        if let Some(rest) = s.strip_prefix("gf:") {
            let (p, m) = rest.split_once('^').unwrap_or((rest, "1"));
            return Field::galois(p.parse().map_err(|_| bad())?, m.parse().map_err(|_| bad())?);
        }
        Err(bad())
    }
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// Always in lowest terms with positive denominator.
    Rat(BigRational),
    /// Residue in `[0, p)`.
    Mod { value: u32, p: u32 },
    /// Coefficients in `GF(p)` on the power basis `1, w, w^2`.
    Ext {
        c: [u32; MAX_EXTENSION_DEGREE],
        field: ExtensionField,
    },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rational,
            Scalar::Mod { p, .. } => Field::Prime(*p),
            Scalar::Ext { field, .. } => Field::Extension(*field),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
            Scalar::Ext { c, .. } => c.iter().all(|&x| x == 0),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
            Scalar::Ext { c, .. } => c[0] == 1 && c[1..].iter().all(|&x| x == 0),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rat(q) => Scalar::Rat(q.recip()),
            Scalar::Mod { value, p } => Scalar::Mod {
                value: pow_mod(*value as u64, *p as u64 - 2, *p as u64) as u32,
                p: *p,
            },
            Scalar::Ext { field, .. } => self.pow(field.order() - 2),
        })
    }

    pub fn pow(&self, mut exp: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// The rational value; panics outside characteristic 0.
    pub fn as_rational(&self) -> &BigRational {
        match self {
            Scalar::Rat(q) => q,
            other => panic!("{other} is not a rational"),
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => Scalar::Mod {
                value: ((*a as u64 + *b as u64) % *p as u64) as u32,
                p: *p,
            },
            (Scalar::Ext { c: a, field }, Scalar::Ext { c: b, field: g }) if field == g => {
                let mut c = [0u32; MAX_EXTENSION_DEGREE];
                for i in 0..MAX_EXTENSION_DEGREE {
                    c[i] = ((a[i] as u64 + b[i] as u64) % field.p as u64) as u32;
                }
                Scalar::Ext { c, field: *field }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => Scalar::Mod {
                value: ((*a as u64 * *b as u64) % *p as u64) as u32,
                p: *p,
            },
            (Scalar::Ext { c: a, field }, Scalar::Ext { c: b, field: g }) if field == g => Scalar::Ext {
                c: field.mul(a, b),
                field: *field,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { value, p } => Scalar::Mod {
                value: if *value == 0 { 0 } else { p - value },
                p: *p,
            },
            Scalar::Ext { c, field } => {
                let mut out = [0u32; MAX_EXTENSION_DEGREE];
                for i in 0..MAX_EXTENSION_DEGREE {
                    out[i] = if c[i] == 0 { 0 } else { field.p - c[i] };
                }
                Scalar::Ext { c: out, field: *field }
            }
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
            Scalar::Ext { c, field } => {
                let mut terms = Vec::new();
                for (i, &ci) in c.iter().enumerate().take(field.degree()) {
                    if ci == 0 {
                        continue;
                    }
                    terms.push(match (i, ci) {
                        (0, _) => format!("{ci}"),
                        (1, 1) => "w".to_string(),
                        (1, _) => format!("{ci}*w"),
                        (_, 1) => format!("w^{i}"),
                        _ => format!("{ci}*w^{i}"),
                    });
                }
                if terms.is_empty() {
                    write!(f, "0")
                } else {
                    write!(f, "{}", terms.join("+"))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_reduced() {
        let q = Field::Rational;
        let a = q.parse_scalar("6/-4").unwrap();
        assert_eq!(a.to_string(), "-3/2");
        let b = &a * &q.parse_scalar("2/3").unwrap();
        assert_eq!(b, q.from_i64(-1));
    }

    #[test]
    fn prime_field_inverse_and_parse() {
        let f = Field::prime(101).unwrap();
        let a = f.parse_scalar("-1").unwrap();
        assert_eq!(a, f.from_i64(100));
        let half = f.parse_scalar("1/2").unwrap();
        assert_eq!(&half * &f.from_i64(2), f.one());
        for x in f.elements().into_iter().skip(1) {
            assert!((&x * &x.inv().unwrap()).is_one());
        }
        assert!(f.parse_scalar("1/101").is_err());
    }

    #[test]
    fn composite_modulus_rejected() {
        assert!(Field::prime(91).is_err());
        assert!("fp:15".parse::<Field>().is_err());
        assert_eq!("fp:2".parse::<Field>().unwrap(), Field::Prime(2));
    }

    #[test]
    fn extension_field_is_a_field() {
        for (p, m) in [(2, 2), (3, 2), (2, 3), (5, 2)] {
            let f = Field::galois(p, m).unwrap();
            let elems = f.elements();
            assert_eq!(elems.len() as u64, (p as u64).pow(m as u32));
            for x in elems.iter().skip(1) {
                let inv = x.inv().unwrap();
                assert!((x * &inv).is_one(), "{x} * {inv} in {f}");
            }
            // Frobenius fixes exactly the prime subfield
            let fixed = elems.iter().filter(|x| x.pow(p as u64) == **x).count();
            assert_eq!(fixed, p as usize);
        }
    }

    #[test]
    fn descriptor_round_trip() {
        for s in ["q", "fp:7", "gf:3^2"] {
            assert_eq!(s.parse::<Field>().unwrap().to_string(), s);
        }
    }
}
