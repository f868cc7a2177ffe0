//! JSON encodings used by the command line tool.
//!
//! * form: `{"degree": l, "coeffs": ["c0", ..., "cl"]}`, entry `j` the
//!   coefficient of `X0^(l-j) X1^j`, each a decimal or `"num/den"` string;
//! * ideal: `{"d": d, "e": e, "layers": [[form, ...], ...]}` listing a basis
//!   of each layer from degree 0 up;
//! * family: `{"d": d, "e": e, "F": tform, "G": tform}` where a `tform` is
//!   either a polynomial string such as `"X0^2 + t*X0*X1"` or
//!   `{"degree": l, "coeffs": ["1 + t", ...]}` with coefficients in `t`.
//!
//! Decoding errors name the offending field as a JSON pointer.

use serde::{Deserialize, Serialize};

use crate::algebra::{BinaryForm, Field, Poly, TForm};
use crate::ideal::GradedIdeal;
use crate::limits::TFamily;
use crate::parse::{parse_tform, parse_tpoly};
use crate::strata::ParamPoint;
use crate::subspace::Subspace;
use crate::{Error, Result};

fn at(pointer: &str, err: Error) -> Error {
    match err {
        Error::Parse(msg) => Error::Parse(format!("{pointer}: {msg}")),
        other => Error::Parse(format!("{pointer}: {other}")),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormJson {
    pub degree: usize,
    pub coeffs: Vec<String>,
}

impl FormJson {
    pub fn from_form(f: &BinaryForm) -> FormJson {
        FormJson {
            degree: f.degree(),
            coeffs: f.coeffs().iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn to_form(&self, field: Field, pointer: &str) -> Result<BinaryForm> {
        if self.coeffs.len() != self.degree + 1 {
            return Err(at(
                &format!("{pointer}/coeffs"),
                Error::DegreeMismatch(format!(
                    "{} coefficients for degree {}",
                    self.coeffs.len(),
                    self.degree
                )),
            ));
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| field.parse_scalar(c).map_err(|e| at(&format!("{pointer}/coeffs/{j}"), e)))
            .collect::<Result<Vec<_>>>()?;
        Ok(BinaryForm::new(field, coeffs))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub d: usize,
    pub e: usize,
    pub layers: Vec<Vec<FormJson>>,
}

impl IdealJson {
    pub fn from_ideal(i: &GradedIdeal) -> IdealJson {
        IdealJson {
            d: i.d(),
            e: i.e(),
            layers: i
                .layers()
                .iter()
                .map(|s| s.basis().iter().map(FormJson::from_form).collect())
                .collect(),
        }
    }

    pub fn to_ideal(&self, field: Field) -> Result<GradedIdeal> {
        let layers = self
            .layers
            .iter()
            .enumerate()
            .map(|(l, forms)| {
                let forms = forms
                    .iter()
                    .enumerate()
                    .map(|(k, f)| f.to_form(field, &format!("/layers/{l}/{k}")))
                    .collect::<Result<Vec<_>>>()?;
                Subspace::span(field, l, &forms).map_err(|e| at(&format!("/layers/{l}"), e))
            })
            .collect::<Result<Vec<_>>>()?;
        GradedIdeal::new(self.d, self.e, layers)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TFormJson {
    Text(String),
    Coeffs { degree: usize, coeffs: Vec<String> },
}

impl TFormJson {
    pub fn from_tform(f: &TForm) -> TFormJson {
        TFormJson::Coeffs {
            degree: f.degree(),
            coeffs: f.coeffs().iter().map(Poly::to_string).collect(),
        }
    }

    pub fn to_tform(&self, field: Field, degree: usize, pointer: &str) -> Result<TForm> {
        match self {
            TFormJson::Text(s) => parse_tform(s, field, Some(degree)).map_err(|e| at(pointer, e)),
            TFormJson::Coeffs { degree: l, coeffs } => {
                if *l != degree || coeffs.len() != degree + 1 {
                    return Err(at(
                        pointer,
                        Error::DegreeMismatch(format!(
                            "expected {} coefficients of a degree {degree} form",
                            degree + 1
                        )),
                    ));
                }
                let polys = coeffs
                    .iter()
                    .enumerate()
                    .map(|(j, c)| parse_tpoly(c, field).map_err(|e| at(&format!("{pointer}/coeffs/{j}"), e)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(TForm::new(field, polys))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub d: usize,
    pub e: usize,
    #[serde(rename = "F")]
    pub f: TFormJson,
    #[serde(rename = "G")]
    pub g: TFormJson,
}

impl FamilyJson {
    pub fn from_family(fam: &TFamily) -> FamilyJson {
        FamilyJson {
            d: fam.d(),
            e: fam.e(),
            f: TFormJson::from_tform(fam.f()),
            g: TFormJson::from_tform(fam.g()),
        }
    }

    pub fn to_family(&self, field: Field) -> Result<TFamily> {
        let f = self.f.to_tform(field, self.d, "/F")?;
        let g = self.g.to_tform(field, self.e, "/G")?;
        TFamily::new(f, g)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointJson {
    pub d: usize,
    pub e: usize,
    #[serde(rename = "F")]
    pub f: FormJson,
    #[serde(rename = "G")]
    pub g: FormJson,
    pub text: String,
}

impl PointJson {
    pub fn from_point(p: &ParamPoint) -> PointJson {
        PointJson {
            d: p.d(),
            e: p.e(),
            f: FormJson::from_form(p.f()),
            g: FormJson::from_form(p.g()),
            text: format!("[{}, {}]", p.f(), p.g()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn form_round_trip() {
        let q = Field::Rational;
        let f = BinaryForm::new(q, vec![q.parse_scalar("1/2").unwrap(), q.zero(), q.from_i64(-3)]);
        let js = serde_json::to_string(&FormJson::from_form(&f)).unwrap();
        assert_eq!(js, r#"{"degree":2,"coeffs":["1/2","0","-3"]}"#);
        let back: FormJson = serde_json::from_str(&js).unwrap();
        assert_eq!(back.to_form(q, "").unwrap(), f);
    }

    #[test]
    fn error_pointers() {
        let bad: FormJson = serde_json::from_str(r#"{"degree":1,"coeffs":["1","x"]}"#).unwrap();
        let err = bad.to_form(Field::Rational, "/F").unwrap_err().to_string();
        assert!(err.contains("/F/coeffs/1"), "{err}");
    }

    #[test]
    fn family_both_shapes() {
        let q = Field::Rational;
        let text = r#"{"d":1,"e":2,"F":"X0 + t*X1","G":{"degree":2,"coeffs":["0","1","0"]}}"#;
        let fam: FamilyJson = serde_json::from_str(text).unwrap();
        let fam = fam.to_family(q).unwrap();
        assert_eq!(fam.eval(&q.zero()).0, BinaryForm::from_i64s(q, &[1, 0]));
        let again = FamilyJson::from_family(&fam).to_family(q).unwrap();
        assert_eq!(again, fam);
    }
}
