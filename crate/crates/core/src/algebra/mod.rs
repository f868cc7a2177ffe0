//! Exact scalars, polynomials in `t`, and binary forms.

mod field;
mod form;
mod poly;
mod tform;

pub use field::{ExtensionField, Field, Scalar, MAX_EXTENSION_DEGREE};
pub use form::{form_gcd, form_mul, resultant, BinaryForm};
pub use poly::Poly;
pub use tform::TForm;
