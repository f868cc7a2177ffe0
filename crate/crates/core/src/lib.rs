//! Exact computations with pairs of binary forms `(F, G)` of degrees `d < e`.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: exact fields, univariate polynomials in a parameter `t`,
//!   binary forms, gcd and resultant.
//! * [`linalg`] and [`subspace`]: dense exact linear algebra and canonical
//!   subspaces of `V_l`, the space of degree `l` forms.
//! * [`ideal`]: graded ideals on a degree window, Hilbert functions, the
//!   boundary construction [`ideal::psi`] and its inverse.
//! * [`strata`]: points of the parameter space, gcd strata, the
//!   multiplication maps and their differential.
//! * [`limits`]: flat limits of one-parameter families.
//! * [`pic`]: the integer Picard lattice and its restriction maps.
//! * [`curves`]: complete curves avoiding the resultant divisor.
//! * [`invariants`]: invariant slices of the additive action `G -> G + HF`.
//! * [`verify`]: the seeded self-check battery used by the command line tool.
//!
//! ```
//! use binform::{parse_form, resultant, Field};
//!
//! let q = Field::Rational;
//! let f = parse_form("X0^2 - X1^2", q, None).unwrap();
//! let g = parse_form("X0 - X1", q, None).unwrap();
//! assert!(resultant(&f, &g).unwrap().is_zero());
//! ```

pub mod algebra;
pub mod curves;
pub mod ideal;
pub mod invariants;
pub mod json;
pub mod limits;
pub mod linalg;
pub mod parse;
pub mod pic;
pub mod sample;
pub mod strata;
pub mod subspace;
pub mod verify;

pub use algebra::{form_gcd, form_mul, resultant, BinaryForm, ExtensionField, Field, Poly, Scalar, TForm};
pub use curves::{explicit_curve, frobenius_curve, mdegree, verify_complete_curve, CurveCertificate};
pub use ideal::{model_hf, psi, psi_inverse, GradedIdeal};
pub use limits::{flat_limit, limit_param_point, limit_vs_psi, Chart, TFamily};
pub use parse::{parse_form, parse_tform};
pub use pic::PicClass;
pub use strata::{canonicalize, ParamPoint};
pub use subspace::Subspace;

/// Errors raised by the library. Messages are meant for end users of the
/// command line tool.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("undefined gcd")]
    UndefinedGcd,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("zero class: {0}")]
    ZeroClass(String),
    #[error("not a Hilbert-scheme point: {0}")]
    NotHilbPoint(String),
    #[error("interior point: the equations have no common factor")]
    InteriorPoint,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("non-flat input: {0}")]
    NonFlat(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("derivation criterion invalid in char {0}")]
    PositiveCharacteristic(u32),
}

pub type Result<T> = std::result::Result<T, Error>;

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/forms.md")]
    mod forms {}
    #[doc = include_str!("../../../book/src/subspaces.md")]
    mod subspaces {}
    #[doc = include_str!("../../../book/src/hilbert.md")]
    mod hilbert {}
    #[doc = include_str!("../../../book/src/strata.md")]
    mod strata {}
    #[doc = include_str!("../../../book/src/limits.md")]
    mod limits {}
    #[doc = include_str!("../../../book/src/picard.md")]
    mod picard {}
    #[doc = include_str!("../../../book/src/curves.md")]
    mod curves {}
    #[doc = include_str!("../../../book/src/invariants.md")]
    mod invariants {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
