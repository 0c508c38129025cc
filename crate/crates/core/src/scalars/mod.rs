//! Exact coefficient arithmetic: Gaussian rationals, polynomials over ℚ(i)
//! in declared parameters, and unreduced quotients of such polynomials.

mod gaussian;
mod params;
mod poly;
mod ratio;

pub use gaussian::GaussianRational;
pub use params::{conj_name, Assignment, ParamKind, ParamSpace, ParamSymbol};
pub use poly::{Monomial, PolyDisplay, PolyScalar};
pub use ratio::{solve_linear, RatDisplay, RatScalar};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("symbol `{0}` is already declared")]
    DuplicateSymbol(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("no value assigned to symbol `{0}`")]
    MissingSymbol(String),
    #[error("real symbol `{0}` was assigned a non-real value")]
    ComplexValueForRealSymbol(String),
    #[error("conjugate symbols around `{0}` were assigned non-conjugate values")]
    InconsistentConjugates(String),
    #[error("polynomial has degree {degree} in the unknown, expected at most 1")]
    NotLinear { degree: u32 },
    #[error("coefficient of the unknown is identically zero")]
    ZeroLeadingCoefficient,
    #[error("denominator is zero")]
    ZeroDenominator,
}
