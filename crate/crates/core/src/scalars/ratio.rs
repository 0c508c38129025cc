use std::fmt;

use num::{One, Zero};

use super::{Assignment, GaussianRational, ParamSpace, PolyScalar, ScalarError};

/// A quotient of polynomials. Never reduced; equality is by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RatScalar {
    numerator: PolyScalar,
    denominator: PolyScalar,
}

impl RatScalar {
    pub fn new(numerator: PolyScalar, denominator: PolyScalar) -> Result<Self, ScalarError> {
        if denominator.is_zero() {
            return Err(ScalarError::ZeroDenominator);
        }
        Ok(RatScalar {
            numerator,
            denominator,
        })
    }

    pub fn from_poly(p: PolyScalar) -> Self {
        RatScalar {
            numerator: p,
            denominator: PolyScalar::one(),
        }
    }

    pub fn numerator(&self) -> &PolyScalar {
        &self.numerator
    }

    pub fn denominator(&self) -> &PolyScalar {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// The exact value when both parts are constants.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        let n = self.numerator.as_constant()?;
        let d = self.denominator.as_constant()?;
        Some(&n / &d)
    }

    pub fn evaluate(&self, assignment: &Assignment) -> Result<GaussianRational, ScalarError> {
        let d = self.denominator.substitute(assignment)?;
        if d.is_zero() {
            return Err(ScalarError::ZeroDenominator);
        }
        Ok(&self.numerator.substitute(assignment)? / &d)
    }

    pub fn scale(&self, c: &GaussianRational) -> RatScalar {
        RatScalar {
            numerator: self.numerator.scale(c),
            denominator: self.denominator.clone(),
        }
    }

    pub fn display<'a>(&'a self, params: &'a ParamSpace) -> RatDisplay<'a> {
        RatDisplay { r: self, params }
    }
}

impl PartialEq for RatScalar {
    fn eq(&self, other: &Self) -> bool {
        &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }
}

impl Eq for RatScalar {}

pub struct RatDisplay<'a> {
    r: &'a RatScalar,
    params: &'a ParamSpace,
}

impl fmt::Display for RatDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.r.as_constant() {
            return write!(f, "{c}");
        }
        let num = self.r.numerator.display(self.params).to_string();
        if self.r.denominator.is_one() {
            return write!(f, "{num}");
        }
        let den = self.r.denominator.display(self.params).to_string();
        write!(f, "({num})/({den})")
    }
}

/// Root of `p` viewed as a polynomial of degree at most one in symbol `x`.
pub fn solve_linear(p: &PolyScalar, x: usize) -> Result<RatScalar, ScalarError> {
    let coeffs = p.coefficients_in(x);
    if coeffs.len() > 2 {
        return Err(ScalarError::NotLinear {
            degree: coeffs.len() as u32 - 1,
        });
    }
    match coeffs.as_slice() {
        [_, lead] if !lead.is_zero() => RatScalar::new(-&coeffs[0], lead.clone()),
        _ => Err(ScalarError::ZeroLeadingCoefficient),
    }
}
