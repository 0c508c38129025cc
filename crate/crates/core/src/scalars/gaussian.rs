use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// An element of the field ℚ(i): exact rational real and imaginary parts.
///
/// Both parts are kept as [`BigRational`], which is always reduced to lowest
/// terms with a positive denominator, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_integer(n: i64) -> Self {
        GaussianRational::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(re: BigRational) -> Self {
        GaussianRational {
            re,
            im: BigRational::zero(),
        }
    }

    /// `p/q` as a real Gaussian rational. Panics when `q == 0`.
    pub fn from_fraction(p: i64, q: i64) -> Self {
        GaussianRational::from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn i() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    /// The scalar `i/2` carried by every fundamental form.
    pub fn half_i() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::new(BigInt::from(1), BigInt::from(2)),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// |z|² = z·z̄, always a nonnegative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        let norm = self.norm_sqr();
        if norm.is_zero() {
            return None;
        }
        Some(GaussianRational {
            re: &self.re / &norm,
            im: -(&self.im / &norm),
        })
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = GaussianRational::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational::default()
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational::from_rational(BigRational::one())
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        GaussianRational::from_integer(n)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(r: BigRational) -> Self {
        GaussianRational::from_rational(r)
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;

    fn add(self, other: Self) -> GaussianRational {
        GaussianRational {
            re: &self.re + &other.re,
            im: &self.im + &other.im,
        }
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;

    fn sub(self, other: Self) -> GaussianRational {
        GaussianRational {
            re: &self.re - &other.re,
            im: &self.im - &other.im,
        }
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;

    fn mul(self, other: Self) -> GaussianRational {
        GaussianRational {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }
}

impl Div for &GaussianRational {
    type Output = GaussianRational;

    /// Panics on division by zero, like the primitive numeric types.
    fn div(self, other: Self) -> GaussianRational {
        let inv = other.inv().expect("division of a Gaussian rational by zero");
        self * &inv
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;

    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, other: GaussianRational) -> GaussianRational {
                (&self).$method(&other)
            }
        }
        impl $trait<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, other: &GaussianRational) -> GaussianRational {
                (&self).$method(other)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;

    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, other: &GaussianRational) {
        self.re += &other.re;
        self.im += &other.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, other: &GaussianRational) {
        self.re -= &other.re;
        self.im -= &other.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, other: &GaussianRational) {
        *self = &*self * other;
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// The imaginary part as a literal without sign: `i`, `3i`, `(1/2)i`.
fn fmt_imaginary(abs_im: &BigRational) -> String {
    if abs_im.is_one() {
        "i".to_string()
    } else if abs_im.is_integer() {
        format!("{}i", abs_im.numer())
    } else {
        format!("({}/{})i", abs_im.numer(), abs_im.denom())
    }
}

/// Canonical literal form shared with the input language: `2`, `-1/2`, `3i`,
/// `-(1/2)i`, `(2-3i)`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => {
                let sign = if self.im.is_negative() { "-" } else { "" };
                write!(f, "{sign}{}", fmt_imaginary(&self.im.abs()))
            }
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(
                    f,
                    "({}{sign}{})",
                    fmt_rational(&self.re),
                    fmt_imaginary(&self.im.abs())
                )
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::new(
            BigRational::from_integer(re.into()),
            BigRational::from_integer(im.into()),
        )
    }

    #[test]
    fn product_with_conjugate_is_norm() {
        assert_eq!(g(1, 1) * g(1, -1), g(2, 0));
        assert_eq!(g(1, 1).norm_sqr(), BigRational::from_integer(2.into()));
    }

    #[test]
    fn inverse_and_division() {
        let z = g(3, -4);
        assert_eq!(&z * &z.inv().unwrap(), GaussianRational::one());
        assert!(GaussianRational::zero().inv().is_none());
        assert_eq!(g(2, 0) / g(0, 1), g(0, -2));
    }

    #[test]
    fn half_i_to_the_fourth() {
        assert_eq!(
            GaussianRational::half_i().pow(4),
            GaussianRational::from_fraction(1, 16)
        );
    }

    #[test]
    fn display_literals() {
        assert_eq!(g(2, -3).to_string(), "(2-3i)");
        assert_eq!(g(0, 1).to_string(), "i");
        assert_eq!(g(0, -1).to_string(), "-i");
        assert_eq!(GaussianRational::half_i().to_string(), "(1/2)i");
        assert_eq!((-GaussianRational::half_i()).to_string(), "-(1/2)i");
        assert_eq!(GaussianRational::from_fraction(-3, 6).to_string(), "-1/2");
        assert_eq!(g(1, 1).to_string(), "(1+i)");
    }
}
