//! Exact complex scalars: a rational real part plus a rational imaginary part.
//!
//! Everything in this crate bottoms out in these numbers, so the rule here is
//! strict: no floating point anywhere, and no normalisation beyond what
//! [`BigRational`] already guarantees (lowest terms, positive denominator).
//! Equality is therefore plain structural equality.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use alloc::format;
use alloc::string::String;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A complex number `re + im*i` with exact rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    /// Builds `re + im*i`.
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    /// The integer `v` as a scalar.
    pub fn from_int(v: i64) -> Self {
        Self::real(BigRational::from_integer(v.into()))
    }

    /// The rational `num/den` as a scalar.
    ///
    /// Panics if `den == 0`; this is a construction helper, not a parser.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(num.into(), den.into()))
    }

    /// A purely real scalar.
    pub fn real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    /// A purely imaginary scalar `im*i`.
    pub fn imaginary(im: BigRational) -> Self {
        Self::new(BigRational::zero(), im)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::imaginary(BigRational::one())
    }

    /// `-i`, which shows up constantly in the `-i * d/dφ` combinations.
    pub fn minus_i() -> Self {
        Self::imaginary(-BigRational::one())
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `re^2 + im^2`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse, or `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    /// True when the imaginary part vanishes.
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> Self {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::from_int(1)
    }
}

/// Renders the magnitude of an imaginary part, e.g. `i`, `2i`, `3/2i`.
fn imag_str(mag: &BigRational) -> String {
    if mag.is_one() {
        String::from("i")
    } else {
        format!("{mag}i")
    }
}

impl fmt::Display for GaussianRational {
    /// Canonical forms: `0`, `-3/2`, `i`, `-2i`, `1+2i`, `1-2i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return if self.im.is_negative() {
                write!(f, "-{}", imag_str(&-self.im.clone()))
            } else {
                write!(f, "{}", imag_str(&self.im))
            };
        }
        if self.im.is_negative() {
            write!(f, "{}-{}", self.re, imag_str(&-self.im.clone()))
        } else {
            write!(f, "{}+{}", self.re, imag_str(&self.im))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn g(re: (i64, i64), im: (i64, i64)) -> GaussianRational {
        GaussianRational::new(
            BigRational::new(re.0.into(), re.1.into()),
            BigRational::new(im.0.into(), im.1.into()),
        )
    }

    #[test]
    fn product_mixes_parts() {
        // (1+2i)(3-i) = 5+5i
        let a = g((1, 1), (2, 1));
        let b = g((3, 1), (-1, 1));
        assert_eq!(&a * &b, g((5, 1), (5, 1)));
    }

    #[test]
    fn inverse_of_one_plus_i() {
        let a = g((1, 1), (1, 1));
        let inv = a.inv().unwrap();
        assert_eq!(inv, g((1, 2), (-1, 2)));
        assert!((&a * &inv).is_one());
    }

    #[test]
    fn inverse_of_zero_is_none() {
        assert!(GaussianRational::zero().inv().is_none());
    }

    #[test]
    fn conjugation_is_multiplicative() {
        let a = g((2, 3), (-1, 2));
        let b = g((-4, 1), (5, 7));
        assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn i_squares_to_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, GaussianRational::from_int(-1));
        assert_eq!(GaussianRational::minus_i(), -i);
    }

    #[test]
    fn display_forms() {
        let cases = vec![
            (GaussianRational::zero(), "0"),
            (GaussianRational::from_int(1), "1"),
            (GaussianRational::from_ratio(-3, 2), "-3/2"),
            (GaussianRational::i(), "i"),
            (GaussianRational::minus_i(), "-i"),
            (g((0, 1), (2, 1)), "2i"),
            (g((0, 1), (-1, 2)), "-1/2i"),
            (g((1, 1), (2, 1)), "1+2i"),
            (g((1, 1), (-2, 1)), "1-2i"),
            (g((-1, 3), (1, 1)), "-1/3+i"),
        ];
        for (value, expected) in cases {
            assert_eq!(value.to_string(), expected);
        }
    }
}
