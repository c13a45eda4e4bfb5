//! Gaussian rational numbers `re + i·im` with exact arithmetic.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An element of `Q(i)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn gaussian(re: i64, im: i64) -> Self {
        Scalar::new(
            BigRational::from_integer(BigInt::from(re)),
            BigRational::from_integer(BigInt::from(im)),
        )
    }

    pub fn from_real(re: BigRational) -> Self {
        Scalar::new(re, BigRational::zero())
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Scalar::one(),
            1 => Scalar::i(),
            2 => Scalar::from_int(-1),
            _ => Scalar::gaussian(0, -1),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|^2`, always real and nonnegative.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(Scalar::new(&self.re / &n, -(&self.im / &n)))
    }

    /// Sign of a real scalar; `None` if the imaginary part is nonzero.
    pub fn real_sign(&self) -> Option<std::cmp::Ordering> {
        if !self.is_real() {
            return None;
        }
        Some(if self.re.is_positive() {
            std::cmp::Ordering::Greater
        } else if self.re.is_negative() {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Equal
        })
    }

    pub fn is_positive_real(&self) -> bool {
        self.is_real() && self.re.is_positive()
    }
}

/// Formats a rational as `a` or `a/b` with `b > 0`, reduced.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `a` or `a/b`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", format_rational(&self.re))
        } else if self.re.is_zero() {
            write!(f, "{}i", format_rational(&self.im))
        } else {
            let sign = if self.im.is_negative() { "-" } else { "+" };
            write!(
                f,
                "{}{}{}i",
                format_rational(&self.re),
                sign,
                format_rational(&self.im.abs())
            )
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Scalar::from_real(&self.re * &rhs.re);
        }
        Scalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::inv`] for a fallible version.
    fn div(self, rhs: &Scalar) -> Scalar {
        if rhs.im.is_zero() {
            assert!(!rhs.re.is_zero(), "division by zero");
            return Scalar::new(&self.re / &rhs.re, &self.im / &rhs.re);
        }
        self * &rhs.inv().expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re, -self.im)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re.clone(), -self.im.clone())
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        let i = Scalar::i();
        assert_eq!(&i * &i, Scalar::from_int(-1));
        assert_eq!(Scalar::i_pow(-1), Scalar::gaussian(0, -1));
        assert_eq!(Scalar::i_pow(6), Scalar::from_int(-1));
    }

    #[test]
    fn conj_is_involution() {
        let z = Scalar::new(parse_rational("3/4").unwrap(), parse_rational("-2/7").unwrap());
        assert_eq!(z.conj().conj(), z);
        assert!(!z.is_real());
        assert!((&z * &z.conj()).is_real());
    }

    #[test]
    fn division_roundtrip() {
        let a = Scalar::gaussian(2, 1);
        let b = Scalar::gaussian(-1, 3);
        assert_eq!(&(&a / &b) * &b, a);
        assert!(Scalar::zero().inv().is_err());
    }

    #[test]
    fn rational_text_form() {
        assert_eq!(format_rational(&parse_rational("6/-4").unwrap()), "-3/2");
        assert_eq!(format_rational(&parse_rational("8/4").unwrap()), "2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
