//! Scalar abstraction shared by every numeric type in the crate.
//!
//! The lattice, charge and phase code is written once against [`Scalar`].
//! Exact work uses [`BigRational`]; `Ratio<i64>` is a fast exact type for
//! small inputs, and `f64` is available for approximate evaluation and for
//! cross-checking the exact paths.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};

/// Complex numbers over a scalar. Over rationals these are Gaussian rationals.
pub type Gaussian<T> = Complex<T>;

/// Field-like scalar used throughout the crate.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + FromStr
    + PartialOrd
    + Signed
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    /// True when arithmetic in this type is exact.
    const EXACT: bool;

    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("every scalar type represents small integers")
    }

    fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_int(num) / Self::from_int(den)
    }

    fn half() -> Self {
        Self::ratio(1, 2)
    }

    fn is_integral(&self) -> bool;

    /// Rescale a nonzero direction by a positive factor into a canonical
    /// representative. Exact types reduce to a primitive integer vector.
    fn normalize_direction(x: Self, y: Self) -> (Self, Self);

    /// Strictly greater than zero. Unlike `Signed::is_positive`, false for
    /// both float zeros.
    fn is_pos(&self) -> bool {
        *self > Self::zero()
    }

    /// Strictly less than zero, false for `-0.0`.
    fn is_neg(&self) -> bool {
        *self < Self::zero()
    }

    fn approx(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn normalize_direction(x: Self, y: Self) -> (Self, Self) {
        let (xn, yn) = primitive_components(
            (x.numer().clone(), x.denom().clone()),
            (y.numer().clone(), y.denom().clone()),
        );
        (Ratio::from_integer(xn), Ratio::from_integer(yn))
    }
}

impl Scalar for Ratio<i64> {
    const EXACT: bool = true;

    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn normalize_direction(x: Self, y: Self) -> (Self, Self) {
        let to_big = |r: &Ratio<i64>| (BigInt::from(*r.numer()), BigInt::from(*r.denom()));
        let (xn, yn) = primitive_components(to_big(&x), to_big(&y));
        let back = |n: BigInt| Ratio::from_integer(n.to_i64().expect("direction overflow"));
        (back(xn), back(yn))
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn is_integral(&self) -> bool {
        self.fract() == 0.0
    }

    fn normalize_direction(x: Self, y: Self) -> (Self, Self) {
        let s = x.abs().max(y.abs());
        // `+ 0.0` turns a negative zero into a positive one
        (x / s + 0.0, y / s + 0.0)
    }
}

/// Clear denominators of (xn/xd, yn/yd) and divide out the content.
fn primitive_components(x: (BigInt, BigInt), y: (BigInt, BigInt)) -> (BigInt, BigInt) {
    let l = x.1.lcm(&y.1);
    let xi = &x.0 * (&l / &x.1);
    let yi = &y.0 * (&l / &y.1);
    let g = xi.gcd(&yi);
    if g.is_zero() {
        return (xi, yi);
    }
    (xi / &g, yi / &g)
}

/// Exact squared modulus of a complex scalar.
pub fn norm_sqr<T: Scalar>(z: &Gaussian<T>) -> T {
    z.re.clone() * z.re.clone() + z.im.clone() * z.im.clone()
}

/// Real scalar embedded as a complex number.
pub fn real<T: Scalar>(x: T) -> Gaussian<T> {
    Complex::new(x, T::zero())
}

pub fn imag_unit<T: Scalar>() -> Gaussian<T> {
    Complex::new(T::zero(), T::one())
}

/// Format a complex scalar as `a+bi`, omitting zero parts.
pub fn format_gaussian<T: Scalar>(z: &Gaussian<T>) -> String {
    let im_text = |v: &T| {
        if v.is_one() {
            "i".to_string()
        } else if (-v.clone()).is_one() {
            "-i".to_string()
        } else {
            format!("{v}i")
        }
    };
    match (z.re.is_zero(), z.im.is_zero()) {
        (_, true) => format!("{}", z.re),
        (true, false) => im_text(&z.im),
        (false, false) => {
            let im = im_text(&z.im);
            if im.starts_with('-') {
                format!("{}{}", z.re, im)
            } else {
                format!("{}+{}", z.re, im)
            }
        }
    }
}

/// Parse an exact rational written as `p/q` or `p`.
pub fn parse_scalar<T: Scalar>(text: &str) -> Option<T> {
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: T = p.trim().parse().ok()?;
        let q: T = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        Some(p / q)
    } else {
        t.parse().ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::ratio(n, d)
    }

    #[test]
    fn direction_normalization_is_primitive() {
        let (x, y) = BigRational::normalize_direction(q(3, 4), q(-9, 2));
        assert_eq!((x, y), (q(1, 1), q(-6, 1)));
        let (x, y) = BigRational::normalize_direction(q(0, 1), q(5, 7));
        assert_eq!((x, y), (q(0, 1), q(1, 1)));
        let (x, y) = Ratio::<i64>::normalize_direction(Ratio::new(4, 1), Ratio::new(6, 1));
        assert_eq!((x, y), (Ratio::from_integer(2), Ratio::from_integer(3)));
    }

    #[test]
    fn gaussian_formatting() {
        assert_eq!(format_gaussian(&Complex::new(q(-1, 1), q(0, 1))), "-1");
        assert_eq!(format_gaussian(&Complex::new(q(0, 1), q(1, 1))), "i");
        assert_eq!(format_gaussian(&Complex::new(q(1, 4), q(-1, 2))), "1/4-1/2i");
        assert_eq!(format_gaussian(&Complex::new(q(2, 1), q(-1, 1))), "2-i");
    }

    #[test]
    fn parses_fractions() {
        assert_eq!(parse_scalar::<BigRational>("-3/6"), Some(q(-1, 2)));
        assert_eq!(parse_scalar::<BigRational>(" 7 "), Some(q(7, 1)));
        assert_eq!(parse_scalar::<BigRational>("1/0"), None);
        assert_eq!(parse_scalar::<f64>("1/4"), Some(0.25));
    }
}
