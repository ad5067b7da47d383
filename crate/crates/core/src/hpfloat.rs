//! Complex numbers over MPFR floats at a fixed working precision.

use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use rug::float::Constant;
use rug::Float;

use crate::exact::rational_to_float;
use crate::scalar::Scalar;

/// Working precision in bits; about 106 decimal digits.
pub const HP_PREC: u32 = 352;
/// Values below `2^{-ZERO_BITS}` relative to their context count as zero.
const ZERO_BITS: i32 = 300;

#[derive(Clone, PartialEq)]
pub struct HpComplex {
    pub re: Float,
    pub im: Float,
}

impl HpComplex {
    pub fn new(re: Float, im: Float) -> Self {
        Self { re, im }
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        Self { re: Float::with_val(HP_PREC, re), im: Float::with_val(HP_PREC, im) }
    }

    pub fn real(re: Float) -> Self {
        Self { re, im: Float::new(HP_PREC) }
    }

    pub fn pi() -> Float {
        Float::with_val(HP_PREC, Constant::Pi)
    }

    /// `exp(iθ)`.
    pub fn cis(theta: &Float) -> Self {
        let (s, c) = theta.clone().sin_cos(Float::new(HP_PREC));
        Self { re: c, im: s }
    }

    pub fn abs(&self) -> Float {
        Float::with_val(HP_PREC, self.norm_sqr()).sqrt()
    }

    pub fn norm_sqr(&self) -> Float {
        Float::with_val(HP_PREC, self.re.clone().square() + self.im.clone().square())
    }

    pub fn arg(&self) -> Float {
        Float::with_val(HP_PREC, self.im.atan2_ref(&self.re))
    }

    pub fn abs_f64(&self) -> f64 {
        self.abs().to_f64()
    }

    /// `|self - other| / |other|` (absolute when `other` is zero).
    pub fn relative_distance(&self, other: &HpComplex) -> f64 {
        let diff = self.minus(other).abs();
        let base = other.abs();
        if base.is_zero() {
            diff.to_f64()
        } else {
            Float::with_val(HP_PREC, &diff / &base).to_f64()
        }
    }

    pub fn scale(&self, x: &Float) -> Self {
        Self {
            re: Float::with_val(HP_PREC, &self.re * x),
            im: Float::with_val(HP_PREC, &self.im * x),
        }
    }

    /// Fixed-point rendering with `digits` significant decimals per part.
    pub fn to_string_digits(&self, digits: usize) -> String {
        let re = self.re.to_string_radix(10, Some(digits));
        let sign = if self.im.is_sign_negative() { "-" } else { "+" };
        let im = Float::with_val(HP_PREC, self.im.abs_ref()).to_string_radix(10, Some(digits));
        format!("{re} {sign} {im}i")
    }
}

impl fmt::Debug for HpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_digits(20))
    }
}

impl fmt::Display for HpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_digits(30))
    }
}

fn tiny(x: &Float, scale_log2: i32) -> bool {
    if x.is_zero() {
        return true;
    }
    match x.get_exp() {
        Some(e) => e < scale_log2 - ZERO_BITS,
        None => false,
    }
}

impl Scalar for HpComplex {
    const EXACT: bool = false;

    fn zero() -> Self {
        Self { re: Float::new(HP_PREC), im: Float::new(HP_PREC) }
    }

    fn one() -> Self {
        Self::from_f64(1.0, 0.0)
    }

    fn from_rational(q: &BigRational) -> Self {
        Self::real(rational_to_float(q, HP_PREC))
    }

    fn plus(&self, o: &Self) -> Self {
        Self {
            re: Float::with_val(HP_PREC, &self.re + &o.re),
            im: Float::with_val(HP_PREC, &self.im + &o.im),
        }
    }

    fn minus(&self, o: &Self) -> Self {
        Self {
            re: Float::with_val(HP_PREC, &self.re - &o.re),
            im: Float::with_val(HP_PREC, &self.im - &o.im),
        }
    }

    fn times(&self, o: &Self) -> Self {
        let re = Float::with_val(HP_PREC, &self.re * &o.re) - Float::with_val(HP_PREC, &self.im * &o.im);
        let im = Float::with_val(HP_PREC, &self.re * &o.im) + Float::with_val(HP_PREC, &self.im * &o.re);
        Self { re, im }
    }

    fn negated(&self) -> Self {
        Self { re: Float::with_val(HP_PREC, -&self.re), im: Float::with_val(HP_PREC, -&self.im) }
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self {
            re: Float::with_val(HP_PREC, &self.re / &n),
            im: Float::with_val(HP_PREC, -&self.im) / &n,
        })
    }

    fn is_zero(&self) -> bool {
        tiny(&self.re, 0) && tiny(&self.im, 0)
    }

    fn is_negligible(&self, scale: f64) -> bool {
        let s = if scale > 0.0 && scale.is_finite() { scale.log2().ceil() as i32 } else { 0 };
        tiny(&self.re, s) && tiny(&self.im, s)
    }

    fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: Float::with_val(HP_PREC, -&self.im) }
    }

    fn to_complex64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    fn to_hp(&self) -> HpComplex {
        self.clone()
    }

    fn sqrt_prime(p: u64) -> Self {
        Self::real(Float::with_val(HP_PREC, p).sqrt())
    }

    fn root_of_unity(num: i64, den: u64) -> Self {
        let den = den as i64;
        let num = num.rem_euclid(den);
        // exact values keep conjugation and Weyl symmetries exact in floating mode
        if num == 0 {
            return Self::one();
        } else if 4 * num == den {
            return Self::from_f64(0.0, 1.0);
        } else if 2 * num == den {
            return Self::from_f64(-1.0, 0.0);
        } else if 4 * num == 3 * den {
            return Self::from_f64(0.0, -1.0);
        }
        let theta = Self::pi() * Float::with_val(HP_PREC, 2 * num) / Float::with_val(HP_PREC, den);
        Self::cis(&theta)
    }
}
