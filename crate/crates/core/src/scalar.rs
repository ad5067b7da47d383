//! Coefficient field abstraction shared by the local factors and the
//! spherical-function evaluator.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use crate::hpfloat::HpComplex;

pub trait Scalar: Clone + fmt::Debug + Send + Sync + 'static {
    /// True when equality and zero tests are exact.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(q: &BigRational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    /// `None` for zero (or, in floating mode, for values indistinguishable from zero).
    fn inverse(&self) -> Option<Self>;
    /// Exact zero test in exact mode; `|x| < 2^{-prec+margin}` in floating mode.
    fn is_zero(&self) -> bool;
    /// Zero relative to a magnitude `scale` (exact mode ignores `scale`).
    fn is_negligible(&self, scale: f64) -> bool;
    fn conj(&self) -> Self;
    fn to_complex64(&self) -> Complex64;
    fn to_hp(&self) -> HpComplex;

    /// Positive square root of a prime.
    fn sqrt_prime(p: u64) -> Self;
    /// `exp(2πi · num/den)`.
    fn root_of_unity(num: i64, den: u64) -> Self;

    fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.times(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.times(&sq);
            }
        }
        Some(acc)
    }

    /// `p^{e/2}` for an integer `e`.
    fn prime_half_power(p: u64, e: i64) -> Self {
        let whole = BigRational::from_integer(BigInt::from(p));
        let base = Self::from_rational(&whole).pow(e.div_euclid(2)).expect("p ≠ 0");
        if e.rem_euclid(2) == 1 {
            base.times(&Self::sqrt_prime(p))
        } else {
            base
        }
    }

    fn sum<'a, I: IntoIterator<Item = &'a Self>>(items: I) -> Self {
        items.into_iter().fold(Self::zero(), |acc, x| acc.plus(x))
    }
}
