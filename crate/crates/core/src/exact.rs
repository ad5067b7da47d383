//! Exact arithmetic in `Q[2^{±1/2}, π^{±1/2}]`.
//!
//! Every Γ_R / Γ_C value at a positive integer is a single monomial
//! `c · 2^{a/2} · π^{b/2}` with `c` rational, so this ring is closed under all
//! the archimedean identities we check. Elements are finite sums of such
//! monomials. The factor `2^{a/2}` is normalised to `a ∈ {0, 1}` with the
//! integral part of the exponent folded into the rational coefficient, which
//! makes the term map a canonical form: equality is structural equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::sync::LazyLock;
use rug::ops::Pow;
use rug::Float;

use crate::error::{domain, Error, Result};

/// A half-integer `n/2`, stored as `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub const fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// Largest integer not exceeding the value.
    pub fn floor(self) -> i64 {
        self.0.div_euclid(2)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Exponent pair `(e2, epi)` of a monomial `2^{e2} π^{epi}`.
type Key = (HalfInt, HalfInt);

/// Finite sum of monomials `c · 2^{e2} · π^{epi}` with rational `c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ExactNumber {
    terms: BTreeMap<Key, BigRational>,
}

fn pow2(e: i64) -> BigRational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// Splits `c · 2^{e2}` into `(c · 2^{floor(e2)}, e2 - floor(e2))`.
fn normalise(coeff: BigRational, e2: HalfInt) -> (BigRational, HalfInt) {
    let whole = e2.floor();
    (coeff * pow2(whole), e2 - HalfInt::from_int(whole))
}

impl ExactNumber {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::monomial(q, HalfInt::ZERO, HalfInt::ZERO)
    }

    pub fn monomial(coeff: BigRational, e2: HalfInt, epi: HalfInt) -> Self {
        let mut out = Self::zero();
        out.add_term(coeff, e2, epi);
        out
    }

    pub fn pi_pow(epi: HalfInt) -> Self {
        Self::monomial(BigRational::one(), HalfInt::ZERO, epi)
    }

    pub fn two_pow(e2: HalfInt) -> Self {
        Self::monomial(BigRational::one(), e2, HalfInt::ZERO)
    }

    fn add_term(&mut self, coeff: BigRational, e2: HalfInt, epi: HalfInt) {
        if coeff.is_zero() {
            return;
        }
        let (coeff, e2) = normalise(coeff, e2);
        let key = (e2, epi);
        let sum = match self.terms.remove(&key) {
            Some(existing) => existing + coeff,
            None => coeff,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterates `(coefficient, e2, epi)` in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&BigRational, HalfInt, HalfInt)> {
        self.terms.iter().map(|((e2, epi), c)| (c, *e2, *epi))
    }

    /// The single term of a monomial, or `None` for zero and for sums.
    pub fn as_monomial(&self) -> Option<(&BigRational, HalfInt, HalfInt)> {
        if self.terms.len() == 1 {
            self.terms().next()
        } else {
            None
        }
    }

    /// The rational value when the number lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        match self.as_monomial() {
            Some((c, e2, epi)) if e2 == HalfInt::ZERO && epi == HalfInt::ZERO => Some(c.clone()),
            _ => None,
        }
    }

    pub fn reciprocal(&self) -> Result<Self> {
        match self.as_monomial() {
            Some((c, e2, epi)) => Ok(Self::monomial(c.recip(), -e2, -epi)),
            None if self.is_zero() => Err(Error::NotInvertible("zero".into())),
            None => Err(Error::NotInvertible(format!(
                "{} has {} terms; only monomials are invertible",
                self,
                self.num_terms()
            ))),
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.reciprocal()?)
    }

    /// Integer power; negative exponents require a monomial.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.reciprocal()? } else { self.clone() };
        let mut acc = Self::one();
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            k >>= 1;
        }
        Ok(acc)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let mut out = Self::zero();
        for (c, e2, epi) in self.terms() {
            out.add_term(c * q, e2, epi);
        }
        out
    }

    /// Numeric value with relative error below `10^{-digits}`.
    pub fn float_value(&self, digits: u32) -> Float {
        let prec = digits_to_bits(digits);
        let work = prec + 64;
        let sqrt2 = Float::with_val(work, 2).sqrt();
        let sqrt_pi = Float::with_val(work, rug::float::Constant::Pi).sqrt();
        let mut acc = Float::with_val(work, 0);
        for (c, e2, epi) in self.terms() {
            let mut t = rational_to_float(c, work);
            t *= sqrt2.clone().pow(e2.twice() as i32);
            t *= sqrt_pi.clone().pow(epi.twice() as i32);
            acc += t;
        }
        Float::with_val(prec, acc)
    }

    pub fn to_f64(&self) -> f64 {
        self.float_value(20).to_f64()
    }
}

pub(crate) fn digits_to_bits(digits: u32) -> u32 {
    // log2(10) < 3.33
    (digits * 333).div_ceil(100) + 8
}

pub(crate) fn rational_to_float(q: &BigRational, prec: u32) -> Float {
    let num = Float::with_val(prec, Float::parse(q.numer().to_string()).expect("integer literal"));
    let den = Float::with_val(prec, Float::parse(q.denom().to_string()).expect("integer literal"));
    num / den
}

impl fmt::Display for ExactNumber {
    /// Canonical rendering `c * 2^(a/2) * pi^(b/2)`, terms joined by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (c, e2, epi) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{} * 2^({}/2) * pi^({}/2)", c, e2.twice(), epi.twice())?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a ExactNumber> for &'a ExactNumber {
    type Output = ExactNumber;
    fn add(self, rhs: &ExactNumber) -> ExactNumber {
        let mut out = self.clone();
        for (c, e2, epi) in rhs.terms() {
            out.add_term(c.clone(), e2, epi);
        }
        out
    }
}

impl<'a> Sub<&'a ExactNumber> for &'a ExactNumber {
    type Output = ExactNumber;
    fn sub(self, rhs: &ExactNumber) -> ExactNumber {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a ExactNumber> for &'a ExactNumber {
    type Output = ExactNumber;
    fn mul(self, rhs: &ExactNumber) -> ExactNumber {
        let mut out = ExactNumber::zero();
        for (a, a2, api) in self.terms() {
            for (b, b2, bpi) in rhs.terms() {
                out.add_term(a * b, a2 + b2, api + bpi);
            }
        }
        out
    }
}

impl Neg for &ExactNumber {
    type Output = ExactNumber;
    fn neg(self) -> ExactNumber {
        ExactNumber {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for ExactNumber {
            type Output = ExactNumber;
            fn $method(self, rhs: ExactNumber) -> ExactNumber {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a ExactNumber> for ExactNumber {
            type Output = ExactNumber;
            fn $method(self, rhs: &ExactNumber) -> ExactNumber {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ExactNumber {
    type Output = ExactNumber;
    fn neg(self) -> ExactNumber {
        -&self
    }
}

impl std::iter::Product for ExactNumber {
    fn product<I: Iterator<Item = ExactNumber>>(iter: I) -> Self {
        iter.fold(ExactNumber::one(), |acc, x| &acc * &x)
    }
}

impl std::iter::Sum for ExactNumber {
    fn sum<I: Iterator<Item = ExactNumber>>(iter: I) -> Self {
        iter.fold(ExactNumber::zero(), |acc, x| &acc + &x)
    }
}

static BERNOULLI: LazyLock<Mutex<Vec<BigRational>>> =
    LazyLock::new(|| Mutex::new(vec![BigRational::one()]));

fn binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Bernoulli number `B_n` (with `B_1 = -1/2`, unused here) for even `n ≥ 2`.
pub fn bernoulli(n: i64) -> Result<BigRational> {
    if n < 2 || n % 2 != 0 {
        return domain(format!("bernoulli: n = {n} must be even and at least 2"));
    }
    let n = n as usize;
    let mut memo = BERNOULLI.lock().unwrap_or_else(|e| e.into_inner());
    while memo.len() <= n {
        // sum_{k=0}^{m} C(m+1, k) B_k = 0
        let m = memo.len();
        let s: BigRational = memo
            .iter()
            .enumerate()
            .map(|(k, b)| b * BigRational::from_integer(binomial(m as u64 + 1, k as u64)))
            .sum();
        let next = -s / BigRational::from_integer(BigInt::from(m + 1));
        memo.push(next);
    }
    Ok(memo[n].clone())
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `ζ(n) = (-1)^{n/2+1} B_n (2π)^n / (2 · n!)` for even `n ≥ 2`.
pub fn zeta_even(n: i64) -> Result<ExactNumber> {
    let b = bernoulli(n).map_err(|_| Error::Domain(format!("zeta_even: n = {n} must be even and at least 2")))?;
    let sign = if (n / 2) % 2 == 1 { 1 } else { -1 };
    let coeff = b * BigRational::from_integer(sign.into())
        / BigRational::from_integer(factorial(n as u64) * BigInt::from(2));
    Ok(ExactNumber::monomial(coeff, HalfInt::from_int(n), HalfInt::from_int(n)))
}

/// Exact rational `p^e` for a possibly negative integer exponent.
pub fn rational_pow(base: u64, e: i64) -> BigRational {
    let p = num_traits::pow(BigInt::from(base), e.unsigned_abs() as usize);
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// `true` when the rational is a perfect integer and fits in `i64`.
pub fn rational_to_i64(q: &BigRational) -> Option<i64> {
    if q.denom().is_one() {
        q.numer().to_i64()
    } else {
        None
    }
}
