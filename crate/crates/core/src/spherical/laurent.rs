//! Truncated Laurent series in `ε = t - 1` with coefficients in a [`Scalar`]
//! field; the deformation variable of degenerate Satake parameters.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `Σ_{k=0}^{len-1} coeffs[k] ε^{val+k} + O(ε^{val+len})`.
#[derive(Clone, Debug)]
pub struct Laurent<S> {
    val: i64,
    coeffs: Vec<S>,
}

impl<S: Scalar> Laurent<S> {
    pub fn constant(c: S, len: usize) -> Self {
        let mut coeffs = vec![S::zero(); len];
        coeffs[0] = c;
        Self { val: 0, coeffs }
    }

    pub fn zero(val: i64, len: usize) -> Self {
        Self { val, coeffs: vec![S::zero(); len] }
    }

    /// `(1 + ε)^e` for any integer `e`.
    pub fn binomial(e: i64, len: usize) -> Self {
        let mut coeffs = Vec::with_capacity(len);
        let mut c = BigRational::one();
        for k in 0..len as i64 {
            coeffs.push(S::from_rational(&c));
            c = c * BigRational::from_integer(BigInt::from(e - k)) / BigRational::from_integer(BigInt::from(k + 1));
        }
        Self { val: 0, coeffs }
    }

    pub fn valuation(&self) -> i64 {
        self.val
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// First exponent not represented.
    pub fn precision(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }

    /// Coefficient of `ε^k`, `None` beyond the precision.
    pub fn coefficient(&self, k: i64) -> Option<S> {
        if k >= self.precision() {
            None
        } else if k < self.val {
            Some(S::zero())
        } else {
            Some(self.coeffs[(k - self.val) as usize].clone())
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        Self { val: self.val, coeffs: self.coeffs.iter().map(|x| x.times(c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let len = self.len().min(other.len());
        let mut coeffs = vec![S::zero(); len];
        for (i, a) in self.coeffs.iter().take(len).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(len - i).enumerate() {
                coeffs[i + j] = coeffs[i + j].plus(&a.times(b));
            }
        }
        Self { val: self.val + other.val, coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let val = self.val.min(other.val);
        let prec = self.precision().min(other.precision());
        let len = (prec - val).max(0) as usize;
        let coeffs = (0..len as i64)
            .map(|k| {
                let e = val + k;
                self.coefficient(e).unwrap().plus(&other.coefficient(e).unwrap())
            })
            .collect();
        Self { val, coeffs }
    }

    pub fn negated(&self) -> Self {
        Self { val: self.val, coeffs: self.coeffs.iter().map(S::negated).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.negated())
    }

    /// Drops leading coefficients that vanish (exactly, or relative to the
    /// largest coefficient in floating mode). Errors if nothing survives.
    pub fn normalized(mut self) -> Result<Self> {
        let scale = if S::EXACT {
            1.0
        } else {
            self.coeffs.iter().map(|c| c.to_complex64().norm()).fold(1.0, f64::max)
        };
        let lead = self.coeffs.iter().position(|c| !c.is_negligible(scale));
        match lead {
            Some(k) => {
                self.coeffs.drain(..k);
                self.val += k as i64;
                Ok(self)
            }
            None => Err(Error::Pole(format!(
                "series vanishes to order ε^{}; the deformation is not in general position",
                self.precision()
            ))),
        }
    }

    pub fn truncated(mut self, len: usize) -> Self {
        self.coeffs.truncate(len);
        self
    }

    /// Multiplicative inverse; the leading coefficient must be nonzero.
    pub fn inverse(&self) -> Result<Self> {
        let lead_inv = self.coeffs[0]
            .inverse()
            .ok_or_else(|| Error::Pole("leading coefficient vanishes".into()))?;
        let n = self.len();
        let mut inv: Vec<S> = Vec::with_capacity(n);
        inv.push(lead_inv.clone());
        for k in 1..n {
            let mut acc = S::zero();
            for j in 1..=k {
                acc = acc.plus(&self.coeffs[j].times(&inv[k - j]));
            }
            inv.push(acc.times(&lead_inv).negated());
        }
        Ok(Self { val: -self.val, coeffs: inv })
    }
}
