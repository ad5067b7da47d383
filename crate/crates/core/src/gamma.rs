//! Formal products of Γ_R and Γ_C at integer arguments.
//!
//! `Γ_R(s) = π^{-s/2} Γ(s/2)` and `Γ_C(s) = 2 (2π)^{-s} Γ(s)`. Both are exact
//! monomials of [`ExactNumber`] at positive integers, so any finite product
//! evaluates to a monomial times the prefactor.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{domain, Result};
use crate::exact::{factorial, zeta_even, ExactNumber, HalfInt};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GammaKind {
    Real,
    Complex,
}

/// `Γ_R(n)` for a positive integer `n`.
pub fn gamma_r(n: i64) -> Result<ExactNumber> {
    if n <= 0 {
        return domain(format!("Γ_R has a pole at {n}"));
    }
    if n % 2 == 0 {
        let half = n / 2;
        let c = BigRational::from_integer(factorial((half - 1) as u64));
        Ok(ExactNumber::monomial(c, HalfInt::ZERO, HalfInt::from_int(-half)))
    } else {
        // Γ(n/2) = (n-2)!! √π / 2^{(n-1)/2}
        let c = BigRational::from_integer(double_factorial(n - 2));
        Ok(ExactNumber::monomial(
            c,
            HalfInt::from_int(-(n - 1) / 2),
            HalfInt::from_int((1 - n) / 2),
        ))
    }
}

/// `Γ_C(n) = 2 (2π)^{-n} (n-1)!` for a positive integer `n`.
pub fn gamma_c(n: i64) -> Result<ExactNumber> {
    if n <= 0 {
        return domain(format!("Γ_C has a pole at {n}"));
    }
    let c = BigRational::from_integer(factorial((n - 1) as u64));
    Ok(ExactNumber::monomial(c, HalfInt::from_int(1 - n), HalfInt::from_int(-n)))
}

fn double_factorial(n: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= BigInt::from(k);
        k -= 2;
    }
    acc
}

/// Completed zeta `ξ(n) = Γ_R(n) ζ(n)` at an even positive integer.
pub fn xi(n: i64) -> Result<ExactNumber> {
    if n < 2 || n % 2 != 0 {
        return domain(format!("xi: n = {n} must be even and at least 2"));
    }
    Ok(&gamma_r(n)? * &zeta_even(n)?)
}

/// `Δ_{Sp_{2d}} = ξ(2) ξ(4) ⋯ ξ(2d)`.
pub fn delta_sp(d: i64) -> Result<ExactNumber> {
    if d < 1 {
        return domain(format!("delta_sp: d = {d} must be positive"));
    }
    (1..=d).map(|i| xi(2 * i)).product()
}

/// Archimedean component `Γ_R(2) Γ_R(4) ⋯ Γ_R(2d)`.
pub fn delta_sp_infinity(d: i64) -> Result<ExactNumber> {
    if d < 1 {
        return domain(format!("delta_sp_infinity: d = {d} must be positive"));
    }
    (1..=d).map(|i| gamma_r(2 * i)).product()
}

/// Prefactor times a multiset of `Γ_kind(arg)^exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaProduct {
    prefactor: ExactNumber,
    factors: BTreeMap<(GammaKind, i64), i64>,
}

impl Default for GammaProduct {
    fn default() -> Self {
        Self::new()
    }
}

impl GammaProduct {
    pub fn new() -> Self {
        Self::with_prefactor(ExactNumber::one())
    }

    pub fn with_prefactor(prefactor: ExactNumber) -> Self {
        Self { prefactor, factors: BTreeMap::new() }
    }

    pub fn prefactor(&self) -> &ExactNumber {
        &self.prefactor
    }

    /// Factors with nonzero exponent, sorted by kind then argument.
    pub fn factors(&self) -> impl Iterator<Item = (GammaKind, i64, i64)> + '_ {
        self.factors.iter().map(|(&(kind, arg), &exp)| (kind, arg, exp))
    }

    pub fn push(&mut self, kind: GammaKind, arg: i64, exp: i64) -> &mut Self {
        if exp != 0 {
            let slot = self.factors.entry((kind, arg)).or_insert(0);
            *slot += exp;
            if *slot == 0 {
                self.factors.remove(&(kind, arg));
            }
        }
        self
    }

    pub fn real(mut self, arg: i64, exp: i64) -> Self {
        self.push(GammaKind::Real, arg, exp);
        self
    }

    pub fn complex(mut self, arg: i64, exp: i64) -> Self {
        self.push(GammaKind::Complex, arg, exp);
        self
    }

    pub fn times_prefactor(mut self, x: &ExactNumber) -> Self {
        self.prefactor = &self.prefactor * x;
        self
    }

    /// Multiplies two products, adding exponents.
    pub fn combine(&self, other: &GammaProduct) -> GammaProduct {
        let mut out = self.clone();
        out.prefactor = &out.prefactor * &other.prefactor;
        for (kind, arg, exp) in other.factors() {
            out.push(kind, arg, exp);
        }
        out
    }

    /// The multiplicative inverse; fails if the prefactor is not a monomial.
    pub fn inverse(&self) -> Result<GammaProduct> {
        let mut out = GammaProduct::with_prefactor(self.prefactor.reciprocal()?);
        for (kind, arg, exp) in self.factors() {
            out.push(kind, arg, -exp);
        }
        Ok(out)
    }

    /// Rewrites every `Γ_C(s)` as `Γ_R(s) Γ_R(s+1)`.
    pub fn canonicalize(&self) -> GammaProduct {
        let mut out = GammaProduct::with_prefactor(self.prefactor.clone());
        for (kind, arg, exp) in self.factors() {
            match kind {
                GammaKind::Real => {
                    out.push(GammaKind::Real, arg, exp);
                }
                GammaKind::Complex => {
                    out.push(GammaKind::Real, arg, exp);
                    out.push(GammaKind::Real, arg + 1, exp);
                }
            }
        }
        out
    }

    pub fn is_canonical(&self) -> bool {
        self.factors.keys().all(|(k, _)| *k == GammaKind::Real)
    }

    pub fn evaluate(&self) -> Result<ExactNumber> {
        let mut acc = self.prefactor.clone();
        for (kind, arg, exp) in self.factors() {
            let v = match kind {
                GammaKind::Real => gamma_r(arg)?,
                GammaKind::Complex => gamma_c(arg)?,
            };
            acc = &acc * &v.pow(exp)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for GammaProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.prefactor)?;
        for (kind, arg, exp) in self.factors() {
            let name = match kind {
                GammaKind::Real => "G_R",
                GammaKind::Complex => "G_C",
            };
            if exp == 1 {
                write!(f, " {name}({arg})")?;
            } else {
                write!(f, " {name}({arg})^{exp}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn pi(k: i64) -> ExactNumber {
        ExactNumber::pi_pow(HalfInt::from_int(k))
    }

    #[test]
    fn gamma_r_small() {
        assert_eq!(gamma_r(1).unwrap(), ExactNumber::one());
        assert_eq!(gamma_r(2).unwrap(), pi(-1));
        assert_eq!(gamma_r(4).unwrap(), pi(-2));
        assert_eq!(gamma_r(3).unwrap(), pi(-1).scale(&q(1, 2)));
        assert!(gamma_r(0).is_err());
        assert!(gamma_r(-3).is_err());
    }

    #[test]
    fn gamma_c_small() {
        assert_eq!(gamma_c(1).unwrap(), pi(-1));
        assert_eq!(gamma_c(3).unwrap(), pi(-3).scale(&q(1, 2)));
        assert_eq!(gamma_c(3).unwrap(), &gamma_r(3).unwrap() * &gamma_r(4).unwrap());
        assert!(gamma_c(0).is_err());
    }

    #[test]
    fn xi_and_delta() {
        assert_eq!(xi(2).unwrap(), pi(1).scale(&q(1, 6)));
        assert_eq!(xi(4).unwrap(), pi(2).scale(&q(1, 90)));
        assert_eq!(xi(6).unwrap(), pi(3).scale(&q(2, 945)));
        assert!(xi(3).is_err());
        assert_eq!(delta_sp(1).unwrap(), pi(1).scale(&q(1, 6)));
        assert_eq!(delta_sp(2).unwrap(), pi(3).scale(&q(1, 540)));
        assert_eq!(delta_sp_infinity(1).unwrap(), pi(-1));
        assert_eq!(delta_sp_infinity(2).unwrap(), pi(-3));
        assert_eq!(delta_sp_infinity(3).unwrap(), pi(-6).scale(&q(2, 1)));
    }

    #[test]
    fn modular_covolume() {
        let two = ExactNumber::from_int(2);
        assert_eq!(&two * &delta_sp(1).unwrap(), pi(1).scale(&q(1, 3)));
    }

    #[test]
    fn canonicalize_examples() {
        let p = GammaProduct::new().complex(3, 1);
        let c = p.canonicalize();
        assert_eq!(c.factors().collect::<Vec<_>>(), vec![(GammaKind::Real, 3, 1), (GammaKind::Real, 4, 1)]);
        assert_eq!(GammaProduct::new().canonicalize(), GammaProduct::new());
        let sq = GammaProduct::new().complex(2, 2).canonicalize();
        assert_eq!(sq.factors().collect::<Vec<_>>(), vec![(GammaKind::Real, 2, 2), (GammaKind::Real, 3, 2)]);
    }

    #[test]
    fn factors_cancel() {
        let p = GammaProduct::new().real(5, 2).real(5, -2);
        assert_eq!(p.factors().count(), 0);
        let inv = GammaProduct::new().complex(4, 1).inverse().unwrap();
        assert_eq!(
            GammaProduct::new().complex(4, 1).combine(&inv).evaluate().unwrap(),
            ExactNumber::one()
        );
    }
}
