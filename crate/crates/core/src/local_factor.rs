//! Unramified local L-factors as rational functions in `X = p^{-s}`, and the
//! local quantity `ℒ_p`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rug::ops::Pow;
use rug::Float;

use crate::error::{domain, Error, Result};
use crate::exact::{rational_pow, rational_to_float, HalfInt};
use crate::hpfloat::{HpComplex, HP_PREC};
use crate::scalar::Scalar;

/// Tolerance on `| |x|² - 1 |` for floating unitarity checks.
const UNIT_TOL: f64 = 1e-60;

fn check_unitary<S: Scalar>(x: &S, what: &str) -> Result<()> {
    let dev = x.times(&x.conj()).minus(&S::one());
    let ok = dev.is_zero() || dev.to_hp().abs_f64() < UNIT_TOL;
    if ok {
        Ok(())
    } else {
        domain(format!("{what} is not unitary: |x|² = {}", x.times(&x.conj()).to_complex64().re))
    }
}

/// Satake parameter `α` of an unramified `σ = χ × χ^{-1}` of `GL_2`.
#[derive(Clone, Debug, PartialEq)]
pub struct SatakeGL2<S> {
    pub alpha: S,
}

impl<S: Scalar> SatakeGL2<S> {
    pub fn new(alpha: S) -> Result<Self> {
        check_unitary(&alpha, "alpha")?;
        Ok(Self { alpha })
    }

    /// `α = exp(2πi · num/den)`.
    pub fn from_angle(num: i64, den: u64) -> Self {
        Self { alpha: S::root_of_unity(num, den) }
    }
}

/// Satake parameters `β_1, …, β_r` of an unramified tempered `π_p` of `Sp_{2r}`,
/// as eigenvalues of the standard representation (`{1, β_i^{±1}}`).
#[derive(Clone, Debug, PartialEq)]
pub struct SatakeSp<S> {
    pub betas: Vec<S>,
}

impl<S: Scalar> SatakeSp<S> {
    pub fn new(betas: Vec<S>) -> Result<Self> {
        if betas.is_empty() {
            return domain("SatakeSp needs rank ≥ 1");
        }
        for (i, b) in betas.iter().enumerate() {
            check_unitary(b, &format!("beta_{}", i + 1))?;
        }
        Ok(Self { betas })
    }

    pub fn rank(&self) -> usize {
        self.betas.len()
    }

    /// Multiset `{1} ∪ {β_i^{±1}}` of the standard `2r+1`-dimensional lift.
    pub fn standard_multiset(&self) -> Vec<S> {
        let mut out = vec![S::one()];
        for b in &self.betas {
            out.push(b.clone());
            out.push(b.inverse().expect("unitary β is nonzero"));
        }
        out
    }
}

/// `N(X) / D(X)` with `N(0) = D(0) = 1`; polynomials stored lowest degree first.
#[derive(Clone, Debug)]
pub struct LocalFactor<S> {
    pub p: u64,
    pub numerator: Vec<S>,
    pub denominator: Vec<S>,
}

fn poly_mul<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    let mut out = vec![S::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].plus(&x.times(y));
        }
    }
    out
}

fn poly_eval<S: Scalar>(a: &[S], x: &S) -> S {
    a.iter().rev().fold(S::zero(), |acc, c| acc.times(x).plus(c))
}

impl<S: Scalar> LocalFactor<S> {
    pub fn one(p: u64) -> Self {
        Self { p, numerator: vec![S::one()], denominator: vec![S::one()] }
    }

    /// `∏ 1/(1 - a X)` over the given roots.
    pub fn from_inverse_roots(p: u64, roots: &[S]) -> Self {
        let mut den = vec![S::one()];
        for a in roots {
            den = poly_mul(&den, &[S::one(), a.negated()]);
        }
        Self { p, numerator: vec![S::one()], denominator: den }
    }

    pub fn degree(&self) -> usize {
        self.denominator.len() - 1
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        Ok(Self {
            p: self.p,
            numerator: poly_mul(&self.numerator, &other.numerator),
            denominator: poly_mul(&self.denominator, &other.denominator),
        })
    }

    pub fn quotient(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        Ok(Self {
            p: self.p,
            numerator: poly_mul(&self.numerator, &other.denominator),
            denominator: poly_mul(&self.denominator, &other.numerator),
        })
    }

    fn same_prime(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return domain(format!("local factors at different primes {} and {}", self.p, other.p));
        }
        Ok(())
    }

    /// Value at a given `X`; a vanishing denominator is a pole error.
    pub fn evaluate(&self, x: &S) -> Result<S> {
        let den = poly_eval(&self.denominator, x);
        let inv = den.inverse().ok_or_else(|| Error::Pole(format!("local factor at p = {} has a pole at X = {:?}", self.p, x.to_complex64())))?;
        Ok(poly_eval(&self.numerator, x).times(&inv))
    }

    /// Value at `X = p^{-s}` for a half-integer `s`.
    pub fn evaluate_at(&self, s: HalfInt) -> Result<S> {
        self.evaluate(&S::prime_half_power(self.p, -s.twice()))
    }

    pub fn conj(&self) -> Self {
        Self {
            p: self.p,
            numerator: self.numerator.iter().map(S::conj).collect(),
            denominator: self.denominator.iter().map(S::conj).collect(),
        }
    }
}

/// `L(s, σ) = 1/((1 - αX)(1 - α^{-1}X))`.
pub fn l_std_gl2<S: Scalar>(sigma: &SatakeGL2<S>, p: u64) -> LocalFactor<S> {
    let inv = sigma.alpha.inverse().expect("unitary α is nonzero");
    LocalFactor::from_inverse_roots(p, &[sigma.alpha.clone(), inv])
}

/// `L(s, σ, Ad) = ζ(s) L(s, χ²) L(s, χ^{-2})`.
pub fn l_adjoint_gl2<S: Scalar>(sigma: &SatakeGL2<S>, p: u64) -> LocalFactor<S> {
    let a2 = sigma.alpha.times(&sigma.alpha);
    let inv = a2.inverse().expect("unitary α is nonzero");
    LocalFactor::from_inverse_roots(p, &[S::one(), a2, inv])
}

/// `L(s, π × σ)`: roots `α^{±1} b` for `b ∈ {1, β_i^{±1}}`.
pub fn l_rankin_sp_gl2<S: Scalar>(sigma: &SatakeGL2<S>, pi: &SatakeSp<S>, p: u64) -> LocalFactor<S> {
    let a = &sigma.alpha;
    let ainv = a.inverse().expect("unitary α is nonzero");
    let roots: Vec<S> = pi
        .standard_multiset()
        .iter()
        .flat_map(|b| [a.times(b), ainv.times(b)])
        .collect();
    LocalFactor::from_inverse_roots(p, &roots)
}

/// `ζ_p(s) = 1/(1 - X)`.
pub fn zeta_p_factor<S: Scalar>(p: u64) -> LocalFactor<S> {
    LocalFactor::from_inverse_roots(p, &[S::one()])
}

/// `(Δ_{Sp_{2d}})_p = ∏_{i=1}^{d} (1 - p^{-2i})^{-1}`.
pub fn delta_sp_local(d: i64, p: u64) -> Result<BigRational> {
    if d < 1 {
        return domain(format!("delta_sp_local: d = {d} must be positive"));
    }
    let mut acc = BigRational::one();
    for i in 1..=d {
        acc /= BigRational::one() - rational_pow(p, -2 * i);
    }
    Ok(acc)
}

/// `ℒ_p = [Δ ratio] · L(n+1/2, π×σ) / (L(n+r+1/2, σ) ∏_{i=1}^{r} L(2n+2i-1, σ, Ad) ζ_p(2n+2i))`.
pub fn script_l_p<S: Scalar>(n: i64, sigma: &SatakeGL2<S>, pi: &SatakeSp<S>, p: u64) -> Result<S> {
    let r = pi.rank() as i64;
    if n < 0 {
        return domain("script_l_p needs n ≥ 0");
    }
    let ratio = delta_sp_local(2 * n + 2 * r, p)? / (delta_sp_local(r, p)? * delta_sp_local(2 * n + r, p)?);
    let mut value = S::from_rational(&ratio);
    value = value.times(&l_rankin_sp_gl2(sigma, pi, p).evaluate_at(HalfInt::from_twice(2 * n + 1))?);
    let mut denom = l_std_gl2(sigma, p).evaluate_at(HalfInt::from_twice(2 * n + 2 * r + 1))?;
    let ad = l_adjoint_gl2(sigma, p);
    let zeta = zeta_p_factor::<S>(p);
    for i in 1..=r {
        denom = denom.times(&ad.evaluate_at(HalfInt::from_int(2 * n + 2 * i - 1))?);
        denom = denom.times(&zeta.evaluate_at(HalfInt::from_int(2 * n + 2 * i))?);
    }
    let inv = denom.inverse().ok_or_else(|| Error::Pole("denominator of ℒ_p vanishes".into()))?;
    Ok(value.times(&inv))
}

/// Unitary `α` with `α + α^{-1} = a_p p^{-(w-1)/2}` and `Im α ≥ 0`.
pub fn satake_from_ap(a_p: &BigRational, w: i64, p: u64) -> Result<SatakeGL2<HpComplex>> {
    if w < 2 || w % 2 != 0 {
        return domain(format!("weight {w} must be even and positive"));
    }
    let bound = BigRational::from_integer(BigInt::from(4)) * rational_pow(p, w - 1);
    let sq = a_p * a_p;
    if sq > bound {
        return domain(format!(
            "Ramanujan bound violated at p = {p}: |a_p| = {} > 2·{p}^{{{}/2}} ≈ {:.4}",
            a_p,
            w - 1,
            2.0 * (p as f64).powf((w - 1) as f64 / 2.0)
        ));
    }
    if a_p.is_zero() {
        return Ok(SatakeGL2 { alpha: HpComplex::from_f64(0.0, 1.0) });
    }
    // x/2 = a_p / (2 p^{(w-1)/2})
    let half_x = rational_to_float(a_p, HP_PREC) / Float::with_val(HP_PREC, p).sqrt()
        / Float::with_val(HP_PREC, p).pow(((w - 2) / 2) as u32)
        / 2u32;
    let half_x = Float::with_val(HP_PREC, half_x);
    let im = Float::with_val(HP_PREC, 1 - half_x.clone().square()).sqrt();
    SatakeGL2::new(HpComplex::new(half_x, im))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CyclotomicNumber as Cyc;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn cyc_poly(v: &[i64]) -> Vec<Cyc> {
        v.iter().map(|&c| Cyc::from_i64(c)).collect()
    }

    fn gl2(num: i64, den: u64) -> SatakeGL2<Cyc> {
        SatakeGL2::from_angle(num, den)
    }

    #[test]
    fn std_factor_examples() {
        let f = l_std_gl2(&gl2(0, 1), 5);
        assert_eq!(f.denominator, cyc_poly(&[1, -2, 1]));
        let f = l_std_gl2(&gl2(1, 4), 5);
        assert_eq!(f.denominator, cyc_poly(&[1, 0, 1]));
        assert_eq!(f.evaluate(&Cyc::zero()).unwrap(), Cyc::one());
    }

    #[test]
    fn adjoint_factor_examples() {
        assert_eq!(l_adjoint_gl2(&gl2(0, 1), 3).denominator, cyc_poly(&[1, -3, 3, -1]));
        // (1 - X)(1 + X)²
        assert_eq!(l_adjoint_gl2(&gl2(1, 4), 3).denominator, cyc_poly(&[1, 1, -1, -1]));
        // (1 - X)(1 + X²)
        assert_eq!(l_adjoint_gl2(&gl2(1, 8), 3).denominator, cyc_poly(&[1, -1, 1, -1]));
    }

    #[test]
    fn rankin_factor_examples() {
        let trivial = SatakeSp::new(vec![Cyc::one()]).unwrap();
        let f = l_rankin_sp_gl2(&gl2(0, 1), &trivial, 2);
        assert_eq!(f.denominator, cyc_poly(&[1, -6, 15, -20, 15, -6, 1]));
        let f = l_rankin_sp_gl2(&gl2(1, 4), &trivial, 2);
        assert_eq!(f.denominator, cyc_poly(&[1, 0, 3, 0, 3, 0, 1]));
        assert_eq!(f.degree(), 6);
    }

    #[test]
    fn zeta_and_delta() {
        let z = zeta_p_factor::<Cyc>(3);
        assert_eq!(z.evaluate_at(HalfInt::from_int(2)).unwrap(), Cyc::from_rational(&q(9, 8)));
        assert_eq!(delta_sp_local(1, 2).unwrap(), q(4, 3));
        assert_eq!(delta_sp_local(2, 2).unwrap(), q(4, 3) * q(16, 15));
        assert_eq!(delta_sp_local(1, 3).unwrap(), q(9, 8));
    }

    #[test]
    fn pole_is_an_error() {
        let z = zeta_p_factor::<Cyc>(3);
        assert!(matches!(z.evaluate(&Cyc::one()), Err(Error::Pole(_))));
    }

    #[test]
    fn non_unitary_rejected() {
        assert!(SatakeGL2::new(Cyc::from_i64(2)).is_err());
        assert!(SatakeSp::new(vec![Cyc::from_rational(&q(1, 2))]).is_err());
        assert!(SatakeSp::<Cyc>::new(vec![]).is_err());
    }

    #[test]
    fn satake_from_ap_examples() {
        let a = satake_from_ap(&q(-24, 1), 12, 2).unwrap().alpha;
        let expect_re = -3.0 * 2f64.sqrt() / 16.0;
        let c = a.to_complex64();
        assert!((c.re - expect_re).abs() < 1e-15);
        assert!((c.arg() - 1.8392).abs() < 1e-4, "{}", c.arg());
        assert_eq!(satake_from_ap(&q(0, 1), 12, 5).unwrap().alpha.to_complex64(), num_complex::Complex64::new(0.0, 1.0));
        // 2·2^{11/2} ≈ 90.51: the largest admissible integer sits next to α = 1
        let edge = satake_from_ap(&q(90, 1), 12, 2).unwrap().alpha.to_complex64();
        assert!((edge - num_complex::Complex64::new(1.0, 0.0)).norm() < 0.11);
        assert!(satake_from_ap(&q(91, 1), 12, 2).is_err());
        assert!(satake_from_ap(&q(10000, 1), 12, 2).is_err());
    }

    #[test]
    fn floating_and_exact_agree() {
        let a = gl2(1, 6);
        let b = SatakeSp::new(vec![Cyc::root_of_unity(1, 8)]).unwrap();
        let exact = script_l_p(1, &a, &b, 3).unwrap().to_complex64();
        let ah = SatakeGL2::<HpComplex>::from_angle(1, 6);
        let bh = SatakeSp::new(vec![HpComplex::root_of_unity(1, 8)]).unwrap();
        let float = script_l_p(1, &ah, &bh, 3).unwrap().to_complex64();
        assert!((exact - float).norm() < 1e-13 * exact.norm());
    }
}
