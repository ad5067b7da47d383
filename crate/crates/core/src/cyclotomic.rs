//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! An element is stored at some level `N` as a polynomial in `ζ_N` of degree
//! below `φ(N)`. Binary operations lift both operands to the lcm of their
//! levels, so elements from different fields mix freely.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::sync::LazyLock;

use crate::exact::rational_to_float;
use crate::hpfloat::{HpComplex, HP_PREC};
use crate::scalar::Scalar;

static CYCLOTOMIC_POLYS: LazyLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// Coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<i64>> {
    assert!(n >= 1, "Φ_0 is undefined");
    if let Some(p) = CYCLOTOMIC_POLYS.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = exact_div(&num, &cyclotomic_polynomial(d));
        }
    }
    let poly = Arc::new(num);
    CYCLOTOMIC_POLYS.lock().unwrap().insert(n, poly.clone());
    poly
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    let mut quot = vec![0i64; rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

#[derive(Clone)]
pub struct CyclotomicNumber {
    level: u64,
    coeffs: Vec<BigRational>,
}

impl CyclotomicNumber {
    /// Builds `Σ c_k ζ_level^k` for arbitrary (unreduced) exponents.
    pub fn from_exponents(level: u64, terms: &[(i64, BigRational)]) -> Self {
        assert!(level >= 1);
        let mut raw = vec![BigRational::zero(); level as usize];
        for (k, c) in terms {
            let idx = k.rem_euclid(level as i64) as usize;
            raw[idx] += c;
        }
        Self::reduce(level, raw)
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// Power-basis coefficients at the current level.
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn reduce(level: u64, mut raw: Vec<BigRational>) -> Self {
        let phi = cyclotomic_polynomial(level);
        let deg = phi.len() - 1;
        for i in (deg..raw.len()).rev() {
            if raw[i].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut raw[i], BigRational::zero());
            for (j, &pj) in phi.iter().enumerate().take(deg) {
                if pj != 0 {
                    raw[i - deg + j] -= &c * BigRational::from_integer(BigInt::from(pj));
                }
            }
        }
        raw.truncate(deg);
        raw.resize(deg, BigRational::zero());
        Self { level, coeffs: raw }
    }

    /// Re-expresses `self` in `Q(ζ_target)`; `level` must divide `target`.
    pub fn lift(&self, target: u64) -> Self {
        if target == self.level {
            return self.clone();
        }
        assert!(target % self.level == 0, "cannot lift level {} to {}", self.level, target);
        let step = (target / self.level) as usize;
        let mut raw = vec![BigRational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[k * step] = c.clone();
            }
        }
        Self::reduce(target, raw)
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        if self.level == other.level {
            return (self.clone(), other.clone());
        }
        let l = self.level.lcm(&other.level);
        (self.lift(l), other.lift(l))
    }

    fn mul_same_level(&self, other: &Self) -> Self {
        let n = self.coeffs.len();
        if n == 0 {
            return self.clone();
        }
        let mut raw = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        Self::reduce(self.level, raw)
    }

    /// Matrix of multiplication by `self` on the power basis, solved for the
    /// preimage of 1.
    fn inverse_same_level(&self) -> Option<Self> {
        let n = self.coeffs.len();
        let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(n);
        let mut basis = Self { level: self.level, coeffs: vec![BigRational::zero(); n] };
        for k in 0..n {
            for c in basis.coeffs.iter_mut() {
                *c = BigRational::zero();
            }
            basis.coeffs[k] = BigRational::one();
            cols.push(self.mul_same_level(&basis).coeffs);
        }
        // augmented rows: a[i][j] = cols[j][i]
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> = (0..n).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            let inv = a[col][col].recip();
            for v in a[col].iter_mut().skip(col) {
                *v *= &inv;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    let (pivot_row, row) = if r < col {
                        let (lo, hi) = a.split_at_mut(col);
                        (&hi[0], &mut lo[r])
                    } else {
                        let (lo, hi) = a.split_at_mut(r);
                        (&lo[col], &mut hi[0])
                    };
                    for j in col..=n {
                        if !pivot_row[j].is_zero() {
                            row[j] -= &f * &pivot_row[j];
                        }
                    }
                }
            }
        }
        Some(Self { level: self.level, coeffs: a.into_iter().map(|mut row| row.pop().unwrap()).collect() })
    }

    /// High-precision complex embedding with `ζ_N ↦ exp(2πi/N)`.
    pub fn to_hp_complex(&self) -> HpComplex {
        let mut acc = HpComplex::zero();
        let n = self.level;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let z = HpComplex::root_of_unity(k as i64, n);
            acc = acc.plus(&z.scale(&rational_to_float(c, HP_PREC)));
        }
        acc
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs.first().cloned().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }

    /// `x · conj(x)`.
    pub fn modulus_squared(&self) -> Self {
        self.times(&self.conj())
    }
}

fn gauss_sum(p: u64) -> CyclotomicNumber {
    let terms: Vec<(i64, BigRational)> = (1..p)
        .map(|a| {
            let chi = if legendre(a, p) == 1 { 1 } else { -1 };
            (a as i64, BigRational::from_integer(BigInt::from(chi)))
        })
        .collect();
    CyclotomicNumber::from_exponents(p, &terms)
}

fn legendre(a: u64, p: u64) -> i64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if result == 1 {
        1
    } else {
        -1
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CyclotomicNumber {}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => write!(f, "z{}^{k}", self.level)?,
                _ => write!(f, "{a}*z{}^{k}", self.level)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Scalar for CyclotomicNumber {
    const EXACT: bool = true;

    fn zero() -> Self {
        Self::from_rational(&BigRational::zero())
    }

    fn one() -> Self {
        Self::from_rational(&BigRational::one())
    }

    fn from_rational(q: &BigRational) -> Self {
        Self { level: 1, coeffs: vec![q.clone()] }
    }

    fn plus(&self, other: &Self) -> Self {
        let (mut a, b) = self.aligned(other);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }

    fn minus(&self, other: &Self) -> Self {
        let (mut a, b) = self.aligned(other);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x -= y;
        }
        a
    }

    fn times(&self, other: &Self) -> Self {
        if self.level == 1 {
            let c = &self.coeffs[0];
            return Self { level: other.level, coeffs: other.coeffs.iter().map(|x| x * c).collect() };
        }
        if other.level == 1 {
            return other.times(self);
        }
        let (a, b) = self.aligned(other);
        a.mul_same_level(&b)
    }

    fn negated(&self) -> Self {
        Self { level: self.level, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.level == 1 {
            return Some(Self::from_rational(&self.coeffs[0].recip()));
        }
        self.inverse_same_level()
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn is_negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }

    fn conj(&self) -> Self {
        let n = self.level as i64;
        let terms: Vec<(i64, BigRational)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (n - k as i64, c.clone()))
            .collect();
        Self::from_exponents(self.level, &terms)
    }

    fn to_complex64(&self) -> Complex64 {
        self.to_hp_complex().to_complex64()
    }

    fn to_hp(&self) -> HpComplex {
        self.to_hp_complex()
    }

    /// `√p` from the quadratic Gauss sum: `g² = (-1/p) p`, so `√p = g` for
    /// `p ≡ 1 (mod 4)` and `√p = -i g` for `p ≡ 3 (mod 4)`; `√2 = ζ_8 + ζ_8^{-1}`.
    fn sqrt_prime(p: u64) -> Self {
        assert!(p >= 2);
        if p == 2 {
            let one = BigRational::one();
            return Self::from_exponents(8, &[(1, one.clone()), (-1, one)]);
        }
        let g = gauss_sum(p);
        if p % 4 == 1 {
            g
        } else {
            g.times(&Self::root_of_unity(3, 4))
        }
    }

    fn root_of_unity(num: i64, den: u64) -> Self {
        assert!(den >= 1);
        let g = (num.rem_euclid(den as i64) as u64).gcd(&den);
        let (num, den) = (num / g as i64, den / g);
        if den == 1 {
            return Self::one();
        }
        Self::from_exponents(den, &[(num, BigRational::one())])
    }
}

impl From<&CyclotomicNumber> for HpComplex {
    fn from(x: &CyclotomicNumber) -> Self {
        x.to_hp_complex()
    }
}
