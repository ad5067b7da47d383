use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use normcheck::exact::{bernoulli, zeta_even, ExactNumber, HalfInt};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn monomial() -> impl Strategy<Value = ExactNumber> {
    (-50i64..50, 1i64..20, -6i64..6, -6i64..6)
        .prop_filter("nonzero", |(n, ..)| *n != 0)
        .prop_map(|(n, d, a, b)| ExactNumber::monomial(q(n, d), HalfInt::from_twice(a), HalfInt::from_twice(b)))
}

fn element() -> impl Strategy<Value = ExactNumber> {
    prop::collection::vec(monomial(), 0..4).prop_map(|v| v.into_iter().sum())
}

proptest! {
    #[test]
    fn ring_axioms(x in element(), y in element(), z in element()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert!((&x - &x).is_zero());
    }

    #[test]
    fn monomial_reciprocal(x in monomial()) {
        prop_assert_eq!(&x * &x.reciprocal().unwrap(), ExactNumber::one());
    }

    #[test]
    fn monomials_multiply_to_monomials(x in monomial(), y in monomial()) {
        prop_assert!((&x * &y).as_monomial().is_some());
    }

    #[test]
    fn float_value_is_a_homomorphism(x in element(), y in element()) {
        let lhs = (&x * &y).to_f64();
        let rhs = x.to_f64() * y.to_f64();
        prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + rhs.abs()));
    }
}

#[test]
fn sums_of_monomials_have_no_reciprocal() {
    let x = &ExactNumber::one() + &ExactNumber::pi_pow(HalfInt::from_int(1));
    assert!(x.reciprocal().is_err());
}

#[test]
fn bernoulli_recurrence_oracle() {
    // Σ_{k=0}^{n} C(n+1, k) B_k = 0 with B_1 = -1/2 and odd B_k = 0 beyond.
    for n in (2..=30).step_by(2) {
        let mut sum = BigRational::from_integer(1.into()) - q(n as i64 + 1, 2);
        let mut binom = BigInt::from(1);
        for k in 1..=n {
            binom = binom * BigInt::from(n + 2 - k) / BigInt::from(k);
            if k % 2 == 0 {
                sum += BigRational::from_integer(binom.clone()) * bernoulli(k as i64).unwrap();
            }
        }
        assert_eq!(sum, q(0, 1), "n = {n}");
    }
    assert_eq!(bernoulli(12).unwrap(), q(-691, 2730));
    assert!(bernoulli(3).is_err());
    assert!(bernoulli(0).is_err());
}

/// `Σ_{m ≤ N} m^{-s}` summed smallest-first, plus the Euler–Maclaurin tail
/// `N^{1-s}/(s-1) - N^{-s}/2 + s N^{-s-1}/12`.
fn dirichlet_zeta(s: i32, n: u32) -> f64 {
    let direct: f64 = (1..=n).rev().map(|m| (m as f64).powi(-s)).sum();
    let nf = n as f64;
    let sf = s as f64;
    direct + nf.powf(1.0 - sf) / (sf - 1.0) - nf.powi(-s) / 2.0 + sf * nf.powi(-s - 1) / 12.0
}

#[test]
fn zeta_even_matches_dirichlet_series() {
    for s in (2..=40).step_by(2) {
        let exact = zeta_even(s as i64).unwrap().to_f64();
        let direct = dirichlet_zeta(s, 1_000_000);
        assert!(((exact - direct) / direct).abs() < 1e-10, "ζ({s}): {exact} vs {direct}");
    }
    assert!(zeta_even(1).is_err());
}

fn close_to(x: rug::Float, reference: &str, digits: i32) -> bool {
    let r = rug::Float::with_val(256, rug::Float::parse(reference).unwrap());
    let rel = rug::Float::with_val(256, (x - &r) / &r).abs();
    rel < rug::Float::with_val(64, 10f64.powi(-digits))
}

#[test]
fn float_value_reference_digits() {
    let pi_over_6 = ExactNumber::monomial(q(1, 6), HalfInt::ZERO, HalfInt::from_int(1));
    assert!(close_to(pi_over_6.float_value(40), "0.5235987755982988730771072305465838140328", 39));
    let sqrt2 = ExactNumber::two_pow(HalfInt::from_twice(1));
    assert!(close_to(sqrt2.float_value(40), "1.414213562373095048801688724209698078570", 39));
    assert_eq!(ExactNumber::zero().to_f64(), 0.0);
}
