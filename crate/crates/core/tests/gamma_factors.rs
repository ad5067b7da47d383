use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use statrs::function::gamma::gamma;

use normcheck::exact::{ExactNumber, HalfInt};
use normcheck::gamma::{delta_sp, gamma_c, gamma_r, xi, GammaKind, GammaProduct};

#[test]
fn duplication_identity() {
    for n in 1..=60 {
        assert_eq!(&gamma_r(n).unwrap() * &gamma_r(n + 1).unwrap(), gamma_c(n).unwrap(), "n = {n}");
    }
}

#[test]
fn shift_identity() {
    for n in 1..=60 {
        let factor = ExactNumber::monomial(BigRational::new(BigInt::from(n), BigInt::from(2)), HalfInt::ZERO, HalfInt::from_int(-1));
        assert_eq!(gamma_r(n + 2).unwrap(), &factor * &gamma_r(n).unwrap(), "n = {n}");
    }
}

#[test]
fn gamma_r_matches_floating_gamma() {
    for n in 1..=50i64 {
        let x = n as f64 / 2.0;
        let want = std::f64::consts::PI.powf(-x) * gamma(x);
        let got = gamma_r(n).unwrap().to_f64();
        assert!(((got - want) / want).abs() < 1e-12, "n = {n}: {got} vs {want}");
    }
}

#[test]
fn xi_at_six() {
    // B_6 = 1/42 gives ζ(6) = π^6/945, and Γ_R(6) = 2π^{-3}.
    let want = ExactNumber::monomial(BigRational::new(2.into(), 945.into()), HalfInt::ZERO, HalfInt::from_int(3));
    assert_eq!(xi(6).unwrap(), want);
}

#[test]
fn delta_sp_two() {
    let want = ExactNumber::monomial(BigRational::new(1.into(), 540.into()), HalfInt::ZERO, HalfInt::from_int(3));
    assert_eq!(delta_sp(2).unwrap(), want);
}

fn product() -> impl Strategy<Value = GammaProduct> {
    prop::collection::vec((any::<bool>(), 1i64..30, -2i64..3), 0..6).prop_map(|fs| {
        let mut p = GammaProduct::new();
        for (real, arg, exp) in fs {
            p.push(if real { GammaKind::Real } else { GammaKind::Complex }, arg, exp);
        }
        p
    })
}

proptest! {
    #[test]
    fn canonicalize_is_idempotent_and_value_preserving(p in product()) {
        let c = p.canonicalize();
        prop_assert!(c.is_canonical());
        prop_assert_eq!(c.canonicalize(), c.clone());
        prop_assert_eq!(c.evaluate().unwrap(), p.evaluate().unwrap());
    }

    #[test]
    fn inverse_evaluates_to_reciprocal(p in product()) {
        let v = p.evaluate().unwrap();
        let w = p.inverse().unwrap().evaluate().unwrap();
        prop_assert_eq!(&v * &w, ExactNumber::one());
    }
}

#[test]
fn nonpositive_arguments_are_errors() {
    assert!(gamma_r(0).is_err());
    assert!(gamma_c(-1).is_err());
    assert!(GammaProduct::new().real(0, 1).evaluate().is_err());
}
