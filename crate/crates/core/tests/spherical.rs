use num_bigint::BigInt;
use num_rational::BigRational;

use normcheck::local_factor::{script_l_p, SatakeGL2, SatakeSp};
use normcheck::spherical::{
    cell_volume, degenerate_sigma_params, embedded_cocharacter, spherical_value, truncated_local_integral,
    volume_of_k, Cocharacter, DeformedSatake, RootDatumC, SphericalEvaluator,
};
use normcheck::{CyclotomicNumber as Cyc, HpComplex, Scalar};

mod common;
use common::{deformation_sets, dominant_up_to, hecke_oracle, hermite_cosets};

#[test]
fn coset_counts_match_cell_volume() {
    let datum = RootDatumC::new(1).unwrap();
    for p in [2u64, 3, 5] {
        for c in 0..=3 {
            let count = hermite_cosets(p, c).len() as i64;
            let vol = cell_volume(&datum, &Cocharacter::new(vec![c]), p).unwrap();
            assert_eq!(vol, BigRational::from_integer(count.into()) * volume_of_k(1, p), "p={p} c={c}");
        }
        let q = p as i64;
        assert_eq!(hermite_cosets(p, 1).len() as i64, q * q + q);
        assert_eq!(hermite_cosets(p, 2).len() as i64, q.pow(4) + q.pow(3));
    }
}

#[test]
fn hecke_oracle_exact() {
    for (p, num, den) in [(2u64, 1i64, 8u64), (3, 1, 6), (5, 2, 5), (7, 1, 4)] {
        let u = Cyc::root_of_unity(num, den);
        let params = DeformedSatake::with_default_exponents(p, vec![u.clone()]).unwrap();
        let eval = SphericalEvaluator::new(params).unwrap();
        for c in 1..=3 {
            let got = eval.value(&Cocharacter::new(vec![c])).unwrap();
            assert_eq!(got, hecke_oracle(&u, p, c), "p={p} u=z{den}^{num} c={c}");
        }
    }
}

#[test]
fn hecke_oracle_floating() {
    let u = HpComplex::root_of_unity(2, 7);
    let params = DeformedSatake::with_default_exponents(3, vec![u.clone()]).unwrap();
    let got = spherical_value(&params, &Cocharacter::new(vec![1])).unwrap();
    let want = hecke_oracle(&u, 3, 1);
    assert!(got.relative_distance(&want) < 1e-10);
}

#[test]
fn value_at_identity_is_one() {
    for m in 1..=3usize {
        let base: Vec<Cyc> = (0..m).map(|j| Cyc::root_of_unity(j as i64 + 1, 7)).collect();
        let params = DeformedSatake::with_default_exponents(5, base).unwrap();
        assert_eq!(spherical_value(&params, &Cocharacter::zero(m)).unwrap(), Cyc::one());
    }
}

#[test]
fn trivial_representation_is_identically_one() {
    for (m, q) in [(1usize, 2u64), (2, 3), (3, 2)] {
        let base: Vec<BigRational> = (0..m).map(|i| normcheck::exact::rational_pow(q, (m - i) as i64)).collect();
        let params = DeformedSatake::with_default_exponents(q, base.iter().map(Cyc::from_rational).collect()).unwrap();
        let eval = SphericalEvaluator::new(params).unwrap();
        let max = if m == 3 { 3 } else { 5 };
        for lambda in dominant_up_to(m, max) {
            assert_eq!(eval.value(&lambda).unwrap(), Cyc::one(), "m={m} λ={:?}", lambda.lambda);
        }
    }
}

#[test]
fn non_dominant_arguments_are_reduced() {
    let params = DeformedSatake::with_default_exponents(3, vec![Cyc::root_of_unity(1, 5), Cyc::root_of_unity(1, 3)]).unwrap();
    let eval = SphericalEvaluator::new(params).unwrap();
    let a = eval.value(&Cocharacter::new(vec![2, 1])).unwrap();
    let b = eval.value(&Cocharacter::new(vec![-1, 2])).unwrap();
    assert_eq!(a, b);
}

#[test]
fn embedded_cocharacter_is_dominant() {
    let lam = embedded_cocharacter(1, 1, &[3]).unwrap();
    assert_eq!(lam.lambda, vec![3, 0, 0, 0]);
    assert!(lam.is_dominant());
}

#[test]
fn local_integral_matches_script_l_floating() {
    for (p, n, m) in [(3u64, 0i64, 60usize), (5, 1, 40)] {
        let a = HpComplex::root_of_unity(1, 5);
        let b = HpComplex::root_of_unity(1, 3);
        let li = truncated_local_integral(n, 1, &a, &b, p, m).unwrap();
        let l = script_l_p(n, &SatakeGL2::new(a).unwrap(), &SatakeSp::new(vec![b]).unwrap(), p).unwrap();
        assert!(li.value.relative_distance(&l) < 1e-12, "p={p} n={n}");
        assert!(li.tail.relative < 1e-12);
        assert!(li.tail.ratio < 1.0);
    }
}

#[test]
fn local_integral_matches_script_l_exact() {
    let a = Cyc::root_of_unity(1, 4);
    let b = Cyc::root_of_unity(1, 3);
    let li = truncated_local_integral(1, 1, &a, &b, 3, 40).unwrap();
    let l = script_l_p(1, &SatakeGL2::new(a).unwrap(), &SatakeSp::new(vec![b]).unwrap(), 3).unwrap();
    assert!(li.value.to_hp().relative_distance(&l.to_hp()) < 1e-20);
}

#[test]
fn degenerate_alpha_one() {
    let one = HpComplex::one();
    let b = HpComplex::root_of_unity(1, 3);
    let li = truncated_local_integral(0, 1, &one, &b, 3, 60).unwrap();
    let l = script_l_p(0, &SatakeGL2::new(one).unwrap(), &SatakeSp::new(vec![b]).unwrap(), 3).unwrap();
    assert!(li.value.relative_distance(&l) < 1e-10);
}

#[test]
fn non_tempered_input_fails_to_converge() {
    let a = HpComplex::root_of_unity(1, 6);
    let b = HpComplex::from_f64(3.0, 0.0);
    let err = truncated_local_integral(0, 1, &a, &b, 3, 30).unwrap_err();
    assert!(matches!(err, normcheck::Error::Convergence(_)), "{err:?}");
}

#[test]
fn sigma_parameters_form_progression() {
    let alpha = Cyc::root_of_unity(1, 6);
    let params = degenerate_sigma_params(1, 1, &alpha, 2).unwrap();
    let base = params.base();
    let two = Cyc::from_rational(&BigRational::from_integer(BigInt::from(2)));
    for w in base.windows(2) {
        assert_eq!(w[0], w[1].times(&two));
    }
    assert_eq!(base[0].times(&base[3]), alpha.times(&alpha));
}

#[test]
fn deformation_exponents_do_not_matter() {
    for (label, params, alt) in deformation_sets() {
        let m = params.rank();
        let a = SphericalEvaluator::new(params.clone()).unwrap();
        let b = SphericalEvaluator::new(params.with_exponents(alt).unwrap()).unwrap();
        for lambda in dominant_up_to(m, 2) {
            assert_eq!(a.value(&lambda).unwrap(), b.value(&lambda).unwrap(), "{label} λ={:?}", lambda.lambda);
        }
    }
}

#[test]
fn weyl_action_on_base_parameters() {
    let (u1, u2) = (Cyc::root_of_unity(1, 12), Cyc::root_of_unity(1, 3));
    let base = SphericalEvaluator::new(DeformedSatake::with_default_exponents(3, vec![u1.clone(), u2.clone()]).unwrap()).unwrap();
    let variants = [
        vec![u2.clone(), u1.clone()],
        vec![u1.inverse().unwrap(), u2.clone()],
        vec![u2.inverse().unwrap(), u1.inverse().unwrap()],
    ];
    for v in variants {
        let other = SphericalEvaluator::new(DeformedSatake::with_default_exponents(3, v).unwrap()).unwrap();
        for lambda in dominant_up_to(2, 3) {
            assert_eq!(other.value(&lambda).unwrap(), base.value(&lambda).unwrap(), "λ={:?}", lambda.lambda);
        }
    }
    let f = DeformedSatake::with_default_exponents(5, vec![HpComplex::root_of_unity(2, 7)]).unwrap();
    let g = DeformedSatake::with_default_exponents(5, vec![HpComplex::root_of_unity(-2, 7)]).unwrap();
    for c in 0..=4 {
        let lam = Cocharacter::new(vec![c]);
        assert!(spherical_value(&f, &lam).unwrap().relative_distance(&spherical_value(&g, &lam).unwrap()) < 1e-10);
    }
}

proptest::proptest! {
    #![proptest_config(proptest::prelude::ProptestConfig::with_cases(50))]

    #[test]
    fn tempered_values_bounded_by_trivial_parameter(num in 0i64..1000, pi in 0usize..3) {
        let q = [2u64, 3, 5][pi];
        let u = HpComplex::root_of_unity(num, 1000);
        let eval = SphericalEvaluator::new(DeformedSatake::with_default_exponents(q, vec![u]).unwrap()).unwrap();
        let one = SphericalEvaluator::new(DeformedSatake::with_default_exponents(q, vec![HpComplex::one()]).unwrap()).unwrap();
        for c in 0..=10 {
            let lam = Cocharacter::new(vec![c]);
            let bound = one.value(&lam).unwrap().to_complex64().re;
            proptest::prop_assert!(eval.value(&lam).unwrap().abs_f64() <= bound * (1.0 + 1e-12), "c={}", c);
        }
    }
}

/// Terms decay at rate `q^{-1/2}`: `|t_c| q^{c/2}` over the second half of the
/// sum never exceeds its maximum over the first half by more than a constant.
#[test]
fn terms_decay_at_rate_q_minus_half() {
    for (n, m) in [(0i64, 60usize), (1, 40)] {
        for p in [2u64, 3, 5] {
            let li = truncated_local_integral(n, 1, &HpComplex::root_of_unity(2, 7), &HpComplex::root_of_unity(3, 10), p, m).unwrap();
            let root = (p as f64).sqrt();
            let norm: Vec<f64> = li.terms.iter().enumerate().map(|(c, t)| t.to_hp().abs_f64() * root.powi(c as i32)).collect();
            let first = norm[..m / 2].iter().cloned().fold(0.0, f64::max);
            let second = norm[m / 2..].iter().cloned().fold(0.0, f64::max);
            assert!(second <= 2.0 * first, "n={n} p={p}: {second} vs {first}");
            assert!(li.tail.ratio < 1.0);
        }
    }
}
