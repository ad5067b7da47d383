use num_complex::Complex64;
use proptest::prelude::*;

use normcheck::archimedean::{
    check_archimedean_chain, closed_form_i_infinity, lemma_norm_squared, lemma_norm_squared_f64,
    matrix_coefficient_infty, numeric_integral_sp2, script_l_prime_infinity, ArchimedeanParams, Sp2RElement,
};

#[test]
fn identity_chain_on_full_grid() {
    let grid = ArchimedeanParams::chain_grid(12, 3, 4);
    assert!(grid.len() >= 80);
    for p in &grid {
        let rep = check_archimedean_chain(p).unwrap();
        assert!(rep.holds, "{p:?}: {} vs {}", rep.lhs, rep.rhs);
        assert!(rep.middle.iter().all(|(_, ok)| *ok), "{p:?}: {:?}", rep.middle);
    }
}

#[test]
fn chain_grid_is_exactly_the_admissible_set() {
    let grid = ArchimedeanParams::chain_grid(12, 3, 4);
    let mut count = 0;
    for r in 1..=4 {
        for n in 0..=3 {
            for k in 1..=12 {
                if n < k && (k + n + r) % 2 == 0 {
                    count += 1;
                    assert!(grid.iter().any(|p| (p.k, p.n, p.r) == (k, n, r)));
                }
            }
        }
    }
    assert_eq!(grid.len(), count);
}

#[test]
fn quadrature_reproduces_formal_degree() {
    for w in [8u32, 12] {
        let est = numeric_integral_sp2(w, 40_000).unwrap();
        let exact = lemma_norm_squared_f64(1, w as i64).unwrap();
        assert!(est.reliable);
        assert!((est.value - exact).abs() < 1e-3, "w={w}: {} vs {exact}", est.value);
        assert!((est.value - exact).abs() <= est.error_bar.max(1e-12) * 10.0);
    }
}

#[test]
fn closed_form_is_real_positive() {
    for p in ArchimedeanParams::chain_grid(10, 2, 3) {
        assert!(closed_form_i_infinity(&p).unwrap().to_f64() > 0.0);
        assert!(script_l_prime_infinity(&p).unwrap().to_f64() > 0.0);
    }
    assert!(lemma_norm_squared(1, 1).is_err());
}

proptest! {
    #[test]
    fn coefficient_is_bounded(theta in 0.0..6.3f64, t in 0.0..3.0f64, phi in 0.0..6.3f64, w in 1u32..20) {
        let g = Sp2RElement::cartan(theta, t, phi);
        let v = matrix_coefficient_infty(&g, w).unwrap();
        prop_assert!(v.norm() <= 1.0 + 1e-12);
    }

    #[test]
    fn coefficient_is_k_equivariant(theta in 0.0..6.3f64, t in 0.0..2.0f64, phi in 0.0..6.3f64, w in 1u32..12) {
        let g = Sp2RElement::diagonal(t.exp());
        let kgk = Sp2RElement::rotation(theta).mul(&g).mul(&Sp2RElement::rotation(phi));
        let lhs = matrix_coefficient_infty(&kgk, w).unwrap();
        let rhs = Complex64::from_polar(1.0, w as f64 * (theta + phi)) * matrix_coefficient_infty(&g, w).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-10);
    }
}

#[test]
fn formal_degree_positive_and_decreasing() {
    for d in 1..=3 {
        let mut prev: Option<rug::Float> = None;
        for w in (d + 1)..=30 {
            let v = lemma_norm_squared(d, w).unwrap().float_value(60);
            assert!(v > 0, "d={d} w={w}");
            if let Some(p) = &prev {
                assert!(&v < p, "d={d} w={w}");
            }
            prev = Some(v);
        }
    }
}

#[test]
fn quadrature_within_reported_error_bar() {
    for w in [8u32, 10, 12] {
        let est = numeric_integral_sp2(w, 40_000).unwrap();
        let exact = lemma_norm_squared_f64(1, w as i64).unwrap();
        assert!((est.value - exact).abs() <= est.error_bar, "w={w}: {} ± {} vs {exact}", est.value, est.error_bar);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn modulus_one_exactly_on_rotations(theta in 0.0..6.3f64, t in 0.01..3.0f64, phi in 0.0..6.3f64, w in 1u32..16) {
        let kak = matrix_coefficient_infty(&Sp2RElement::cartan(theta, t, phi), w).unwrap();
        prop_assert!(kak.norm() < 1.0);
        let k = matrix_coefficient_infty(&Sp2RElement::rotation(theta), w).unwrap();
        prop_assert!((k.norm() - 1.0).abs() < 1e-12);
    }
}
