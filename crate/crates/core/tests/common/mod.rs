//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_rational::BigRational;
use normcheck::exact::rational_pow;
use normcheck::spherical::{degenerate_sigma_params, Cocharacter, DeformedSatake};
use normcheck::{CyclotomicNumber as Cyc, Scalar};

fn valuation(mut t: u64, p: u64) -> i64 {
    let mut v = 0;
    while t % p == 0 {
        t /= p;
        v += 1;
    }
    v
}

/// Left cosets `g K` in `K diag(p^c, p^{-c}) K ⊂ SL_2(Q_p)`, listed by the
/// diagonal exponent `a` of the Hermite representative
/// `[[p^a, t p^{-c}], [0, p^{-a}]]`, `0 ≤ t < p^{a+c}`. Membership: the
/// smallest entry valuation is `-c`.
pub fn hermite_cosets(p: u64, c: i64) -> Vec<i64> {
    let mut out = Vec::new();
    for a in -c..=c {
        for t in 0..p.pow((a + c) as u32) {
            let vb = if t == 0 { i64::MAX } else { valuation(t, p) - c };
            if a.min(-a).min(vb) == -c {
                out.push(a);
            }
        }
    }
    out
}

/// `φ(a_c) = (1/N) Σ_{cosets} (χ δ^{1/2})(diag(p^a, p^{-a})) = (1/N) Σ u^a p^{-a}`.
pub fn hecke_oracle<S: Scalar>(u: &S, p: u64, c: i64) -> S {
    let cosets = hermite_cosets(p, c);
    let n = cosets.len() as i64;
    let sum = cosets.iter().fold(S::zero(), |acc, &a| {
        let w = S::from_rational(&rational_pow(p, -a));
        acc.plus(&u.pow(a).unwrap().times(&w))
    });
    sum.times(&S::from_rational(&BigRational::new(1.into(), n.into())))
}

pub fn dominant_up_to(m: usize, max: i64) -> Vec<Cocharacter> {
    fn rec(prefix: &mut Vec<i64>, m: usize, max: i64, out: &mut Vec<Cocharacter>) {
        if prefix.len() == m {
            out.push(Cocharacter::new(prefix.clone()));
            return;
        }
        let top = *prefix.last().unwrap_or(&max);
        for x in 0..=top {
            prefix.push(x);
            rec(prefix, m, max, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), m, max, &mut out);
    out
}


/// Ten degenerate Satake parameters of rank `m ≤ 4` with an alternative,
/// still generic, deformation direction.
pub fn deformation_sets() -> Vec<(String, DeformedSatake<Cyc>, Vec<i64>)> {
    let z = Cyc::root_of_unity;
    let trivial = |m: usize, q: u64| {
        let base = (0..m).map(|i| Cyc::from_rational(&rational_pow(q, (m - i) as i64))).collect();
        DeformedSatake::with_default_exponents(q, base).unwrap()
    };
    let alt = |m: usize| vec![3, 1, 4, 2][..m].to_vec();
    vec![
        ("sigma n=0 alpha=z6 p=3".into(), degenerate_sigma_params(0, 1, &z(1, 6), 3).unwrap(), alt(2)),
        ("sigma n=0 alpha=z8 p=2".into(), degenerate_sigma_params(0, 1, &z(1, 8), 2).unwrap(), alt(2)),
        ("sigma n=0 alpha=1 p=3".into(), degenerate_sigma_params(0, 1, &Cyc::one(), 3).unwrap(), alt(2)),
        ("sigma n=1 alpha=z6 p=2".into(), degenerate_sigma_params(1, 1, &z(1, 6), 2).unwrap(), alt(4)),
        ("sigma n=1 alpha=1 p=3".into(), degenerate_sigma_params(1, 1, &Cyc::one(), 3).unwrap(), alt(4)),
        ("sigma n=0 r=2 alpha=z5 p=5".into(), degenerate_sigma_params(0, 2, &z(1, 5), 5).unwrap(), alt(4)),
        ("trivial m=2 q=2".into(), trivial(2, 2), alt(2)),
        ("trivial m=3 q=3".into(), trivial(3, 3), alt(3)),
        (
            "repeated z3 m=2 q=5".into(),
            DeformedSatake::with_default_exponents(5, vec![z(1, 3), z(1, 3)]).unwrap(),
            vec![2, 5],
        ),
        (
            "inverse pair i,-i m=2 q=5".into(),
            DeformedSatake::with_default_exponents(5, vec![z(1, 4), z(3, 4)]).unwrap(),
            vec![5, 2],
        ),
    ]
}
