use std::collections::BTreeMap;
use std::path::PathBuf;

use num_bigint::BigInt;
use proptest::prelude::*;

use normcheck::archimedean::ArchimedeanParams;
use normcheck::euler::{
    ingest_hecke_tsv, numeric_global_l, rhs_conjecture, s_independence_check, AssemblySpec, HeckeData, LocalData,
    PlaceSet,
};
use normcheck::local_factor::{SatakeGL2, SatakeSp};
use normcheck::{CyclotomicNumber as Cyc, Error, Scalar};

const PREC: usize = 100;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(0); PREC];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate().take(PREC - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn eisenstein(power: u32, scale: i64) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(0); PREC];
    out[0] = BigInt::from(1);
    for (m, slot) in out.iter_mut().enumerate().skip(1) {
        let sigma: BigInt = (1..=m).filter(|d| m % d == 0).map(|d| BigInt::from(d).pow(power)).sum();
        *slot = sigma * scale;
    }
    out
}

/// `q ∏ (1 - q^m)^24`.
fn delta() -> Vec<BigInt> {
    let mut out = vec![BigInt::from(0); PREC];
    out[1] = BigInt::from(1);
    for m in 1..PREC {
        let mut factor = vec![BigInt::from(0); PREC];
        factor[0] = BigInt::from(1);
        factor[m] = BigInt::from(-1);
        for _ in 0..24 {
            out = mul(&out, &factor);
        }
    }
    out
}

fn assert_fixture_matches(name: &str, weight: i64, series: &[BigInt]) {
    let h = ingest_hecke_tsv(fixture(name)).unwrap();
    assert_eq!(h.weight, weight);
    let primes: Vec<u64> = (2..100u64).filter(|&p| (2..p).all(|d| p % d != 0)).collect();
    assert_eq!(h.eigenvalues.keys().copied().collect::<Vec<_>>(), primes);
    for p in primes {
        assert_eq!(h.eigenvalues[&p], series[p as usize], "{name} a_{p}");
    }
}

#[test]
fn fixtures_match_q_expansions() {
    let d = delta();
    let e4 = eisenstein(3, 240);
    let e6 = eisenstein(5, -504);
    assert_eq!(d[2], BigInt::from(-24));
    assert_fixture_matches("tau.tsv", 12, &d);
    assert_fixture_matches("f20.tsv", 20, &mul(&d, &mul(&e4, &e4)));
    assert_fixture_matches("f22.tsv", 22, &mul(&d, &mul(&e4, &e6)));
}

#[test]
fn fixture_s_independence() {
    let f = ingest_hecke_tsv(fixture("f20.tsv")).unwrap();
    let g = ingest_hecke_tsv(fixture("tau.tsv")).unwrap();
    let params = ArchimedeanParams::for_chain(10, 1, 1).unwrap();
    let spec = AssemblySpec::from_hecke(params, "inf,2,3,5".parse().unwrap(), &f, &g, 40).unwrap();
    let sets: Vec<PlaceSet> = ["inf,2", "inf,2,3", "inf,2,3,5"].iter().map(|s| s.parse().unwrap()).collect();
    for w in sets.windows(2) {
        let rep = s_independence_check(&spec, &w[0], &w[1], 1e-6).unwrap();
        assert!(rep.holds, "{rep:?}");
    }
    let wide = AssemblySpec::from_hecke(params, "inf,2,3,5,7,11".parse().unwrap(), &f, &g, 40).unwrap();
    let euler = numeric_global_l(&wide, &[2, 3, 5, 7, 11]).unwrap();
    assert_eq!(euler.primes.len(), 5);
    assert!(euler.last_factor_deviation < 1e-2);
}

#[test]
fn weight_mismatch_and_rank_are_rejected() {
    let f = ingest_hecke_tsv(fixture("f22.tsv")).unwrap();
    let g = ingest_hecke_tsv(fixture("tau.tsv")).unwrap();
    let places: PlaceSet = "inf,2".parse().unwrap();
    let ok = AssemblySpec::from_hecke(ArchimedeanParams::for_chain(11, 0, 1).unwrap(), places.clone(), &f, &g, 60).unwrap();
    assert!(matches!(numeric_global_l(&ok, &[2, 3]), Err(Error::Domain(_))));
    let bad = AssemblySpec::from_hecke(ArchimedeanParams::for_chain(10, 1, 1).unwrap(), places.clone(), &f, &g, 40);
    assert!(matches!(bad, Err(Error::Data(_))));
    let r2 = AssemblySpec::from_hecke(ArchimedeanParams::for_chain(10, 0, 2).unwrap(), places, &f, &g, 40);
    assert!(matches!(r2, Err(Error::NotImplemented(_))));
}

#[test]
fn missing_file_is_an_io_error() {
    assert!(matches!(ingest_hecke_tsv(fixture("nope.tsv")), Err(Error::Io(_))));
}

fn toy_spec(n: i64) -> AssemblySpec<Cyc> {
    let mut local = BTreeMap::new();
    for (p, a, b) in [(2u64, (1, 6), (1, 8)), (3, (1, 4), (1, 3)), (5, (1, 5), (2, 5))] {
        local.insert(
            p,
            LocalData { sigma: SatakeGL2::from_angle(a.0, a.1), pi: SatakeSp::new(vec![Cyc::root_of_unity(b.0, b.1)]).unwrap() },
        );
    }
    let k = if n == 0 { 11 } else { 10 };
    let m = if n == 0 { 60 } else { 40 };
    AssemblySpec::new(ArchimedeanParams::for_chain(k, n, 1).unwrap(), "inf,2,3,5".parse().unwrap(), local, m).unwrap()
}

#[test]
fn toy_s_independence_exact() {
    for n in [0, 1] {
        let spec = toy_spec(n);
        let sets: Vec<PlaceSet> = ["inf", "inf,2", "inf,2,3", "inf,2,3,5"].iter().map(|s| s.parse().unwrap()).collect();
        for w in sets.windows(2) {
            let rep = s_independence_check(&spec, &w[0], &w[1], 1e-6).unwrap();
            assert!(rep.holds, "n={n}: {rep:?}");
        }
        let rhs = rhs_conjecture(&spec).unwrap();
        assert_eq!(rhs.finite.len(), 3);
        assert!(rhs.finite_part.to_hp().relative_distance(&Cyc::one().to_hp()) < 1e-6);
    }
}

#[test]
fn place_set_rejects_non_subsets() {
    let spec = toy_spec(1);
    let a: PlaceSet = "inf,2".parse().unwrap();
    let b: PlaceSet = "inf,3".parse().unwrap();
    assert!(matches!(s_independence_check(&spec, &a, &b, 1e-6), Err(Error::Usage(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hecke_tsv_round_trips(weight in (6i64..30).prop_map(|w| 2 * w), entries in prop::collection::btree_map(
        prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 97]), -1.0f64..1.0, 1..7), label in "[A-Za-z0-9_*]{1,12}") {
        let eigenvalues: BTreeMap<u64, BigInt> = entries
            .into_iter()
            .map(|(p, t)| {
                let bound = 2.0 * (p as f64).powf((weight - 1) as f64 / 2.0);
                (p, BigInt::from((t * bound).trunc() as i64))
            })
            .collect();
        let h = HeckeData::new(weight, label, eigenvalues).unwrap();
        let back: HeckeData = h.to_tsv().parse().unwrap();
        prop_assert_eq!(back, h);
    }
}
