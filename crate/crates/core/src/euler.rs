//! Global assembly: Hecke eigenvalue ingestion, per-place local values, the
//! numeric part of `C ℒ^S ∏_{v∈S} I(Φ_v, Ψ_v)` and its `S`-independence.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::archimedean::{chain_power_of_two, closed_form_i_infinity, gamma_correction, ArchimedeanParams};
use crate::bookkeeping::constant_c;
use crate::error::{Error, Result};
use crate::exact::{rational_pow, ExactNumber};
use crate::hpfloat::{HpComplex, HP_PREC};
use crate::local_factor::{satake_from_ap, script_l_p, SatakeGL2, SatakeSp};
use crate::scalar::Scalar;
use crate::spherical::{truncated_local_integral, LocalIntegral};

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Normalised Hecke eigenvalues of an elliptic eigenform.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeData {
    pub weight: i64,
    pub label: String,
    pub eigenvalues: BTreeMap<u64, BigInt>,
}

impl HeckeData {
    /// Validates weight parity, primality and the Ramanujan bound
    /// `a_p² ≤ 4 p^{w-1}`.
    pub fn new(weight: i64, label: impl Into<String>, eigenvalues: BTreeMap<u64, BigInt>) -> Result<Self> {
        if weight < 2 || weight % 2 != 0 {
            return Err(Error::Data(format!("weight {weight} must be an even positive integer")));
        }
        for (&p, a) in &eigenvalues {
            if !is_prime(p) {
                return Err(Error::Data(format!("{p} is not prime")));
            }
            let bound = BigRational::from_integer(4.into()) * rational_pow(p, weight - 1);
            if BigRational::from_integer(a * a) > bound {
                return Err(Error::Data(format!(
                    "Ramanujan bound violated at p = {p}: |a_p| = {} > 2·{p}^{}/2 ≈ {:.4}",
                    a.abs(),
                    weight - 1,
                    2.0 * (p as f64).powf((weight - 1) as f64 / 2.0)
                )));
            }
        }
        Ok(Self { weight, label: label.into(), eigenvalues })
    }

    pub fn eigenvalue(&self, p: u64) -> Result<&BigInt> {
        self.eigenvalues
            .get(&p)
            .ok_or_else(|| Error::Data(format!("no eigenvalue for p = {p} in '{}'", self.label)))
    }

    /// Unitary `GL_2` Satake parameter at `p`.
    pub fn satake(&self, p: u64) -> Result<SatakeGL2<HpComplex>> {
        let a = BigRational::from_integer(self.eigenvalue(p)?.clone());
        satake_from_ap(&a, self.weight, p).map_err(|e| match e {
            Error::Domain(m) => Error::Data(m),
            other => other,
        })
    }

    pub fn to_tsv(&self) -> String {
        let mut out = format!("# weight={} label={}\n", self.weight, self.label);
        for (p, a) in &self.eigenvalues {
            out.push_str(&format!("{p}\t{a}\n"));
        }
        out
    }

    pub fn write_tsv(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_tsv())?;
        Ok(())
    }
}

impl FromStr for HeckeData {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let parse_err = |line: usize, message: String| Error::Parse { line, message };
        let mut header: Option<(i64, String)> = None;
        let mut eigenvalues = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                let comment = comment.trim();
                if let Some(rest) = comment.strip_prefix("weight=") {
                    if header.is_some() {
                        return Err(parse_err(line_no, "duplicate header".into()));
                    }
                    let (w, label) = match rest.split_once(char::is_whitespace) {
                        Some((w, tail)) => {
                            let label = tail.trim().strip_prefix("label=").ok_or_else(|| {
                                parse_err(line_no, "header must read '# weight=<w> label=<text>'".into())
                            })?;
                            (w, label.to_string())
                        }
                        None => (rest, String::new()),
                    };
                    let w = w.parse::<i64>().map_err(|_| parse_err(line_no, format!("bad weight '{w}'")))?;
                    header = Some((w, label));
                }
                continue;
            }
            if header.is_none() {
                return Err(parse_err(line_no, "data before the '# weight=' header".into()));
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 2 {
                return Err(parse_err(line_no, format!("expected '<prime>\\t<integer>', got '{line}'")));
            }
            let p = fields[0]
                .trim()
                .parse::<u64>()
                .map_err(|_| parse_err(line_no, format!("bad prime '{}'", fields[0])))?;
            let a_text = fields[1].trim().replace('\u{2212}', "-");
            let a = a_text
                .parse::<BigInt>()
                .map_err(|_| parse_err(line_no, format!("bad integer eigenvalue '{}'", fields[1])))?;
            if eigenvalues.insert(p, a).is_some() {
                return Err(parse_err(line_no, format!("duplicate prime {p}")));
            }
        }
        let (weight, label) = header.ok_or_else(|| parse_err(0, "missing '# weight=<w> label=<text>' header".into()))?;
        if eigenvalues.is_empty() {
            return Err(parse_err(0, "no eigenvalue lines".into()));
        }
        HeckeData::new(weight, label, eigenvalues)
    }
}

pub fn ingest_hecke_tsv(path: impl AsRef<Path>) -> Result<HeckeData> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    text.parse()
}

/// A place of `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Infinity,
    Finite(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "inf"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A finite set of places; must contain `∞`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaceSet(BTreeSet<Place>);

impl PlaceSet {
    pub fn new(places: impl IntoIterator<Item = Place>) -> Result<Self> {
        let set: BTreeSet<Place> = places.into_iter().collect();
        if !set.contains(&Place::Infinity) {
            return Err(Error::Usage("the place set S must contain ∞".into()));
        }
        for p in &set {
            if let Place::Finite(q) = p {
                if !is_prime(*q) {
                    return Err(Error::Usage(format!("{q} is not a prime")));
                }
            }
        }
        Ok(Self(set))
    }

    /// `{∞} ∪ primes`.
    pub fn with_primes(primes: &[u64]) -> Result<Self> {
        Self::new(std::iter::once(Place::Infinity).chain(primes.iter().map(|&p| Place::Finite(p))))
    }

    pub fn contains(&self, v: Place) -> bool {
        self.0.contains(&v)
    }

    pub fn primes(&self) -> Vec<u64> {
        self.0
            .iter()
            .filter_map(|v| match v {
                Place::Finite(p) => Some(*p),
                Place::Infinity => None,
            })
            .collect()
    }

    pub fn is_subset(&self, other: &PlaceSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Place> {
        self.0.iter()
    }
}

impl fmt::Display for PlaceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl FromStr for PlaceSet {
    type Err = Error;

    /// `"inf,2,3"`.
    fn from_str(s: &str) -> Result<Self> {
        let mut places = Vec::new();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match tok.to_ascii_lowercase().as_str() {
                "inf" | "infinity" | "∞" => places.push(Place::Infinity),
                other => places.push(Place::Finite(
                    other.parse().map_err(|_| Error::Usage(format!("bad place '{tok}' in '{s}'")))?,
                )),
            }
        }
        PlaceSet::new(places)
    }
}

/// Unramified data of `σ_p` and `π_p` at one prime.
#[derive(Clone, Debug)]
pub struct LocalData<S> {
    pub sigma: SatakeGL2<S>,
    pub pi: SatakeSp<S>,
}

#[derive(Clone, Debug)]
pub struct AssemblySpec<S> {
    pub params: ArchimedeanParams,
    pub places: PlaceSet,
    pub local: BTreeMap<u64, LocalData<S>>,
    /// Cartan-cell truncation `M` for every finite place.
    pub truncation: usize,
}

impl<S: Scalar> AssemblySpec<S> {
    /// Every finite `p ∈ S` must have local data.
    pub fn new(
        params: ArchimedeanParams,
        places: PlaceSet,
        local: BTreeMap<u64, LocalData<S>>,
        truncation: usize,
    ) -> Result<Self> {
        params.require_chain()?;
        for p in places.primes() {
            if !local.contains_key(&p) {
                return Err(Error::Data(format!("no Satake data at p = {p}")));
            }
        }
        Ok(Self { params, places, local, truncation })
    }

    pub fn with_places(&self, places: PlaceSet) -> Result<Self> {
        Self::new(self.params, places, self.local.clone(), self.truncation)
    }

    /// `None` for exact arithmetic.
    pub fn precision_bits(&self) -> Option<u32> {
        if S::EXACT {
            None
        } else {
            Some(HP_PREC)
        }
    }

    fn local_data(&self, p: u64) -> Result<&LocalData<S>> {
        if !self.places.contains(Place::Finite(p)) {
            return Err(Error::Usage(format!("p = {p} is not in S = {}", self.places)));
        }
        self.local
            .get(&p)
            .ok_or_else(|| Error::Data(format!("no Satake data at p = {p}")))
    }
}

impl AssemblySpec<HpComplex> {
    /// Satake data from Hecke eigenvalues: `f` of weight `2k`, and for `r = 1`
    /// an elliptic `g` of weight `k+n+1` whose `Sp_2` parameter is `β_g²`.
    pub fn from_hecke(
        params: ArchimedeanParams,
        places: PlaceSet,
        f: &HeckeData,
        g: &HeckeData,
        truncation: usize,
    ) -> Result<Self> {
        if params.r != 1 {
            return Err(Error::NotImplemented(format!(
                "Satake normalisation of g for r = {}; only r = 1 is supported",
                params.r
            )));
        }
        if f.weight != 2 * params.k {
            return Err(Error::Data(format!("f has weight {}, expected 2k = {}", f.weight, 2 * params.k)));
        }
        if g.weight != params.weight() {
            return Err(Error::Data(format!("g has weight {}, expected k+n+r = {}", g.weight, params.weight())));
        }
        let mut local = BTreeMap::new();
        for p in places.primes() {
            let sigma = f.satake(p)?;
            let beta_g = g.satake(p)?.alpha;
            let pi = SatakeSp::new(vec![beta_g.times(&beta_g)])?;
            local.insert(p, LocalData { sigma, pi });
        }
        Self::new(params, places, local, truncation)
    }
}

/// `ℒ_p` from the assembly's Satake data.
pub fn local_l_value<S: Scalar>(spec: &AssemblySpec<S>, p: u64) -> Result<S> {
    let data = spec.local_data(p)?;
    script_l_p(spec.params.n, &data.sigma, &data.pi, p)
}

#[derive(Clone, Debug)]
pub enum LocalValue<S> {
    Archimedean(ExactNumber),
    Finite(LocalIntegral<S>),
}

impl<S: Scalar> LocalValue<S> {
    pub fn to_hp(&self) -> HpComplex {
        match self {
            LocalValue::Archimedean(x) => HpComplex::real(x.float_value(100)),
            LocalValue::Finite(li) => li.value.to_hp(),
        }
    }
}

fn finite_integral<S: Scalar>(spec: &AssemblySpec<S>, p: u64) -> Result<LocalIntegral<S>> {
    let data = spec.local_data(p)?;
    let beta = data
        .pi
        .betas
        .first()
        .ok_or_else(|| Error::Domain("empty Satake data for π".into()))?;
    truncated_local_integral(spec.params.n, spec.params.r, &data.sigma.alpha, beta, p, spec.truncation)
}

/// `I(Φ_v, Ψ_v)` for every `v ∈ S`; finite places run in parallel.
pub fn local_integrals<S: Scalar>(spec: &AssemblySpec<S>) -> Result<BTreeMap<Place, LocalValue<S>>> {
    let mut out = BTreeMap::new();
    out.insert(Place::Infinity, LocalValue::Archimedean(closed_form_i_infinity(&spec.params)?));
    let finite: Vec<(u64, LocalIntegral<S>)> = spec
        .places
        .primes()
        .into_par_iter()
        .map(|p| Ok((p, finite_integral(spec, p)?)))
        .collect::<Result<_>>()?;
    for (p, li) in finite {
        out.insert(Place::Finite(p), LocalValue::Finite(li));
    }
    Ok(out)
}

/// One finite place in the assembled right-hand side.
#[derive(Clone, Debug)]
pub struct FinitePlaceTerm<S> {
    pub p: u64,
    pub integral: LocalIntegral<S>,
    pub l_value: S,
    /// `I(Φ_p, Ψ_p) / ℒ_p`, equal to 1 by the local identity.
    pub ratio: S,
}

#[derive(Clone, Debug)]
pub struct RhsReport<S> {
    pub places: PlaceSet,
    pub c: BigRational,
    /// `I(Φ_∞, Ψ_∞) / ℒ'_∞ = 2^{-(r²-r+2rn)} [∏ Γ_R(2n+2i-1) Γ_R(2n+2i+1)]^{-1}`,
    /// with `ℒ'_∞` standing in for `ℒ_∞`.
    pub archimedean: ExactNumber,
    pub finite: Vec<FinitePlaceTerm<S>>,
    /// `∏_{p ∈ S} I_p / ℒ_p`.
    pub finite_part: S,
    /// `C · (I_∞/ℒ'_∞) · ∏_{p∈S} I_p/ℒ_p`, the factor multiplying the global `ℒ`.
    pub numeric_part: HpComplex,
    /// The global `ℒ` is never evaluated; this is its symbolic name.
    pub global_factor: &'static str,
}

/// The right-hand side `C ℒ^S ∏_{v∈S} I(Φ_v, Ψ_v)` with `ℒ^S = ℒ · ℒ_S^{-1}`
/// carried formally: only `C ∏ I_v · ℒ_S^{-1}` is numeric.
pub fn rhs_conjecture<S: Scalar>(spec: &AssemblySpec<S>) -> Result<RhsReport<S>> {
    let params = &spec.params;
    let c = constant_c(params.n);
    let arch = ExactNumber::two_pow(crate::exact::HalfInt::from_int(-chain_power_of_two(params)))
        .checked_div(&gamma_correction(params)?)?;
    // cross-check against the closed form I_∞ / ℒ'_∞
    let direct = closed_form_i_infinity(params)?.checked_div(&crate::archimedean::script_l_prime_infinity(params)?)?;
    if direct != arch {
        return Err(Error::Domain(format!("archimedean ratio mismatch: {direct} vs {arch}")));
    }

    let finite: Vec<FinitePlaceTerm<S>> = spec
        .places
        .primes()
        .into_par_iter()
        .map(|p| -> Result<FinitePlaceTerm<S>> {
            let integral = finite_integral(spec, p)?;
            let l_value = local_l_value(spec, p)?;
            let inv = l_value
                .inverse()
                .ok_or_else(|| Error::Pole(format!("ℒ_{p} vanishes")))?;
            let ratio = integral.value.times(&inv);
            Ok(FinitePlaceTerm { p, integral, l_value, ratio })
        })
        .collect::<Result<_>>()?;
    let finite_part = finite.iter().fold(S::one(), |acc, t| acc.times(&t.ratio));
    let scale = rug::Float::with_val(HP_PREC, &arch.float_value(110)) * crate::exact::rational_to_float(&c, HP_PREC);
    let numeric_part = finite_part.to_hp().scale(&scale);
    Ok(RhsReport {
        places: spec.places.clone(),
        c,
        archimedean: arch,
        finite,
        finite_part,
        numeric_part,
        global_factor: "L",
    })
}

/// Refusal for a numeric global `ℒ` when `n = 0`.
pub fn numeric_global_l<S: Scalar>(spec: &AssemblySpec<S>, primes: &[u64]) -> Result<PartialEulerProduct> {
    if spec.params.n == 0 {
        return Err(Error::Domain(
            "refusing to evaluate the global L numerically at n = 0: the Euler product of \
             L(n+1/2, π×σ) outside S is not always well-defined when n = 0"
                .into(),
        ));
    }
    partial_euler_product(spec, primes)
}

/// Truncated `∏_{p ≤ P} ℒ_p` over the given primes, with the size of the last
/// factor's deviation from 1 as a convergence indicator.
#[derive(Clone, Debug, Serialize)]
pub struct PartialEulerProduct {
    pub primes: Vec<u64>,
    pub value: String,
    pub last_factor_deviation: f64,
}

fn partial_euler_product<S: Scalar>(spec: &AssemblySpec<S>, primes: &[u64]) -> Result<PartialEulerProduct> {
    let mut acc = S::one();
    let mut last = f64::NAN;
    let mut used = Vec::new();
    for &p in primes {
        let data = spec
            .local
            .get(&p)
            .ok_or_else(|| Error::Data(format!("no Satake data at p = {p}")))?;
        let l = script_l_p(spec.params.n, &data.sigma, &data.pi, p)?;
        last = l.minus(&S::one()).to_hp().abs_f64();
        acc = acc.times(&l);
        used.push(p);
    }
    Ok(PartialEulerProduct { primes: used, value: acc.to_hp().to_string_digits(30), last_factor_deviation: last })
}

#[derive(Clone, Debug, Serialize)]
pub struct SIndependence {
    pub smaller: PlaceSet,
    pub larger: PlaceSet,
    /// `|∏_{p ∈ S2∖S1} I_p/ℒ_p - 1|`.
    pub product_deviation: f64,
    /// `max_p |I_p/ℒ_p - 1|` over `S2∖S1`.
    pub max_deviation: f64,
    /// `|numeric(S2) / numeric(S1) - 1|`.
    pub numeric_part_deviation: f64,
    pub tolerance: f64,
    pub holds: bool,
}

/// Compares the numeric parts for `S1 ⊆ S2`.
pub fn s_independence_check<S: Scalar>(
    spec: &AssemblySpec<S>,
    s1: &PlaceSet,
    s2: &PlaceSet,
    tolerance: f64,
) -> Result<SIndependence> {
    if !s1.is_subset(s2) {
        return Err(Error::Usage(format!("S1 = {s1} is not contained in S2 = {s2}")));
    }
    let r1 = rhs_conjecture(&spec.with_places(s1.clone())?)?;
    let r2 = rhs_conjecture(&spec.with_places(s2.clone())?)?;
    let extra: Vec<&FinitePlaceTerm<S>> = r2.finite.iter().filter(|t| !s1.contains(Place::Finite(t.p))).collect();
    let product = extra.iter().fold(S::one(), |acc, t| acc.times(&t.ratio));
    let product_deviation = product.minus(&S::one()).to_hp().abs_f64();
    let max_deviation = extra
        .iter()
        .map(|t| t.ratio.minus(&S::one()).to_hp().abs_f64())
        .fold(0.0, f64::max);
    let numeric_part_deviation = r2.numeric_part.relative_distance(&r1.numeric_part);
    let holds = product_deviation <= tolerance && max_deviation <= tolerance && numeric_part_deviation <= tolerance;
    Ok(SIndependence {
        smaller: s1.clone(),
        larger: s2.clone(),
        product_deviation,
        max_deviation,
        numeric_part_deviation,
        tolerance,
        holds,
    })
}
