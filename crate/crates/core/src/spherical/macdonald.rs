//! Zonal spherical functions on `Sp_{2m}(Q_p)` by Macdonald's formula
//!
//! `φ(λ) = q^{-⟨ρ,λ⟩} / Q(q^{-1}) · Σ_{w ∈ W} c(wu) (wu)^λ`,
//! `c(u) = ∏_{a^∨ > 0} (1 - q^{-1} u^{-a^∨}) / (1 - u^{-a^∨})`,
//!
//! with the product over the positive coroots `e_i ± e_j`, `e_i` of `C_m`
//! and `u` the Satake parameter as a point of the dual torus. Degenerate
//! parameters are deformed to `u_j t^{c_j}` and the limit `t → 1` is taken
//! in truncated Laurent series in `ε = t - 1`; every principal part must
//! cancel exactly.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use super::laurent::Laurent;
use super::root_datum::{Cocharacter, RootDatumC};
use crate::error::{domain, Error, Result};
use crate::exact::rational_pow;
use crate::scalar::Scalar;

/// Base parameters `u_1..u_m` with deformation exponents `c_1..c_m`.
#[derive(Clone, Debug)]
pub struct DeformedSatake<S> {
    q: u64,
    base: Vec<S>,
    exponents: Vec<i64>,
}

/// A product `∏ u_a^{s_a}` over at most two signed indices.
type CorootKey = Vec<(usize, i8)>;

impl<S: Scalar> DeformedSatake<S> {
    pub fn new(q: u64, base: Vec<S>, exponents: Vec<i64>) -> Result<Self> {
        if base.is_empty() || base.len() != exponents.len() {
            return domain("DeformedSatake needs equally many (≥ 1) parameters and exponents");
        }
        if base.iter().any(|u| u.is_zero()) {
            return domain("Satake parameters must be nonzero");
        }
        let out = Self { q, base, exponents };
        out.check_general_position()?;
        Ok(out)
    }

    /// Deformation exponents `c_j = j`.
    pub fn with_default_exponents(q: u64, base: Vec<S>) -> Result<Self> {
        let exps = (1..=base.len() as i64).collect();
        Self::new(q, base, exps)
    }

    pub fn rank(&self) -> usize {
        self.base.len()
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn base(&self) -> &[S] {
        &self.base
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    /// Same base, different deformation exponents.
    pub fn with_exponents(&self, exponents: Vec<i64>) -> Result<Self> {
        Self::new(self.q, self.base.clone(), exponents)
    }

    fn key_value(&self, key: &CorootKey) -> (S, i64) {
        let mut v = S::one();
        let mut e = 0;
        for &(a, s) in key {
            let u = if s > 0 { self.base[a].clone() } else { self.base[a].inverse().expect("nonzero") };
            v = v.times(&u);
            e += s as i64 * self.exponents[a];
        }
        (v, e)
    }

    fn all_keys(&self) -> Vec<CorootKey> {
        let m = self.rank();
        let mut keys = Vec::new();
        for a in 0..m {
            for sa in [1i8, -1] {
                keys.push(vec![(a, sa)]);
                for b in (a + 1)..m {
                    for sb in [1i8, -1] {
                        keys.push(vec![(a, sa), (b, sb)]);
                    }
                }
            }
        }
        keys
    }

    /// No coroot value may equal `1` or `q^{±1}` identically in `t`.
    fn check_general_position(&self) -> Result<()> {
        let q = S::from_i64(self.q as i64);
        let qinv = q.inverse().expect("q ≠ 0");
        for key in self.all_keys() {
            let (v, e) = self.key_value(&key);
            if e != 0 {
                continue;
            }
            for bad in [S::one(), q.clone(), qinv.clone()] {
                if v.minus(&bad).is_negligible(1.0) {
                    return domain(format!(
                        "deformation exponents {:?} leave the coroot value {:?} constant at a degenerate point",
                        self.exponents, key
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Precomputed `c(wu)` for every Weyl element; evaluates `φ(λ)` for any `λ`.
pub struct SphericalEvaluator<S> {
    datum: RootDatumC,
    params: DeformedSatake<S>,
    /// Relative precision of every series (maximal pole order + 1).
    depth: usize,
    c_values: Vec<Laurent<S>>,
    poincare: BigRational,
}

fn canonical_key(mut key: CorootKey) -> CorootKey {
    key.sort();
    key
}

impl<S: Scalar> SphericalEvaluator<S> {
    pub fn new(params: DeformedSatake<S>) -> Result<Self> {
        let m = params.rank();
        let datum = RootDatumC::new(m)?;
        let q = params.q;
        let qinv = S::from_rational(&rational_pow(q, -1));

        let mut pole_keys: HashMap<CorootKey, bool> = HashMap::new();
        for key in params.all_keys() {
            let (v, _) = params.key_value(&key);
            pole_keys.insert(key, v.minus(&S::one()).is_negligible(1.0));
        }
        let coroots_of = |w: &super::root_datum::SignedPermutation| -> Vec<CorootKey> {
            let img = |i: usize, flip: i8| (w.perm[i], w.signs[i] * flip);
            let mut keys = Vec::with_capacity(m * m);
            for i in 0..m {
                for j in (i + 1)..m {
                    keys.push(canonical_key(vec![img(i, 1), img(j, -1)]));
                    keys.push(canonical_key(vec![img(i, 1), img(j, 1)]));
                }
                keys.push(vec![img(i, 1)]);
            }
            keys
        };
        let max_poles = datum
            .weyl_group()
            .iter()
            .map(|w| coroots_of(w).iter().filter(|k| pole_keys[*k]).count())
            .max()
            .unwrap_or(0);
        let depth = max_poles + 1;

        // (1 - q^{-1} x^{-1}) / (1 - x^{-1}) with x = x0 (1+ε)^e
        let mut factors: HashMap<CorootKey, Laurent<S>> = HashMap::new();
        for key in params.all_keys() {
            let (x0, e) = params.key_value(&key);
            let xinv = Laurent::binomial(-e, depth + 1).scale(&x0.inverse().expect("nonzero"));
            let one = Laurent::constant(S::one(), depth + 1);
            let num = one.sub(&xinv.scale(&qinv)).normalized()?.truncated(depth);
            let den = one.sub(&xinv).normalized()?.truncated(depth);
            factors.insert(key, num.mul(&den.inverse()?));
        }

        let c_values: Vec<Laurent<S>> = datum
            .weyl_group()
            .par_iter()
            .map(|w| {
                coroots_of(w)
                    .iter()
                    .fold(Laurent::constant(S::one(), depth), |acc, k| acc.mul(&factors[k]))
            })
            .collect();

        let poincare = datum
            .lengths()
            .iter()
            .fold(BigRational::zero(), |acc, &l| acc + rational_pow(q, -(l as i64)));
        Ok(Self { datum, params, depth, c_values, poincare })
    }

    pub fn params(&self) -> &DeformedSatake<S> {
        &self.params
    }

    pub fn datum(&self) -> &RootDatumC {
        &self.datum
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// `Q(q^{-1}) = Σ_w q^{-ℓ(w)}`.
    pub fn poincare(&self) -> &BigRational {
        &self.poincare
    }

    /// `φ(λ)`; `λ` is reduced to its dominant representative first.
    pub fn value(&self, lambda: &Cocharacter) -> Result<S> {
        let m = self.params.rank();
        if lambda.rank() != m {
            return domain(format!("cocharacter of rank {} for a rank-{m} group", lambda.rank()));
        }
        let lambda = lambda.dominant();

        // group Weyl terms by the monomial (wu)^λ = ∏ u_j^{e_j}
        let mut groups: BTreeMap<Vec<i64>, Laurent<S>> = BTreeMap::new();
        for (w, c) in self.datum.weyl_group().iter().zip(&self.c_values) {
            let mut e = vec![0i64; m];
            for i in 0..m {
                e[w.perm[i]] += w.signs[i] as i64 * lambda.lambda[i];
            }
            match groups.get_mut(&e) {
                Some(acc) => *acc = acc.add(c),
                None => {
                    groups.insert(e, c.clone());
                }
            }
        }

        let mut total = Laurent::zero(0, self.depth);
        let mut scale = 1.0f64;
        for (e, csum) in &groups {
            let mut mono = S::one();
            let mut t_exp = 0;
            for (j, &ej) in e.iter().enumerate() {
                if ej != 0 {
                    mono = mono.times(&self.params.base[j].pow(ej).expect("nonzero"));
                    t_exp += ej * self.params.exponents[j];
                }
            }
            let term = csum.mul(&Laurent::binomial(t_exp, self.depth).scale(&mono));
            if !S::EXACT {
                for k in term.valuation()..0 {
                    scale = scale.max(term.coefficient(k).map_or(0.0, |c| c.to_complex64().norm()));
                }
            }
            total = total.add(&term);
        }

        for k in total.valuation()..0 {
            let c = total.coefficient(k).expect("within precision");
            if !c.is_negligible(scale) {
                return Err(Error::Pole(format!(
                    "residual ε^{k} term after the t → 1 limit at λ = {:?}; deformation exponents {:?}",
                    lambda.lambda, self.params.exponents
                )));
            }
        }
        let limit = total
            .coefficient(0)
            .ok_or_else(|| Error::Pole("series precision exhausted before ε^0".into()))?;

        let norm = rational_pow(self.params.q, -self.datum.rho_pairing(&lambda)) / &self.poincare;
        Ok(limit.times(&S::from_rational(&norm)))
    }
}

/// One-shot `φ(λ)`.
pub fn spherical_value<S: Scalar>(params: &DeformedSatake<S>, lambda: &Cocharacter) -> Result<S> {
    SphericalEvaluator::new(params.clone())?.value(lambda)
}

/// Satake parameters of the unramified constituent of
/// `χ|·|^{-(m-1)/2} × … × χ|·|^{(m-1)/2} ⋊ 1`, `m = 2n + 2r`:
/// `u_j = α q^{(m+1-2j)/2}` with exponents `c_j = j`.
pub fn degenerate_sigma_params<S: Scalar>(n: i64, r: i64, alpha: &S, p: u64) -> Result<DeformedSatake<S>> {
    if n < 0 || r < 1 {
        return domain(format!("degenerate_sigma_params needs n ≥ 0, r ≥ 1; got n = {n}, r = {r}"));
    }
    let m = 2 * n + 2 * r;
    let base = (1..=m).map(|j| alpha.times(&S::prime_half_power(p, m + 1 - 2 * j))).collect();
    DeformedSatake::with_default_exponents(p, base)
}

/// `c` placed on the `Sp_{2r}` block of `Sp_{4n+4r}` (last `r` of the
/// `2n + 2r` torus coordinates), reduced to the dominant chamber.
pub fn embedded_cocharacter(n: i64, r: i64, c: &[i64]) -> Result<Cocharacter> {
    if n < 0 || r < 1 || c.len() != r as usize {
        return domain(format!("embedded_cocharacter needs n ≥ 0 and a length-r vector (r = {r}, got {})", c.len()));
    }
    let m = (2 * n + 2 * r) as usize;
    let mut lambda = vec![0i64; m];
    lambda[m - c.len()..].copy_from_slice(c);
    Ok(Cocharacter::new(lambda).dominant())
}
