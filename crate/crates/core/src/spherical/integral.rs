//! Truncated Cartan-cell sum for `I(Φ_p, Ψ_p)` over `Sp_2(Q_p)`.

use rayon::prelude::*;
use serde::Serialize;

use super::cartan::cell_volume;
use super::macdonald::{degenerate_sigma_params, embedded_cocharacter, DeformedSatake, SphericalEvaluator};
use super::root_datum::{Cocharacter, RootDatumC};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Terms used for the geometric tail fit.
const TAIL_WINDOW: usize = 10;

#[derive(Clone, Debug)]
pub struct LocalIntegral<S> {
    pub value: S,
    /// `vol(K a_c K) Φ(c) conj(Ψ(c))` for `c = 0..=M`.
    pub terms: Vec<S>,
    pub tail: TailEstimate,
}

/// Geometric extrapolation of the omitted cells `c > M`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TailEstimate {
    /// Fitted per-cell decay ratio of the term magnitudes.
    pub ratio: f64,
    /// Bound on `|Σ_{c > M} term_c|` under the fitted decay.
    pub absolute: f64,
    /// `absolute / |value|`.
    pub relative: f64,
}

/// Least-squares fit of `ln|term_c|` over the last [`TAIL_WINDOW`] cells;
/// the tail is `|term_M| / (1 - ratio)`.
pub fn tail_estimate(magnitudes: &[f64], total: f64) -> Result<TailEstimate> {
    if magnitudes.len() < TAIL_WINDOW {
        return Ok(TailEstimate { ratio: f64::NAN, absolute: f64::INFINITY, relative: f64::INFINITY });
    }
    let window = &magnitudes[magnitudes.len() - TAIL_WINDOW..];
    let points: Vec<(f64, f64)> = window
        .iter()
        .enumerate()
        .filter(|(_, &m)| m > 0.0)
        .map(|(i, &m)| (i as f64, m.ln()))
        .collect();
    if points.is_empty() {
        return Ok(TailEstimate { ratio: 0.0, absolute: 0.0, relative: 0.0 });
    }
    if points.len() < 2 {
        return Ok(TailEstimate { ratio: f64::NAN, absolute: f64::INFINITY, relative: f64::INFINITY });
    }
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = points.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = points.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    let ratio = (sxy / sxx).exp();
    if !ratio.is_finite() || ratio >= 1.0 {
        return Err(Error::Convergence(format!(
            "cell terms do not decay (fitted ratio {ratio:.4}); the local integral needs tempered parameters"
        )));
    }
    let absolute = window[TAIL_WINDOW - 1] / (1.0 - ratio);
    Ok(TailEstimate { ratio, absolute, relative: if total > 0.0 { absolute / total } else { f64::INFINITY } })
}

/// `Σ_{c=0}^{M} vol(K a_c K) Φ(c) conj(Ψ(c))`, where `Φ` is the spherical
/// function on `Sp_{4n+4}` of the degenerate `Σ_p` and `Ψ` the one on `Sp_2`
/// with Satake parameter `β`.
pub fn truncated_local_integral<S: Scalar>(
    n: i64,
    r: i64,
    alpha: &S,
    beta: &S,
    p: u64,
    truncation: usize,
) -> Result<LocalIntegral<S>> {
    if r != 1 {
        return Err(Error::NotImplemented(format!("local integral for r = {r}; only r = 1 is supported")));
    }
    let phi = SphericalEvaluator::new(degenerate_sigma_params(n, r, alpha, p)?)?;
    let psi = SphericalEvaluator::new(DeformedSatake::with_default_exponents(p, vec![beta.clone()])?)?;
    let datum = RootDatumC::new(1)?;

    let terms: Vec<S> = (0..=truncation as i64)
        .into_par_iter()
        .map(|c| -> Result<S> {
            let vol = cell_volume(&datum, &Cocharacter::new(vec![c]), p)?;
            let big = phi.value(&embedded_cocharacter(n, r, &[c])?)?;
            let small = psi.value(&Cocharacter::new(vec![c]))?;
            Ok(big.times(&small.conj()).times(&S::from_rational(&vol)))
        })
        .collect::<Result<_>>()?;
    let value = S::sum(&terms);
    let magnitudes: Vec<f64> = terms.iter().map(|t| t.to_hp().abs_f64()).collect();
    let tail = tail_estimate(&magnitudes, value.to_hp().abs_f64())?;
    Ok(LocalIntegral { value, terms, tail })
}
