//! Archimedean side: lowest-weight matrix coefficients on `Sp_{2d}(R)`, their
//! `L²` norms, the completed factors `L'_∞`, and the exact identity
//! `I(Φ_∞, Ψ_∞) = ℒ'_∞ · 2^{-(r²-r+2rn)} · [∏ Γ_R(2n+2i-1) Γ_R(2n+2i+1)]^{-1}`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::exact::{ExactNumber, HalfInt};
use crate::gamma::{delta_sp_infinity, gamma_r, GammaProduct};

/// Weight/degree data `(k, n, r)`: `f` has weight `2k`, the lift lives on
/// `Sp_{4n+4r}` and `g` on `Sp_{2r}` with weight `k+n+r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ArchimedeanParams {
    pub k: i64,
    pub n: i64,
    pub r: i64,
}

impl ArchimedeanParams {
    pub fn new(k: i64, n: i64, r: i64) -> Result<Self> {
        if k < 1 || n < 0 || r < 0 {
            return domain(format!("need k ≥ 1 and n, r ≥ 0, got (k, n, r) = ({k}, {n}, {r})"));
        }
        if n + r == 0 {
            return domain("need n + r > 0");
        }
        if (k + n + r) % 2 != 0 {
            return domain(format!("k + n + r = {} must be even", k + n + r));
        }
        Ok(Self { k, n, r })
    }

    /// Admissible for the identity chain: additionally `r ≥ 1` and `n < k`.
    pub fn for_chain(k: i64, n: i64, r: i64) -> Result<Self> {
        let p = Self::new(k, n, r)?;
        p.require_chain()?;
        Ok(p)
    }

    pub fn require_chain(&self) -> Result<()> {
        if self.r < 1 {
            return domain("the archimedean identity needs r ≥ 1");
        }
        if self.n >= self.k {
            return domain(format!("the archimedean identity needs n < k, got n = {}, k = {}", self.n, self.k));
        }
        Ok(())
    }

    /// Weight of the lowest `U(r)`-type, `k + n + r`.
    pub fn weight(&self) -> i64 {
        self.k + self.n + self.r
    }

    /// Every admissible chain point with `r ≤ rmax`, `n ≤ nmax`, `k ≤ kmax`.
    pub fn chain_grid(kmax: i64, nmax: i64, rmax: i64) -> Vec<Self> {
        let mut out = Vec::new();
        for r in 1..=rmax {
            for n in 0..=nmax {
                for k in (n + 1)..=kmax {
                    if let Ok(p) = Self::for_chain(k, n, r) {
                        out.push(p);
                    }
                }
            }
        }
        out
    }
}

/// Element `[[a, b], [c, d]]` of `Sp_2(R) = SL_2(R)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sp2RElement {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Sp2RElement {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        let scale = 1.0 + a.abs().max(b.abs()).max(c.abs()).max(d.abs()).powi(2);
        if (det - 1.0).abs() > 1e-9 * scale {
            return domain(format!("determinant {det} is not 1"));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn identity() -> Self {
        Self { a: 1.0, b: 0.0, c: 0.0, d: 1.0 }
    }

    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self { a: c, b: s, c: -s, d: c }
    }

    pub fn diagonal(t: f64) -> Self {
        Self { a: t, b: 0.0, c: 0.0, d: 1.0 / t }
    }

    /// `k_θ · diag(e^t, e^{-t}) · k_φ`.
    pub fn cartan(theta: f64, t: f64, phi: f64) -> Self {
        Self::rotation(theta)
            .mul(&Self::diagonal(t.exp()))
            .mul(&Self::rotation(phi))
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }
}

/// `2^w / (a + d + i(c - b))^w`, the normalised lowest-weight coefficient
/// of weight `w` on `Sp_2(R)`.
pub fn matrix_coefficient_infty(g: &Sp2RElement, w: u32) -> Result<Complex64> {
    if w == 0 {
        return domain("matrix coefficient needs w ≥ 1");
    }
    let z = Complex64::new(g.a + g.d, g.c - g.b);
    Ok((Complex64::new(2.0, 0.0) / z).powu(w))
}

fn two_pow(e: i64) -> ExactNumber {
    ExactNumber::two_pow(HalfInt::from_int(e))
}

/// The three printed expressions for `∫ |⟨τ(g)v₀, v₀⟩|² dg_C` on
/// `Sp_{2d}(R)`; all three must agree.
pub fn lemma_norm_squared_forms(d: i64, w: i64) -> Result<[ExactNumber; 3]> {
    if d < 1 {
        return domain("lemma_norm_squared needs d ≥ 1");
    }
    if w <= d {
        return domain(format!("lemma_norm_squared needs w > d, got w = {w}, d = {d}"));
    }
    let lead = two_pow(d * (d + 3) / 2);
    // Γ(x/2) = π^{x/2} Γ_R(x)
    let gamma_half = |x: i64| -> Result<ExactNumber> {
        Ok(&ExactNumber::pi_pow(HalfInt::from_twice(x)) * &gamma_r(x)?)
    };
    let mut first = &lead * &ExactNumber::pi_pow(HalfInt::from_int(d * (d + 1) / 2));
    let mut middle = lead.clone();
    let mut last = lead;
    for m in 1..=d {
        first = &first * &gamma_half(2 * w - (d + m))?.checked_div(&gamma_half(2 * w - (d - m))?)?;
        middle = &middle * &gamma_r(2 * w - (d + m))?.checked_div(&gamma_r(2 * w - (d - m))?)?;
        last = &last * &gamma_r(2 * w - 2 * d + m - 1)?.checked_div(&gamma_r(2 * w - d + m)?)?;
    }
    Ok([first, middle, last])
}

/// `2^{d(d+3)/2} ∏_{m=1}^{d} Γ_R(2w-2d+m-1) / Γ_R(2w-d+m)`.
pub fn lemma_norm_squared(d: i64, w: i64) -> Result<ExactNumber> {
    let [_, _, last] = lemma_norm_squared_forms(d, w)?;
    Ok(last)
}

/// Exact `I(Φ_∞, Ψ_∞) = (Δ_{Sp_{2r}})_∞^{-1} 2^{r(r+3)/2}
/// ∏_{i=1}^{r} Γ_R(2k+2n+i-1) / Γ_R(2k+2n+r+i)`.
pub fn closed_form_i_infinity(p: &ArchimedeanParams) -> Result<ExactNumber> {
    if p.r < 1 {
        return domain("I(Φ_∞, Ψ_∞) needs r ≥ 1");
    }
    let (k, n, r) = (p.k, p.n, p.r);
    let mut prod = GammaProduct::with_prefactor(two_pow(r * (r + 3) / 2));
    for i in 1..=r {
        prod.push(crate::gamma::GammaKind::Real, 2 * k + 2 * n + i - 1, 1);
        prod.push(crate::gamma::GammaKind::Real, 2 * k + 2 * n + r + i, -1);
    }
    Ok(&prod.evaluate()? * &delta_sp_infinity(r)?.reciprocal()?)
}

/// `L'_∞(s, st(g) ⊠ f) = Γ_C(s) ∏_{i=1}^{r} Γ_C(s+n-k+i) Γ_C(s+n+k+i-1)`.
pub fn l_infty_st_boxtimes_product(p: &ArchimedeanParams, s: i64) -> GammaProduct {
    let mut prod = GammaProduct::new().complex(s, 1);
    for i in 1..=p.r {
        prod.push(crate::gamma::GammaKind::Complex, s + p.n - p.k + i, 1);
        prod.push(crate::gamma::GammaKind::Complex, s + p.n + p.k + i - 1, 1);
    }
    prod
}

/// `L'_∞(k+n, st(g) ⊠ f)`.
pub fn l_infty_st_boxtimes(p: &ArchimedeanParams) -> Result<ExactNumber> {
    l_infty_st_boxtimes_product(p, p.k + p.n).evaluate()
}

/// `L'_∞(s, f) = Γ_C(s)`.
pub fn l_infty_f_product(s: i64) -> GammaProduct {
    GammaProduct::new().complex(s, 1)
}

/// `L'_∞(s, f, Ad) = Γ_R(s+1) Γ_C(s+2k-1)`.
pub fn l_infty_adjoint_product(k: i64, s: i64) -> GammaProduct {
    GammaProduct::new().real(s + 1, 1).complex(s + 2 * k - 1, 1)
}

/// `ℒ'_∞` as a formal product, before evaluation.
pub fn script_l_prime_infinity_product(p: &ArchimedeanParams) -> Result<GammaProduct> {
    let (k, n, r) = (p.k, p.n, p.r);
    if r < 1 {
        return domain("ℒ'_∞ needs r ≥ 1");
    }
    let delta_ratio = delta_sp_infinity(2 * n + 2 * r)?
        .checked_div(&(&delta_sp_infinity(r)? * &delta_sp_infinity(2 * n + r)?))?;
    let mut denom = l_infty_f_product(k + n + r);
    for i in 1..=r {
        denom = denom
            .combine(&l_infty_adjoint_product(k, 2 * n + 2 * i - 1))
            .real(2 * n + 2 * i, 1);
    }
    Ok(l_infty_st_boxtimes_product(p, k + n)
        .times_prefactor(&delta_ratio)
        .combine(&denom.inverse()?))
}

/// `ℒ'_∞ = [Δ ratio]_∞ · L'_∞(k+n, st(g)⊠f) /
/// (L'_∞(k+n+r, f) ∏ L'_∞(2n+2i-1, f, Ad) ζ_∞(2n+2i))`.
pub fn script_l_prime_infinity(p: &ArchimedeanParams) -> Result<ExactNumber> {
    script_l_prime_infinity_product(p)?.evaluate()
}

/// `∏_{i=1}^{r} Γ_R(2n+2i-1) Γ_R(2n+2i+1)`.
pub fn gamma_correction(p: &ArchimedeanParams) -> Result<ExactNumber> {
    (1..=p.r)
        .map(|i| Ok(&gamma_r(2 * p.n + 2 * i - 1)? * &gamma_r(2 * p.n + 2 * i + 1)?))
        .product()
}

/// Exponent `r² - r + 2rn`.
pub fn chain_power_of_two(p: &ArchimedeanParams) -> i64 {
    p.r * p.r - p.r + 2 * p.r * p.n
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub params: ArchimedeanParams,
    /// `ℒ'_∞ · [∏ Γ_R Γ_R]^{-1}`.
    pub lhs: String,
    /// `I(Φ_∞, Ψ_∞) · 2^{r²-r+2rn}`.
    pub rhs: String,
    pub holds: bool,
    /// Intermediate equalities of the derivation, `(name, holds)`.
    pub middle: Vec<(String, bool)>,
}

/// Checks the archimedean identity exactly at one parameter point.
pub fn check_archimedean_chain(p: &ArchimedeanParams) -> Result<ChainReport> {
    p.require_chain()?;
    let lhs = script_l_prime_infinity(p)?.checked_div(&gamma_correction(p)?)?;
    let rhs = &closed_form_i_infinity(p)? * &two_pow(chain_power_of_two(p));

    let (k, n, r) = (p.k, p.n, p.r);
    // L'_∞(k+n+r,f) ∏ L'_∞(2n+2i-1,f,Ad) ζ_∞(2n+2i) Γ_R(2n+2i-1) Γ_R(2n+2i+1)
    //   = Γ_C(n+r+k) ∏ Γ_C(2n+2k+2i-2) Γ_C(2n+i) Γ_C(2n+r+i)
    let mut before = l_infty_f_product(k + n + r);
    let mut after = GammaProduct::new().complex(n + r + k, 1);
    for i in 1..=r {
        before = before
            .combine(&l_infty_adjoint_product(k, 2 * n + 2 * i - 1))
            .real(2 * n + 2 * i, 1)
            .real(2 * n + 2 * i - 1, 1)
            .real(2 * n + 2 * i + 1, 1);
        after = after
            .complex(2 * n + 2 * k + 2 * i - 2, 1)
            .complex(2 * n + i, 1)
            .complex(2 * n + r + i, 1);
    }
    let denominators = before.evaluate()? == after.evaluate()?;
    let canonical = before.canonicalize() == after.canonicalize();
    let i_via_lemma = closed_form_i_infinity(p)?
        == &lemma_norm_squared(r, p.weight())? * &delta_sp_infinity(r)?.reciprocal()?;

    Ok(ChainReport {
        params: *p,
        holds: lhs == rhs,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        middle: vec![
            ("denominator Γ_C rewrite".to_string(), denominators),
            ("denominator rewrite (canonical Γ_R multiset)".to_string(), canonical),
            ("I_∞ = (Δ_{2r})_∞^{-1} · lemma norm".to_string(), i_via_lemma),
        ],
    })
}

/// Numerical estimate with an error bar.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadratureEstimate {
    pub value: f64,
    pub error_bar: f64,
    /// False when the integrand decays too slowly for the error bar to be
    /// trusted (convergence margin `w - d < 2`).
    pub reliable: bool,
    pub evaluations: usize,
}

/// Composite Simpson rule on `[0, upper]` with `intervals` (even) pieces.
fn simpson(f: &dyn Fn(f64) -> f64, upper: f64, intervals: usize) -> f64 {
    let h = upper / intervals as f64;
    let mut s = f(0.0) + f(upper);
    for j in 1..intervals {
        let w = if j % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(j as f64 * h);
    }
    s * h / 3.0
}

/// Integrates `|2^w / (a+d+i(c-b))^w|²` over `Sp_2(R)` against `dg_C`.
///
/// Uses `g = k_θ a_t k_φ` with `dg_C = 4 sinh(2t) dt dθ dφ/(2π)`, `θ ∈ [0, π)`,
/// `φ ∈ [0, 2π)`; the angular directions use a periodic trapezoid rule and
/// `t` a composite Simpson rule whose error is estimated by halving.
pub fn numeric_integral_sp2(w: u32, budget: usize) -> Result<QuadratureEstimate> {
    if w < 2 {
        return domain(format!("numeric_integral_sp2 needs w ≥ 2 (w > d), got {w}"));
    }
    const ANGLES: usize = 3;
    let per_t = ANGLES * ANGLES;
    let mut intervals = (budget / per_t).max(4);
    intervals -= intervals % 4;
    let decay = 2.0 * w as f64 - 2.0;
    let upper = 40.0 / decay + 2.0;

    let integrand = |t: f64| -> f64 {
        let mut acc = 0.0;
        for i in 0..ANGLES {
            let theta = std::f64::consts::PI * i as f64 / ANGLES as f64;
            for j in 0..ANGLES {
                let phi = 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / ANGLES as f64;
                let g = Sp2RElement::cartan(theta, t, phi);
                let v = matrix_coefficient_infty(&g, w).expect("w ≥ 1");
                acc += v.norm_sqr();
            }
        }
        // θ-average times π (length of θ range); φ-average is the dφ/(2π) integral.
        std::f64::consts::PI * acc / (ANGLES * ANGLES) as f64 * 4.0 * (2.0 * t).sinh()
    };
    let fine = simpson(&integrand, upper, intervals);
    let coarse = simpson(&integrand, upper, intervals / 2);
    let richardson = (fine - coarse).abs() / 15.0;
    // ∫_T^∞ π · 4 sinh(2t) · 2^{2w} e^{-2wt} dt ≤ π 2^{2w+1} e^{-(2w-2)T} / (2w-2)
    let tail = std::f64::consts::PI * 2f64.powi(2 * w as i32 + 1) * (-decay * upper).exp() / decay;
    let error_bar = richardson + tail + 1e-13 * fine.abs();
    Ok(QuadratureEstimate {
        value: fine,
        error_bar,
        reliable: w >= 3,
        evaluations: (intervals + 1 + intervals / 2 + 1) * per_t,
    })
}

/// `lemma_norm_squared(d, w)` as a float, for comparison with quadrature.
pub fn lemma_norm_squared_f64(d: i64, w: i64) -> Result<f64> {
    Ok(lemma_norm_squared(d, w)?.to_f64())
}
