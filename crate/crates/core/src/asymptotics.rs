//! Large-`N` expansions of the completion-time moments and the Gumbel
//! normalizations for uniform, Zipf and mixed families.
//!
//! Every expansion is reported term by term in its printed order so the
//! contribution of each correction can be inspected or plotted. With
//! `L = ln M`, `ℓ = ln ln(M/p)` and `γ` the Euler–Mascheroni constant:
//!
//! ```text
//! mixed mean    M^{p+1}  [L - ℓ + (γ - ln p) + ℓ/L - (1 + γ + 1/p)/L]
//! mixed second  M^{2p+2} [L² + 2(γ - ln p)L - 2ℓL + ℓ² + 2(ln p - γ + 1)ℓ
//!                          + (γ² + π²/6 - 2γ - 2 - 2/p + ln² p)]
//! Zipf mean     A_M M^p  [L - ℓ + (γ - ln p) + ℓ/ln(M/p) - (1 + γ + 1/p)/ln(M/p)]
//! ```
//!
//! The remainder `O((ln ln M / ln M)²)` is reported as a magnitude and never
//! added to the total.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::coupon_model::partial_sum_a;
use crate::error::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    MixedMean,
    MixedSecond,
    MixedVariance,
    ZipfMean,
    Uniform,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub name: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticReport {
    pub regime: Regime,
    pub terms: Vec<Term>,
    pub bracket_total: f64,
    pub leading_factor: f64,
    /// `leading_factor × bracket_total`.
    pub total: f64,
    /// Size of the omitted remainder relative to the bracket, `(ln ln M / ln M)²`.
    pub error_magnitude: f64,
}

impl AsymptoticReport {
    fn new(regime: Regime, leading_factor: f64, terms: Vec<(&str, f64)>, error_magnitude: f64) -> Self {
        let terms: Vec<Term> = terms
            .into_iter()
            .map(|(name, value)| Term {
                name: name.to_string(),
                value,
            })
            .collect();
        let bracket_total = terms.iter().map(|t| t.value).sum();
        Self {
            regime,
            terms,
            bracket_total,
            leading_factor,
            total: leading_factor * bracket_total,
            error_magnitude,
        }
    }

    pub fn term(&self, name: &str) -> Option<f64> {
        self.terms.iter().find(|t| t.name == name).map(|t| t.value)
    }
}

/// Centering `m_N` and scale `k_N` such that `(T_N - m_N) / k_N` is
/// asymptotically standard Gumbel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GumbelConstants {
    pub m_n: f64,
    pub k_n: f64,
}

impl GumbelConstants {
    pub fn normalize(&self, trials: f64) -> f64 {
        (trials - self.m_n) / self.k_n
    }
}

fn check_exponent(p: f64) -> Result<()> {
    if p.is_finite() && p > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidExponent(p))
    }
}

/// `ln(m/p)` and `ln ln(m/p)`, requiring `m/p > e` so both are positive.
fn log_pair(m: usize, p: f64) -> Result<(f64, f64)> {
    check_exponent(p)?;
    let ratio = m as f64 / p;
    if ratio.is_nan() || ratio <= std::f64::consts::E {
        return Err(Error::Domain(format!(
            "need m/p > e for ln ln(m/p) > 0, got m = {m}, p = {p}"
        )));
    }
    let l = ratio.ln();
    Ok((l, l.ln()))
}

fn remainder(m: usize) -> f64 {
    let l = (m as f64).ln();
    (l.ln() / l).powi(2)
}

/// Expansion of `E[T_N]` for the mixed family with `N = 2m`.
pub fn mixed_mean_asymptotic(m: usize, p: f64) -> Result<AsymptoticReport> {
    if m < 3 {
        return Err(Error::Domain(format!("mixed expansion needs m >= 3, got {m}")));
    }
    let (_, lnln) = log_pair(m, p)?;
    let ln_m = (m as f64).ln();
    let terms = vec![
        ("ln M", ln_m),
        ("-lnln(M/p)", -lnln),
        ("gamma - ln p", EULER_GAMMA - p.ln()),
        ("lnln(M/p)/ln M", lnln / ln_m),
        ("-(1+gamma+1/p)/ln M", -(1.0 + EULER_GAMMA + 1.0 / p) / ln_m),
    ];
    Ok(AsymptoticReport::new(
        Regime::MixedMean,
        (m as f64).powf(p + 1.0),
        terms,
        remainder(m),
    ))
}

/// Expansion of `E[T_N (T_N + 1)]` for the mixed family with `N = 2m`.
pub fn mixed_second_asymptotic(m: usize, p: f64) -> Result<AsymptoticReport> {
    if m < 3 {
        return Err(Error::Domain(format!("mixed expansion needs m >= 3, got {m}")));
    }
    let (_, lnln) = log_pair(m, p)?;
    let ln_m = (m as f64).ln();
    let ln_p = p.ln();
    let g = EULER_GAMMA;
    let terms = vec![
        ("ln^2 M", ln_m * ln_m),
        ("2(gamma - ln p) ln M", 2.0 * (g - ln_p) * ln_m),
        ("-2 lnln(M/p) ln M", -2.0 * lnln * ln_m),
        ("lnln(M/p)^2", lnln * lnln),
        ("2(ln p - gamma + 1) lnln(M/p)", 2.0 * (ln_p - g + 1.0) * lnln),
        (
            "gamma^2 + pi^2/6 - 2gamma - 2 - 2/p + ln^2 p",
            g * g + PI * PI / 6.0 - 2.0 * g - 2.0 - 2.0 / p + ln_p * ln_p,
        ),
    ];
    Ok(AsymptoticReport::new(
        Regime::MixedSecond,
        (m as f64).powf(2.0 * p + 2.0),
        terms,
        remainder(m),
    ))
}

/// Leading behaviour of `Var[T_N]` for the mixed family: `(π²/6) m^{2p+2}`.
pub fn mixed_variance_leading(m: usize, p: f64) -> Result<f64> {
    check_exponent(p)?;
    if m == 0 {
        return Err(Error::InvalidSize("need m >= 1".into()));
    }
    Ok(PI * PI / 6.0 * (m as f64).powf(2.0 * p + 2.0))
}

/// The same leading term as an [`AsymptoticReport`] with a single term.
pub fn mixed_variance_report(m: usize, p: f64) -> Result<AsymptoticReport> {
    let leading = (m as f64).powf(2.0 * p + 2.0);
    mixed_variance_leading(m, p)?;
    let err = if m >= 3 { remainder(m) } else { f64::NAN };
    Ok(AsymptoticReport::new(
        Regime::MixedVariance,
        leading,
        vec![("pi^2/6", PI * PI / 6.0)],
        err,
    ))
}

/// Gumbel normalization for the mixed family:
/// `m_N = m^{p+1}[ln(m/p) - ln ln(m/p)]`, `k_N = m^{p+1}`.
pub fn mixed_gumbel_constants(m: usize, p: f64) -> Result<GumbelConstants> {
    let (l, lnln) = log_pair(m, p)?;
    let k_n = (m as f64).powf(p + 1.0);
    Ok(GumbelConstants {
        m_n: k_n * (l - lnln),
        k_n,
    })
}

/// Gumbel normalization for the Zipf family:
/// `m_N = A_n n^p [ln(n/p) - ln ln(n/p)]`, `k_N = A_n n^p`.
pub fn zipf_gumbel_constants(n: usize, p: f64) -> Result<GumbelConstants> {
    let (l, lnln) = log_pair(n, p)?;
    let k_n = partial_sum_a(n, p)? * (n as f64).powf(p);
    Ok(GumbelConstants {
        m_n: k_n * (l - lnln),
        k_n,
    })
}

/// Erdős–Rényi normalization for `n` equally likely types: `m_N = n ln n`, `k_N = n`.
pub fn uniform_gumbel_constants(n: usize) -> Result<GumbelConstants> {
    if n < 2 {
        return Err(Error::Domain(format!("uniform normalization needs n >= 2, got {n}")));
    }
    let nf = n as f64;
    Ok(GumbelConstants {
        m_n: nf * nf.ln(),
        k_n: nf,
    })
}

/// Expansion of `E[T]` for the pure Zipf family on `m` types.
pub fn zipf_mean_asymptotic(m: usize, p: f64) -> Result<AsymptoticReport> {
    let (l, lnln) = log_pair(m, p)?;
    let ln_m = (m as f64).ln();
    let terms = vec![
        ("ln M", ln_m),
        ("-lnln(M/p)", -lnln),
        ("gamma - ln p", EULER_GAMMA - p.ln()),
        ("lnln(M/p)/ln(M/p)", lnln / l),
        ("-(1+gamma+1/p)/ln(M/p)", -(1.0 + EULER_GAMMA + 1.0 / p) / l),
    ];
    let leading = partial_sum_a(m, p)? * (m as f64).powf(p);
    Ok(AsymptoticReport::new(Regime::ZipfMean, leading, terms, remainder(m)))
}

/// Expansion of `E[T]` for `n` equally likely types: `n [ln n + γ + 1/(2n)]`.
pub fn uniform_mean_asymptotic(n: usize) -> Result<AsymptoticReport> {
    if n < 2 {
        return Err(Error::Domain(format!("uniform expansion needs n >= 2, got {n}")));
    }
    let nf = n as f64;
    Ok(AsymptoticReport::new(
        Regime::Uniform,
        nf,
        vec![("ln N", nf.ln()), ("gamma", EULER_GAMMA), ("1/(2N)", 0.5 / nf)],
        1.0 / (nf * nf),
    ))
}

/// Standard Gumbel distribution function `exp(-e^{-y})`.
pub fn gumbel_cdf(y: f64) -> f64 {
    (-(-y).exp()).exp()
}

/// Inverse of [`gumbel_cdf`]: `-ln(-ln q)`.
pub fn gumbel_quantile(q: f64) -> Result<f64> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::Domain(format!("quantile level must be in (0, 1), got {q}")));
    }
    Ok(-(-q.ln()).ln())
}
