//! Coupon probability families and their weight sums.
//!
//! A family is built from strictly positive weights `b_1..b_N` normalized by
//! their total `B_N`. Three generators are provided:
//!
//! - uniform: `b_j = 1`
//! - generalized Zipf: `b_j = j^-p`
//! - mixed: a uniform and a Zipf subsequence interleaved, `b_{2j-1} = 1`,
//!   `b_{2j} = j^-p`, so `N = 2M` and `B_N = M + A_M`.
//!
//! Families are immutable once built and can be shared freely across threads.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::summation::{compensated_sum, CompensatedSum};

/// Number of explicit terms in the zeta partial sum before the Euler–Maclaurin tail.
const ZETA_TERMS: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Uniform,
    Zipf,
    Mixed,
    Custom,
}

impl std::fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            FamilyKind::Uniform => "uniform",
            FamilyKind::Zipf => "zipf",
            FamilyKind::Mixed => "mixed",
            FamilyKind::Custom => "custom",
        };
        f.write_str(s)
    }
}

/// A normalized coupon distribution together with the weights it came from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CouponFamily {
    kind: FamilyKind,
    n_types: usize,
    zipf_exponent: Option<f64>,
    weights: Vec<f64>,
    probs: Vec<f64>,
    weight_sum: f64,
}

impl CouponFamily {
    /// `N` equally likely coupon types.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize("uniform family needs n >= 1".into()));
        }
        Self::from_parts(FamilyKind::Uniform, None, vec![1.0; n])
    }

    /// Generalized Zipf law `b_j = j^-p`, `j = 1..n`.
    pub fn zipf(n: usize, p: f64) -> Result<Self> {
        check_exponent(p)?;
        if n == 0 {
            return Err(Error::InvalidSize("zipf family needs n >= 1".into()));
        }
        let weights = (1..=n).map(|j| zipf_weight(j, p)).collect();
        Self::from_parts(FamilyKind::Zipf, Some(p), weights)
    }

    /// Mixed family with `m` uniform and `m` Zipf types, interleaved (`N = 2m`).
    pub fn mixed(m: usize, p: f64) -> Result<Self> {
        check_exponent(p)?;
        if m == 0 {
            return Err(Error::InvalidSize("mixed family needs m >= 1".into()));
        }
        let mut weights = Vec::with_capacity(2 * m);
        for j in 1..=m {
            weights.push(1.0);
            weights.push(zipf_weight(j, p));
        }
        Self::from_parts(FamilyKind::Mixed, Some(p), weights)
    }

    /// Arbitrary strictly positive weights.
    pub fn from_weights(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidSize("custom family needs at least one weight".into()));
        }
        if let Some((j, w)) = weights.iter().enumerate().find(|(_, w)| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::InvalidArgument(format!(
                "weight {} is {w}; weights must be finite and > 0",
                j + 1
            )));
        }
        Self::from_parts(FamilyKind::Custom, None, weights)
    }

    fn from_parts(kind: FamilyKind, zipf_exponent: Option<f64>, weights: Vec<f64>) -> Result<Self> {
        let weight_sum = compensated_sum(weights.iter().copied());
        if !weight_sum.is_finite() {
            return Err(Error::InvalidArgument("weight sum is not finite".into()));
        }
        let probs: Vec<f64> = weights.iter().map(|b| b / weight_sum).collect();
        // A type with probability 0 is never collected.
        if let Some(j) = probs.iter().position(|&p| p == 0.0 || !p.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "probability of type {} underflows to zero",
                j + 1
            )));
        }
        Ok(Self {
            kind,
            n_types: weights.len(),
            zipf_exponent,
            weights,
            probs,
            weight_sum,
        })
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn n_types(&self) -> usize {
        self.n_types
    }

    /// Zipf exponent `p` for Zipf and mixed families.
    pub fn zipf_exponent(&self) -> Option<f64> {
        self.zipf_exponent
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// `B_N`, the sum of the unnormalized weights.
    pub fn weight_sum(&self) -> f64 {
        self.weight_sum
    }

    pub fn min_prob(&self) -> f64 {
        self.probs.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Half the number of types for a mixed family.
    pub fn half_size(&self) -> Option<usize> {
        (self.kind == FamilyKind::Mixed).then_some(self.n_types / 2)
    }
}

/// Serializable description of a family, as accepted on the command line and
/// in JSON input.
///
/// For the mixed kind `n` is the total number of types and must be even.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FamilySpec {
    Uniform { n: usize },
    Zipf { n: usize, p: f64 },
    Mixed { n: usize, p: f64 },
    Custom { weights: Vec<f64> },
}

impl FamilySpec {
    pub fn build(&self) -> Result<CouponFamily> {
        match self {
            FamilySpec::Uniform { n } => CouponFamily::uniform(*n),
            FamilySpec::Zipf { n, p } => CouponFamily::zipf(*n, *p),
            FamilySpec::Mixed { n, p } => {
                if n % 2 != 0 {
                    return Err(Error::InvalidSize(format!(
                        "mixed family needs an even number of types, got {n}"
                    )));
                }
                CouponFamily::mixed(n / 2, *p)
            }
            FamilySpec::Custom { weights } => CouponFamily::from_weights(weights.clone()),
        }
    }
}

fn check_exponent(p: f64) -> Result<()> {
    if p.is_finite() && p > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidExponent(p))
    }
}

#[inline]
fn zipf_weight(j: usize, p: f64) -> f64 {
    (j as f64).powf(-p)
}

/// `A_m = sum_{j=1}^m j^-p`, accumulated with compensation.
pub fn partial_sum_a(m: usize, p: f64) -> Result<f64> {
    check_exponent(p)?;
    if m == 0 {
        return Err(Error::InvalidSize("partial sum needs m >= 1".into()));
    }
    // Smallest terms first.
    Ok(compensated_sum((1..=m).rev().map(|j| zipf_weight(j, p))))
}

/// Riemann zeta function for real `p > 1`.
///
/// Sums the first 10^4 terms and adds the Euler–Maclaurin tail through the
/// `B_2` correction. The truncation error is below `1e-15` for `p >= 1.1`.
pub fn zeta(p: f64) -> Result<f64> {
    if p.is_nan() || p <= 1.0 {
        return Err(Error::DivergentSeries(p));
    }
    if p.is_infinite() {
        return Ok(1.0);
    }
    let k = ZETA_TERMS as f64;
    let mut acc: CompensatedSum = (1..=ZETA_TERMS).rev().map(|j| (j as f64).powf(-p)).collect();
    // sum_{j>K} f(j) = int_K^inf f - f(K)/2 - f'(K)/12 + ...
    acc.add(k.powf(1.0 - p) / (p - 1.0));
    acc.add(-0.5 * k.powf(-p));
    acc.add(p * k.powf(-p - 1.0) / 12.0);
    Ok(acc.value())
}

/// Growth regime of `A_m` as `m` grows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightSumRegime {
    /// `p > 1`: `A_m -> zeta(p)`.
    Convergent,
    /// `p = 1`: `A_m ~ ln m`.
    Logarithmic,
    /// `0 < p < 1`: `A_m ~ m^(1-p) / (1-p)`.
    PowerLaw,
}

/// Leading asymptotic form of `A_m` and the regime it belongs to.
pub fn a_asymptotic(m: usize, p: f64) -> Result<(f64, WeightSumRegime)> {
    check_exponent(p)?;
    if m < 2 {
        return Err(Error::InvalidSize("asymptotic weight sum needs m >= 2".into()));
    }
    let mf = m as f64;
    if p > 1.0 {
        Ok((zeta(p)?, WeightSumRegime::Convergent))
    } else if p == 1.0 {
        Ok((mf.ln(), WeightSumRegime::Logarithmic))
    } else {
        Ok((mf.powf(1.0 - p) / (1.0 - p), WeightSumRegime::PowerLaw))
    }
}
