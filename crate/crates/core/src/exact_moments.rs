//! Exact moments and distribution of the completion time `T_N`.
//!
//! Moments come from the Poissonized representation
//!
//! ```text
//! E[T]        =     ∫_0^∞   [1 - Π_j (1 - e^{-p_j t})] dt
//! E[T(T+1)]   = 2 · ∫_0^∞ t [1 - Π_j (1 - e^{-p_j t})] dt
//! Var[T]      = E[T(T+1)] - E[T] - E[T]²
//! ```
//!
//! integrated adaptively on `[0, T_max]` with
//! `T_max = (ln N + ln(1/ε)) / min_j p_j`, past which the integrand is bounded
//! by `N e^{-p_min t} <= ε`. Inclusion–exclusion over all `2^N` subsets gives an
//! independent exact route for small `N`.

use serde::{Deserialize, Serialize};

use crate::coupon_model::{partial_sum_a, CouponFamily};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_with_breakpoints, QuadratureSettings};
use crate::summation::CompensatedSum;

/// Largest family handled by subset enumeration unless a cap is given explicitly.
pub const DEFAULT_SUBSET_CAP: usize = 24;

/// Largest `m` accepted by [`decomposition_check`]; the binomial alternating
/// sum loses too many digits beyond this.
pub const MAX_DECOMPOSITION_M: usize = 12;

const INITIAL_PANELS: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Integral,
    InclusionExclusion,
    MonteCarlo,
    Asymptotic,
}

/// Moments of `T_N` from one method. Fields a computation did not produce are `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentReport {
    pub expectation: Option<f64>,
    pub second_rising: Option<f64>,
    pub variance: Option<f64>,
    pub method: Method,
    pub abs_error_estimate: f64,
}

/// `ln(1 - e^{-x})` for `x >= 0`, accurate at both ends.
#[inline]
pub(crate) fn ln_one_minus_exp_neg(x: f64) -> f64 {
    if x <= std::f64::consts::LN_2 {
        (-(-x).exp_m1()).ln()
    } else {
        (-(-x).exp()).ln_1p()
    }
}

/// `ln Π_j (1 - e^{-p_j t})`: log-probability that every type has arrived by
/// Poisson time `t`.
#[inline]
fn log_all_collected(probs: &[f64], t: f64) -> f64 {
    let mut s = 0.0;
    for &p in probs {
        s += ln_one_minus_exp_neg(p * t);
    }
    s
}

/// `P(τ > t)` for the Poissonized completion time.
#[inline]
fn survival(probs: &[f64], t: f64) -> f64 {
    -log_all_collected(probs, t).exp_m1()
}

fn truncation_point(family: &CouponFamily, settings: &QuadratureSettings) -> f64 {
    let n = family.n_types() as f64;
    (n.ln() + (1.0 / settings.tail_epsilon).ln()) / family.min_prob()
}

/// `E[T_N]` by quadrature.
pub fn expectation_integral(family: &CouponFamily, settings: &QuadratureSettings) -> Result<MomentReport> {
    settings.validate()?;
    let probs = family.probs();
    let t_max = truncation_point(family, settings);
    let r = integrate_with_breakpoints(
        |t| survival(probs, t),
        0.0,
        t_max,
        &[],
        INITIAL_PANELS,
        settings.rel_tol,
        0.0,
        settings.max_subdivisions,
    )?;
    // ∫_{T}^∞ N e^{-p_min t} dt = ε / p_min
    let tail = settings.tail_epsilon / family.min_prob();
    Ok(MomentReport {
        expectation: Some(r.value),
        second_rising: None,
        variance: None,
        method: Method::Integral,
        abs_error_estimate: r.abs_error + tail,
    })
}

/// `E[T_N (T_N + 1)]` by quadrature.
pub fn second_rising_integral(family: &CouponFamily, settings: &QuadratureSettings) -> Result<MomentReport> {
    settings.validate()?;
    let probs = family.probs();
    let t_max = truncation_point(family, settings);
    let r = integrate_with_breakpoints(
        |t| 2.0 * t * survival(probs, t),
        0.0,
        t_max,
        &[],
        INITIAL_PANELS,
        settings.rel_tol,
        0.0,
        settings.max_subdivisions,
    )?;
    let p = family.min_prob();
    // 2 ∫_{T}^∞ t N e^{-p t} dt = 2 ε (T/p + 1/p²)
    let tail = 2.0 * settings.tail_epsilon * (t_max / p + 1.0 / (p * p));
    Ok(MomentReport {
        expectation: None,
        second_rising: Some(r.value),
        variance: None,
        method: Method::Integral,
        abs_error_estimate: r.abs_error + tail,
    })
}

/// All three moments by quadrature; `Var = E[T(T+1)] - E[T] - E[T]²`.
pub fn variance_exact(family: &CouponFamily, settings: &QuadratureSettings) -> Result<MomentReport> {
    let first = expectation_integral(family, settings)?;
    let second = second_rising_integral(family, settings)?;
    let e = first.expectation.expect("expectation present");
    let s = second.second_rising.expect("second moment present");
    let err = second.abs_error_estimate + (1.0 + 2.0 * e) * first.abs_error_estimate;
    let mut variance = s - e - e * e;
    // Deterministic T (one type) can land a hair below zero.
    if variance < 0.0 && -variance <= err {
        variance = 0.0;
    }
    Ok(MomentReport {
        expectation: Some(e),
        second_rising: Some(s),
        variance: Some(variance),
        method: Method::Integral,
        abs_error_estimate: err,
    })
}

/// Calls `visit(odd, p_in, p_out)` for every subset `J` of types, where
/// `odd` is the parity of `|J|`, `p_in = P_J` and `p_out = 1 - P_J` computed
/// as the sum over the complement.
///
/// Subset sums come from two lookup tables over the low and high halves of
/// the type list, so each `P_J` carries at most `N` roundings instead of
/// drifting along an incremental walk.
fn for_each_subset<F: FnMut(bool, f64, f64)>(probs: &[f64], mut visit: F) {
    let n = probs.len();
    let lo_bits = n / 2;
    let (lo_probs, hi_probs) = probs.split_at(lo_bits);
    let (lo_sum, lo_odd) = subset_table(lo_probs);
    let (hi_sum, hi_odd) = subset_table(hi_probs);
    let lo_mask = (1usize << lo_bits) - 1;
    let hi_mask = (1usize << (n - lo_bits)) - 1;
    for hi in 0..=hi_mask {
        let hi_in = hi_sum[hi];
        let hi_out = hi_sum[!hi & hi_mask];
        for lo in 0..=lo_mask {
            let odd = hi_odd[hi] != lo_odd[lo];
            visit(odd, hi_in + lo_sum[lo], hi_out + lo_sum[!lo & lo_mask]);
        }
    }
}

fn subset_table(probs: &[f64]) -> (Vec<f64>, Vec<bool>) {
    let size = 1usize << probs.len();
    let mut sums = vec![0.0; size];
    let mut odd = vec![false; size];
    for mask in 1..size {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        sums[mask] = sums[rest] + probs[low];
        odd[mask] = !odd[rest];
    }
    (sums, odd)
}

fn check_cap(family: &CouponFamily, cap: usize) -> Result<()> {
    if family.n_types() > cap || family.n_types() >= usize::BITS as usize {
        Err(Error::SizeLimit {
            n_types: family.n_types(),
            cap,
        })
    } else {
        Ok(())
    }
}

/// `P(T_N <= n_trials)` by inclusion–exclusion, for families of at most
/// [`DEFAULT_SUBSET_CAP`] types.
pub fn cdf_inclusion_exclusion(family: &CouponFamily, n_trials: u64) -> Result<f64> {
    cdf_inclusion_exclusion_capped(family, n_trials, DEFAULT_SUBSET_CAP)
}

pub fn cdf_inclusion_exclusion_capped(family: &CouponFamily, n_trials: u64, cap: usize) -> Result<f64> {
    check_cap(family, cap)?;
    if n_trials < family.n_types() as u64 {
        return Ok(0.0);
    }
    let n = n_trials as f64;
    let mut acc = CompensatedSum::new();
    acc.add(1.0); // J = ∅
    let mut first = true;
    for_each_subset(family.probs(), |odd, _, p_out| {
        if std::mem::take(&mut first) {
            return;
        }
        let term = p_out.powf(n);
        acc.add(if odd { -term } else { term });
    });
    Ok(acc.value().clamp(0.0, 1.0))
}

/// `E[T_N] = Σ_{J ≠ ∅} (-1)^{|J|+1} / P_J`.
pub fn expectation_inclusion_exclusion(family: &CouponFamily) -> Result<f64> {
    expectation_inclusion_exclusion_capped(family, DEFAULT_SUBSET_CAP)
}

pub fn expectation_inclusion_exclusion_capped(family: &CouponFamily, cap: usize) -> Result<f64> {
    check_cap(family, cap)?;
    let mut acc = CompensatedSum::new();
    for_each_subset(family.probs(), |odd, p_in, _| {
        if p_in > 0.0 {
            let term = 1.0 / p_in;
            acc.add(if odd { term } else { -term });
        }
    });
    Ok(acc.value())
}

/// `W_k(m) = ∫_0^1 y^{k-1} Π_{j=1}^m (1 - y^{j^-p}) dy`, or with an extra
/// factor `ln y` when `log_kernel` is set.
///
/// Evaluated as `∫_0^∞ e^{-ks} Π_j (1 - e^{-s j^-p}) ds` after `y = e^{-s}`,
/// which removes the algebraic endpoint behaviour at `y = 0`. The integrand is
/// log-concave in `s`, so its peak is found by bisection on the log-derivative
/// and the right tail is bounded by `g(S) / |(ln g)'(S)|`.
pub fn wk_integral(m: usize, p: f64, k: usize, log_kernel: bool, settings: &QuadratureSettings) -> Result<f64> {
    settings.validate()?;
    if !(p.is_finite() && p > 0.0) {
        return Err(Error::InvalidExponent(p));
    }
    if m == 0 || k == 0 {
        return Err(Error::InvalidArgument(format!(
            "need m >= 1 and k >= 1, got m = {m}, k = {k}"
        )));
    }
    let a: Vec<f64> = (1..=m).map(|j| (j as f64).powf(-p)).collect();
    let kf = k as f64;
    let log_g = |s: f64| {
        let mut v = -kf * s + log_all_collected(&a, s);
        if log_kernel {
            v += s.ln();
        }
        v
    };
    let slope = |s: f64| {
        let mut d = -kf;
        for &aj in &a {
            d += aj / (aj * s).exp_m1();
        }
        if log_kernel {
            d += 1.0 / s;
        }
        d
    };

    let mut hi = 1.0;
    while slope(hi) > 0.0 {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if slope(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-13 * hi {
            break;
        }
    }
    let peak = 0.5 * (lo + hi);
    let log_peak = log_g(peak);

    // Walk right until the log-concave tail bound is negligible.
    let drop = (1.0 / settings.tail_epsilon).ln() + 5.0;
    let mut step = peak.max(1.0 / kf);
    let mut end = peak + step;
    while log_g(end) > log_peak - drop || slope(end) >= 0.0 {
        step *= 2.0;
        end = peak + step;
    }
    // Integrate g / g(peak) so the integrand stays O(1) however small W_k is.
    let scaled = |s: f64| {
        if s <= 0.0 {
            0.0
        } else {
            (log_g(s) - log_peak).exp()
        }
    };
    let r = integrate_with_breakpoints(
        scaled,
        0.0,
        end,
        &[peak],
        INITIAL_PANELS / 4,
        settings.rel_tol,
        0.0,
        settings.max_subdivisions,
    )?;
    let tail = (log_g(end) - log_peak).exp() / slope(end).abs();
    let value = (r.value + tail) * log_peak.exp();
    Ok(if log_kernel { -value } else { value })
}

/// Both sides of the split of `E[T_N]` (and `E[T_N^(2)]`) for the mixed family
/// into its Zipf part and a binomial alternating sum of `W_k` (`Q_k`) terms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionCheck {
    pub m: usize,
    pub p: f64,
    /// `E[T_N]` of the mixed family, by direct quadrature.
    pub mixed_expectation: f64,
    /// `E[T̃_M]` of the pure Zipf family on `M` types.
    pub zipf_expectation: f64,
    /// `Σ_k C(M,k) (-1)^k W_k(M)`.
    pub alternating_sum: f64,
    /// `B_N [A_M^{-1} E[T̃_M] - Σ_k C(M,k) (-1)^k W_k(M)]`.
    pub reconstructed_expectation: f64,
    pub residual: f64,
    pub mixed_second_rising: f64,
    /// `Σ_k C(M,k) (-1)^k Q_k(M)`.
    pub alternating_log_sum: f64,
    /// `B_N² [A_M^{-2} E[T̃_M^(2)] + 2 Σ_k C(M,k) (-1)^k Q_k(M)]`.
    pub reconstructed_second_rising: f64,
    pub second_rising_residual: f64,
}

/// Relative residual between the directly integrated `E[T_N]` of the mixed
/// family and its reconstruction from the Zipf subfamily and the `W_k`.
pub fn decomposition_check(m: usize, p: f64, settings: &QuadratureSettings) -> Result<DecompositionCheck> {
    if m == 0 || m > MAX_DECOMPOSITION_M {
        return Err(Error::InvalidArgument(format!(
            "decomposition check needs 1 <= m <= {MAX_DECOMPOSITION_M}, got {m}"
        )));
    }
    let mixed = CouponFamily::mixed(m, p)?;
    let zipf = CouponFamily::zipf(m, p)?;
    let b = mixed.weight_sum();
    let a = partial_sum_a(m, p)?;

    let mixed_moments = variance_exact(&mixed, settings)?;
    let zipf_moments = variance_exact(&zipf, settings)?;
    let mixed_e = mixed_moments.expectation.unwrap_or_default();
    let mixed_s = mixed_moments.second_rising.unwrap_or_default();
    let zipf_e = zipf_moments.expectation.unwrap_or_default();
    let zipf_s = zipf_moments.second_rising.unwrap_or_default();

    let mut w_sum = CompensatedSum::new();
    let mut q_sum = CompensatedSum::new();
    let mut binom = 1.0f64;
    for k in 1..=m {
        binom = binom * (m + 1 - k) as f64 / k as f64;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        w_sum.add(sign * binom * wk_integral(m, p, k, false, settings)?);
        q_sum.add(sign * binom * wk_integral(m, p, k, true, settings)?);
    }
    let alternating_sum = w_sum.value();
    let alternating_log_sum = q_sum.value();

    let reconstructed_expectation = b * (zipf_e / a - alternating_sum);
    let reconstructed_second_rising = b * b * (zipf_s / (a * a) + 2.0 * alternating_log_sum);
    Ok(DecompositionCheck {
        m,
        p,
        mixed_expectation: mixed_e,
        zipf_expectation: zipf_e,
        alternating_sum,
        reconstructed_expectation,
        residual: ((mixed_e - reconstructed_expectation) / mixed_e).abs(),
        mixed_second_rising: mixed_s,
        alternating_log_sum,
        reconstructed_second_rising,
        second_rising_residual: ((mixed_s - reconstructed_second_rising) / mixed_s).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tight() -> QuadratureSettings {
        QuadratureSettings::default().with_rel_tol(1e-12)
    }

    #[test]
    fn stable_log_factor() {
        for x in [1e-300, 1e-12, 0.3, std::f64::consts::LN_2, 2.0, 40.0, 800.0] {
            let naive = (1.0 - (-x).exp()).ln();
            let got = ln_one_minus_exp_neg(x);
            if (1e-6..30.0).contains(&x) {
                assert!((got - naive).abs() < 1e-12 * naive.abs().max(1e-300), "x = {x}");
            }
            assert!(got.is_finite() && got <= 0.0);
        }
        assert!((ln_one_minus_exp_neg(1e-12) - (1e-12f64).ln()).abs() < 1e-11);
        assert_eq!(ln_one_minus_exp_neg(0.0), f64::NEG_INFINITY);
    }

    #[test]
    fn uniform_expectations() {
        let s = QuadratureSettings::default();
        let one = expectation_integral(&CouponFamily::uniform(1).unwrap(), &s).unwrap();
        assert!((one.expectation.unwrap() - 1.0).abs() < 1e-9);
        let three = expectation_integral(&CouponFamily::uniform(3).unwrap(), &s).unwrap();
        assert!((three.expectation.unwrap() - 5.5).abs() < 1e-8);
        assert_eq!(three.method, Method::Integral);
        assert!(three.second_rising.is_none());
    }

    #[test]
    fn mixed_two_matches_subset_oracle() {
        let f = CouponFamily::mixed(2, 1.0).unwrap();
        // probs 2/7, 2/7, 2/7, 1/7; explicit sum over the 15 nonempty subsets.
        let p = [2.0 / 7.0, 2.0 / 7.0, 2.0 / 7.0, 1.0 / 7.0];
        let mut oracle = 0.0;
        for mask in 1u32..16 {
            let pj: f64 = (0..4).filter(|i| mask >> i & 1 == 1).map(|i| p[i]).sum();
            let sign = if mask.count_ones() % 2 == 1 { 1.0 } else { -1.0 };
            oracle += sign / pj;
        }
        let e = expectation_integral(&f, &QuadratureSettings::default()).unwrap();
        assert!((e.expectation.unwrap() / oracle - 1.0).abs() < 1e-8);
        assert!((expectation_inclusion_exclusion(&f).unwrap() / oracle - 1.0).abs() < 1e-13);
    }

    #[test]
    fn second_rising_small_cases() {
        let s = tight();
        let one = second_rising_integral(&CouponFamily::uniform(1).unwrap(), &s).unwrap();
        assert!((one.second_rising.unwrap() - 2.0).abs() < 1e-9);
        // T = 1 + Geom(1/2): E[T] = 3, E[T²] = 11, E[T(T+1)] = 14.
        let two = second_rising_integral(&CouponFamily::uniform(2).unwrap(), &s).unwrap();
        assert!((two.second_rising.unwrap() - 14.0).abs() < 1e-9);
    }

    #[test]
    fn second_rising_matches_tail_series() {
        // E[T(T+1)] = Σ_{n>=0} 2(n+1) P(T > n). For zipf(2, 1), P(T > n) <= 2 (2/3)^n
        // for n >= 1, so truncating at n = 200 leaves < 1e-30.
        let f = CouponFamily::zipf(2, 1.0).unwrap();
        let mut series = CompensatedSum::new();
        for n in 0..200u64 {
            let tail = 1.0 - cdf_inclusion_exclusion(&f, n).unwrap();
            series.add(2.0 * (n + 1) as f64 * tail);
        }
        let q = second_rising_integral(&f, &tight()).unwrap().second_rising.unwrap();
        assert!((q - series.value()).abs() < 1e-6, "{q} vs {}", series.value());
    }

    #[test]
    fn variance_small_cases() {
        let s = tight();
        let v1 = variance_exact(&CouponFamily::uniform(1).unwrap(), &s).unwrap();
        assert!(v1.variance.unwrap().abs() < 1e-9);
        let v2 = variance_exact(&CouponFamily::uniform(2).unwrap(), &s).unwrap();
        assert!((v2.variance.unwrap() - 2.0).abs() < 1e-9);
        let r = v2.clone();
        let (e, s2, v) = (r.expectation.unwrap(), r.second_rising.unwrap(), r.variance.unwrap());
        assert_eq!(v, s2 - e - e * e);
    }

    #[test]
    fn cdf_small_cases() {
        let f = CouponFamily::uniform(2).unwrap();
        assert_eq!(cdf_inclusion_exclusion(&f, 0).unwrap(), 0.0);
        assert_eq!(cdf_inclusion_exclusion(&f, 1).unwrap(), 0.0);
        assert!((cdf_inclusion_exclusion(&f, 2).unwrap() - 0.5).abs() < 1e-15);
        assert!((cdf_inclusion_exclusion(&f, 3).unwrap() - 0.75).abs() < 1e-15);
        let one = CouponFamily::uniform(1).unwrap();
        assert_eq!(cdf_inclusion_exclusion(&one, 1).unwrap(), 1.0);
    }

    #[test]
    fn subset_cap_enforced() {
        let f = CouponFamily::uniform(25).unwrap();
        assert_eq!(
            cdf_inclusion_exclusion(&f, 100),
            Err(Error::SizeLimit { n_types: 25, cap: 24 })
        );
        assert!(expectation_inclusion_exclusion(&f).is_err());
        let small = CouponFamily::uniform(6).unwrap();
        assert!(expectation_inclusion_exclusion_capped(&small, 5).is_err());
    }

    #[test]
    fn inclusion_exclusion_expectations() {
        assert!((expectation_inclusion_exclusion(&CouponFamily::uniform(2).unwrap()).unwrap() - 3.0).abs() < 1e-14);
        assert!((expectation_inclusion_exclusion(&CouponFamily::uniform(3).unwrap()).unwrap() - 5.5).abs() < 1e-14);
        // Regression constant from this oracle: zipf(3, 1), probs 6/11, 3/11, 2/11.
        let z = expectation_inclusion_exclusion(&CouponFamily::zipf(3, 1.0).unwrap()).unwrap();
        let exact = 11.0 / 6.0 + 11.0 / 3.0 + 11.0 / 2.0 - 11.0 / 9.0 - 11.0 / 8.0 - 11.0 / 5.0 + 1.0;
        assert!((z - exact).abs() < 1e-13, "{z}");
        assert!((z - 7.202777777777778).abs() < 1e-13);
    }

    #[test]
    fn wk_closed_forms() {
        let s = tight();
        // ∫ (1 - y) dy, ∫ y² (1 - y) dy, ∫ ln y (1 - y) dy
        assert!((wk_integral(1, 1.0, 1, false, &s).unwrap() - 0.5).abs() < 1e-12);
        assert!((wk_integral(1, 1.0, 3, false, &s).unwrap() - 1.0 / 12.0).abs() < 1e-12);
        assert!((wk_integral(1, 1.0, 1, true, &s).unwrap() + 0.75).abs() < 1e-12);
        assert!(wk_integral(0, 1.0, 1, false, &s).is_err());
        assert!(wk_integral(2, 1.0, 0, false, &s).is_err());
        assert!(wk_integral(2, 0.0, 1, false, &s).is_err());
    }

    #[test]
    fn wk_matches_brute_force() {
        let s = tight();
        for (m, p, k) in [(2, 1.0, 1), (3, 1.0, 3), (4, 0.5, 2), (5, 2.0, 1), (6, 1.0, 6)] {
            for log_kernel in [false, true] {
                let q = wk_integral(m, p, k, log_kernel, &s).unwrap();
                let b = wk_brute(m, p, k, log_kernel);
                assert!(
                    (q / b - 1.0).abs() < 1e-9,
                    "m={m} p={p} k={k} log={log_kernel}: {q} vs {b}"
                );
            }
        }
    }

    /// Midpoint rule in `s = -ln y` with many points; independent of the adaptive path.
    fn wk_brute(m: usize, p: f64, k: usize, log_kernel: bool) -> f64 {
        let n = 400_000;
        let upper = 80.0 * (m as f64).powf(p) + 60.0;
        let h = upper / n as f64;
        let mut acc = CompensatedSum::new();
        for i in 0..n {
            let s = (i as f64 + 0.5) * h;
            let mut prod = (-(k as f64) * s).exp();
            for j in 1..=m {
                prod *= 1.0 - (-s * (j as f64).powf(-p)).exp();
            }
            if log_kernel {
                prod *= -s;
            }
            acc.add(prod * h);
        }
        acc.value()
    }

    #[test]
    fn decomposition_small_m() {
        let s = tight();
        let d = decomposition_check(1, 1.0, &s).unwrap();
        assert!(d.residual <= 1e-9, "{d:?}");
        assert!((d.mixed_expectation - 3.0).abs() < 1e-9);
        let d = decomposition_check(5, 1.0, &s).unwrap();
        assert!(d.residual <= 1e-6, "{d:?}");
        assert!(d.second_rising_residual <= 1e-6, "{d:?}");
        let d = decomposition_check(10, 0.5, &s).unwrap();
        assert!(d.residual <= 1e-4, "{d:?}");
        assert!(decomposition_check(13, 1.0, &s).is_err());
    }
}
