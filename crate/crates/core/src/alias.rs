//! Walker/Vose alias table for O(1) categorical sampling.

use crate::error::{Error, Result};

/// Alias table over `0..n`.
///
/// A draw consumes one 64-bit word `x`: the high half of `x * n` (as a
/// 128-bit product) picks the column and the low half, read as a fraction of
/// `2^64`, decides between the column and its alias.
#[derive(Debug, Clone)]
pub struct AliasTable {
    threshold: Vec<u64>,
    alias: Vec<u32>,
}

impl AliasTable {
    pub fn new(probs: &[f64]) -> Result<Self> {
        let n = probs.len();
        if n == 0 || n > u32::MAX as usize {
            return Err(Error::InvalidSize(format!("alias table over {n} outcomes")));
        }
        let total: f64 = probs.iter().sum();
        if !(total.is_finite() && total > 0.0) || probs.iter().any(|&p| p.is_nan() || p < 0.0) {
            return Err(Error::InvalidArgument(
                "alias table needs nonnegative finite weights".into(),
            ));
        }
        let mut scaled: Vec<f64> = probs.iter().map(|&p| p * n as f64 / total).collect();
        let mut accept = vec![1.0f64; n];
        let mut alias: Vec<u32> = (0..n as u32).collect();
        let (mut small, mut large): (Vec<usize>, Vec<usize>) = (0..n).partition(|&i| scaled[i] < 1.0);

        while let (Some(&s), Some(&l)) = (small.last(), large.last()) {
            small.pop();
            accept[s] = scaled[s];
            alias[s] = l as u32;
            scaled[l] = (scaled[l] + scaled[s]) - 1.0;
            if scaled[l] < 1.0 {
                large.pop();
                small.push(l);
            }
        }
        // Leftovers on either list are full columns up to rounding.
        for i in small.into_iter().chain(large) {
            accept[i] = 1.0;
            alias[i] = i as u32;
        }

        let threshold = accept
            .iter()
            .map(|&a| {
                if a >= 1.0 {
                    u64::MAX
                } else {
                    (a * 18_446_744_073_709_551_616.0) as u64
                }
            })
            .collect();
        Ok(Self { threshold, alias })
    }

    pub fn len(&self) -> usize {
        self.threshold.len()
    }

    pub fn is_empty(&self) -> bool {
        self.threshold.is_empty()
    }

    #[inline]
    pub fn sample(&self, x: u64) -> usize {
        let wide = (x as u128) * (self.threshold.len() as u128);
        let column = (wide >> 64) as usize;
        let frac = wide as u64;
        if frac < self.threshold[column] {
            column
        } else {
            self.alias[column] as usize
        }
    }

    /// Exact probability of each outcome implied by the table.
    pub fn implied_probs(&self) -> Vec<f64> {
        let n = self.len();
        let mut out = vec![0.0; n];
        for (i, (&t, &a)) in self.threshold.iter().zip(&self.alias).enumerate() {
            let keep = if t == u64::MAX {
                1.0
            } else {
                t as f64 / 18_446_744_073_709_551_616.0
            };
            out[i] += keep / n as f64;
            out[a as usize] += (1.0 - keep) / n as f64;
        }
        out
    }
}
