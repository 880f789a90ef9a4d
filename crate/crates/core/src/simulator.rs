//! Monte Carlo simulation of the collection process.
//!
//! Replicate `i` draws from its own ChaCha8 stream keyed by `(seed, i)`, and
//! per-replicate results are merged in replicate order with exact integer
//! accumulators. A [`SimulationSummary`] is therefore a pure function of
//! `(family, replicates, seed)`, independent of the number of worker threads.

use std::collections::BTreeMap;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alias::AliasTable;
use crate::asymptotics::{
    gumbel_cdf, mixed_gumbel_constants, uniform_gumbel_constants, zipf_gumbel_constants, GumbelConstants,
};
use crate::coupon_model::{CouponFamily, FamilyKind};
use crate::error::{Error, Result};

/// Draw cap per episode; exceeding it is reported as a runaway.
pub const MAX_DRAWS: u64 = 1 << 31;

/// Quantile levels reported in every summary.
pub const SUMMARY_QUANTILES: [f64; 4] = [0.5, 0.9, 0.95, 0.99];

/// Replicates per work unit. Fixed so the work split never depends on threads.
const BLOCK: u64 = 4096;
/// Blocks processed between merges into the histogram; bounds memory.
const WAVE: u64 = 256;

/// RNG stream for replicate `index` under `seed`.
pub fn replicate_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Alias table plus coverage scratch sizing for one family.
#[derive(Debug, Clone)]
pub struct EpisodeSampler {
    table: AliasTable,
    n_types: usize,
}

impl EpisodeSampler {
    pub fn new(family: &CouponFamily) -> Result<Self> {
        Ok(Self {
            table: AliasTable::new(family.probs())?,
            n_types: family.n_types(),
        })
    }

    pub fn n_types(&self) -> usize {
        self.n_types
    }

    /// One episode using caller-provided coverage flags (cleared on entry).
    #[inline]
    fn run_with<R: RngCore>(&self, rng: &mut R, seen: &mut [u8]) -> Result<u64> {
        seen.fill(0);
        let mut remaining = self.n_types;
        let mut draws = 0u64;
        while remaining > 0 {
            if draws == MAX_DRAWS {
                return Err(Error::Runaway { cap: MAX_DRAWS });
            }
            draws += 1;
            let j = self.table.sample(rng.next_u64());
            let flag = &mut seen[j];
            remaining -= (*flag ^ 1) as usize;
            *flag = 1;
        }
        Ok(draws)
    }
}

/// Number of draws until every type has appeared at least once.
pub fn run_episode<R: RngCore>(sampler: &EpisodeSampler, rng: &mut R) -> Result<u64> {
    let mut seen = vec![0u8; sampler.n_types];
    sampler.run_with(rng, &mut seen)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantilePoint {
    pub prob: f64,
    pub trials: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationSummary {
    pub n_types: usize,
    pub replicates: u64,
    pub seed: u64,
    pub sample_mean: f64,
    /// Unbiased (n - 1 denominator); zero for a single replicate.
    pub sample_variance: f64,
    /// Mean of `T (T + 1)`.
    pub sample_second_rising: f64,
    pub standard_error: f64,
    pub min: u64,
    pub max: u64,
    pub quantiles: Vec<QuantilePoint>,
    pub ks_statistic: Option<f64>,
    pub gumbel: Option<GumbelConstants>,
}

/// Exact histogram of completion times, ascending.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CompletionCounts {
    counts: Vec<(u64, u64)>,
    total: u64,
}

impl CompletionCounts {
    fn from_map(map: BTreeMap<u64, u64>) -> Self {
        let total = map.values().sum();
        Self {
            counts: map.into_iter().collect(),
            total,
        }
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// `(trials, multiplicity)` pairs in ascending order of trials.
    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.counts
    }

    /// The sample in ascending order.
    pub fn sorted_times(&self) -> impl Iterator<Item = u64> + '_ {
        self.counts
            .iter()
            .flat_map(|&(t, c)| std::iter::repeat_n(t, c as usize))
    }

    /// The `k`-th smallest value, 1-based; `k` is clamped to `1..=total`.
    pub fn order_statistic(&self, k: u64) -> u64 {
        let k = k.clamp(1, self.total.max(1));
        let mut cum = 0;
        for &(t, c) in &self.counts {
            cum += c;
            if cum >= k {
                return t;
            }
        }
        self.counts.last().map_or(0, |&(t, _)| t)
    }

    /// Smallest `t` with empirical CDF at least `q`.
    pub fn quantile(&self, q: f64) -> u64 {
        self.order_statistic((q * self.total as f64).ceil() as u64)
    }

    /// `sup_x |F_emp(x) - G((x - m_N)/k_N)|` with `G` the standard Gumbel CDF.
    /// Both one-sided limits of the empirical CDF are checked at every jump.
    pub fn ks_statistic(&self, constants: &GumbelConstants) -> f64 {
        let n = self.total as f64;
        let mut below = 0u64;
        let mut d = 0.0f64;
        for &(t, c) in &self.counts {
            let g = gumbel_cdf(constants.normalize(t as f64));
            let at = below + c;
            d = d.max((below as f64 / n - g).abs()).max((at as f64 / n - g).abs());
            below = at;
        }
        d
    }
}

#[derive(Debug, Clone)]
pub struct SimulationRun {
    pub summary: SimulationSummary,
    pub counts: CompletionCounts,
}

/// Configurable entry point; [`simulate`] uses the default thread pool.
#[derive(Debug, Clone)]
pub struct Simulator<'a> {
    family: &'a CouponFamily,
    threads: Option<usize>,
}

struct BlockResult {
    times: Vec<u64>,
    sum: u128,
    sum_sq: u128,
}

impl<'a> Simulator<'a> {
    pub fn new(family: &'a CouponFamily) -> Self {
        Self { family, threads: None }
    }

    /// Worker threads; `None` uses the global rayon pool.
    pub fn threads(mut self, threads: Option<usize>) -> Self {
        self.threads = threads;
        self
    }

    pub fn run(&self, replicates: u64, seed: u64, gumbel: Option<GumbelConstants>) -> Result<SimulationRun> {
        if replicates == 0 {
            return Err(Error::InvalidArgument("replicates must be >= 1".into()));
        }
        let sampler = EpisodeSampler::new(self.family)?;
        match self.threads {
            Some(0) => Err(Error::InvalidArgument("thread count must be >= 1".into())),
            Some(t) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(t)
                    .build()
                    .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
                pool.install(|| run_blocks(&sampler, replicates, seed, gumbel))
            }
            None => run_blocks(&sampler, replicates, seed, gumbel),
        }
    }
}

fn run_block(sampler: &EpisodeSampler, seed: u64, start: u64, end: u64) -> Result<BlockResult> {
    let mut seen = vec![0u8; sampler.n_types];
    let mut times = Vec::with_capacity((end - start) as usize);
    let (mut sum, mut sum_sq) = (0u128, 0u128);
    for i in start..end {
        let mut rng = replicate_rng(seed, i);
        let t = sampler.run_with(&mut rng, &mut seen)?;
        sum += t as u128;
        sum_sq += (t as u128) * (t as u128);
        times.push(t);
    }
    times.sort_unstable();
    Ok(BlockResult { times, sum, sum_sq })
}

fn run_blocks(
    sampler: &EpisodeSampler,
    replicates: u64,
    seed: u64,
    gumbel: Option<GumbelConstants>,
) -> Result<SimulationRun> {
    let n_blocks = replicates.div_ceil(BLOCK);
    let mut histogram: BTreeMap<u64, u64> = BTreeMap::new();
    let (mut sum, mut sum_sq) = (0u128, 0u128);

    let mut wave_start = 0;
    while wave_start < n_blocks {
        let wave_end = (wave_start + WAVE).min(n_blocks);
        let results: Vec<Result<BlockResult>> = (wave_start..wave_end)
            .into_par_iter()
            .map(|b| run_block(sampler, seed, b * BLOCK, ((b + 1) * BLOCK).min(replicates)))
            .collect();
        for block in results {
            let block = block?;
            sum += block.sum;
            sum_sq += block.sum_sq;
            for run in block.times.chunk_by(|a, b| a == b) {
                *histogram.entry(run[0]).or_insert(0) += run.len() as u64;
            }
        }
        wave_start = wave_end;
    }

    let counts = CompletionCounts::from_map(histogram);
    let n = replicates as u128;
    let nf = replicates as f64;
    let sample_mean = sum as f64 / nf;
    let sample_variance = if replicates > 1 {
        // n Σt² - (Σt)² is exact in integers.
        let centered = n * sum_sq - sum * sum;
        centered as f64 / (nf * (nf - 1.0))
    } else {
        0.0
    };
    let summary = SimulationSummary {
        n_types: sampler.n_types,
        replicates,
        seed,
        sample_mean,
        sample_variance,
        sample_second_rising: (sum_sq + sum) as f64 / nf,
        standard_error: (sample_variance / nf).sqrt(),
        min: counts.pairs().first().map_or(0, |p| p.0),
        max: counts.pairs().last().map_or(0, |p| p.0),
        quantiles: SUMMARY_QUANTILES
            .iter()
            .map(|&prob| QuantilePoint {
                prob,
                trials: counts.quantile(prob),
            })
            .collect(),
        ks_statistic: gumbel.as_ref().map(|g| counts.ks_statistic(g)),
        gumbel,
    };
    Ok(SimulationRun { summary, counts })
}

/// Simulate `replicates` independent episodes on the default thread pool.
pub fn simulate(
    family: &CouponFamily,
    replicates: u64,
    seed: u64,
    gumbel: Option<GumbelConstants>,
) -> Result<SimulationSummary> {
    Ok(Simulator::new(family).run(replicates, seed, gumbel)?.summary)
}

/// Family and matching Gumbel constants for one rung of a KS ladder.
/// For the mixed kind `size` is `m` (half the number of types).
pub fn family_with_constants(kind: FamilyKind, size: usize, p: f64) -> Result<(CouponFamily, GumbelConstants)> {
    match kind {
        FamilyKind::Uniform => Ok((CouponFamily::uniform(size)?, uniform_gumbel_constants(size)?)),
        FamilyKind::Zipf => Ok((CouponFamily::zipf(size, p)?, zipf_gumbel_constants(size, p)?)),
        FamilyKind::Mixed => Ok((CouponFamily::mixed(size, p)?, mixed_gumbel_constants(size, p)?)),
        FamilyKind::Custom => Err(Error::InvalidArgument(
            "custom families have no Gumbel normalization".into(),
        )),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsPoint {
    pub size: usize,
    pub n_types: usize,
    pub ks_statistic: f64,
}

/// KS distance to the Gumbel limit along an ascending ladder of sizes.
pub fn ks_trend(
    kind: FamilyKind,
    p: f64,
    sizes: &[usize],
    replicates: u64,
    seed: u64,
    threads: Option<usize>,
) -> Result<Vec<KsPoint>> {
    if sizes.is_empty() || sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "sizes must be nonempty and strictly ascending".into(),
        ));
    }
    sizes
        .iter()
        .map(|&size| {
            let (family, constants) = family_with_constants(kind, size, p)?;
            let run = Simulator::new(&family)
                .threads(threads)
                .run(replicates, seed, Some(constants))?;
            Ok(KsPoint {
                size,
                n_types: family.n_types(),
                ks_statistic: run.summary.ks_statistic.unwrap_or(f64::NAN),
            })
        })
        .collect()
}
