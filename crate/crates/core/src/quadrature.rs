//! Adaptive Gauss–Kronrod quadrature on finite intervals.
//!
//! Each panel is evaluated with the 21-point Kronrod rule and its embedded
//! 10-point Gauss rule; `|K21 - G10|` is the panel error estimate. The panel
//! with the largest estimate is bisected until the global estimate meets
//! `max(abs_tol, rel_tol * |I|)` or the subdivision budget runs out.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::summation::CompensatedSum;

/// Tolerances shared by every quadrature-backed computation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSettings {
    pub rel_tol: f64,
    /// Relative size of the discarded tail beyond the truncation point.
    pub tail_epsilon: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            tail_epsilon: 1e-14,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "rel_tol must be > 0, got {}",
                self.rel_tol
            )));
        }
        if !(self.tail_epsilon > 0.0 && self.tail_epsilon < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "tail_epsilon must be in (0, 1), got {}",
                self.tail_epsilon
            )));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::InvalidArgument("max_subdivisions must be >= 1".into()));
        }
        Ok(())
    }

    pub fn with_rel_tol(self, rel_tol: f64) -> Self {
        Self { rel_tol, ..self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error: f64,
    pub subdivisions: usize,
}

// Kronrod abscissae; odd indices are the Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    // Largest error first; ties broken by position so the order is total.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn gauss_kronrod_21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[10] * fc;
    let mut gauss = 0.0;
    for i in 0..10 {
        let dx = half * XGK[i];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    Panel {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// Integrate `f` over `[a, b]`, starting from the given breakpoints.
///
/// `breakpoints` must be sorted and lie within `[a, b]`; each initial segment
/// is further split into `initial_panels` equal panels.
#[allow(clippy::too_many_arguments)]
pub fn integrate_with_breakpoints<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    initial_panels: usize,
    rel_tol: f64,
    abs_tol: f64,
    max_subdivisions: usize,
) -> Result<QuadResult> {
    if !(a.is_finite() && b.is_finite() && a <= b) {
        return Err(Error::InvalidArgument(format!("bad integration interval [{a}, {b}]")));
    }
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            abs_error: 0.0,
            subdivisions: 0,
        });
    }
    let mut edges = Vec::with_capacity(breakpoints.len() + 2);
    edges.push(a);
    edges.extend(breakpoints.iter().copied().filter(|&x| x > a && x < b));
    edges.push(b);

    let per_segment = initial_panels.max(1);
    let mut heap = BinaryHeap::new();
    for w in edges.windows(2) {
        let width = (w[1] - w[0]) / per_segment as f64;
        for i in 0..per_segment {
            let lo = w[0] + width * i as f64;
            let hi = if i + 1 == per_segment { w[1] } else { lo + width };
            heap.push(gauss_kronrod_21(&f, lo, hi));
        }
    }

    // Panels narrower than this cannot be bisected meaningfully.
    let min_width = 64.0 * f64::EPSILON * a.abs().max(b.abs());
    let mut subdivisions = 0usize;
    let mut done: Vec<Panel> = Vec::new();
    loop {
        let (value, error) = totals(heap.iter().chain(done.iter()));
        // Requests below a few hundred ulps of the result are unattainable in f64.
        let target = abs_tol.max(rel_tol.max(200.0 * f64::EPSILON) * value.abs());
        if error <= target || heap.is_empty() {
            return Ok(finish(heap, done, subdivisions));
        }
        if subdivisions >= max_subdivisions {
            return Err(Error::Accuracy {
                estimate: value,
                abs_error: error,
                subdivisions,
            });
        }
        let worst = heap.pop().expect("heap is nonempty");
        if worst.b - worst.a <= min_width {
            done.push(worst);
            continue;
        }
        let mid = 0.5 * (worst.a + worst.b);
        heap.push(gauss_kronrod_21(&f, worst.a, mid));
        heap.push(gauss_kronrod_21(&f, mid, worst.b));
        subdivisions += 1;
    }
}

/// Integrate `f` over `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
    max_subdivisions: usize,
) -> Result<QuadResult> {
    integrate_with_breakpoints(f, a, b, &[], 16, rel_tol, abs_tol, max_subdivisions)
}

fn totals<'a, I: Iterator<Item = &'a Panel>>(panels: I) -> (f64, f64) {
    let mut value = CompensatedSum::new();
    let mut error = 0.0;
    for p in panels {
        value.add(p.value);
        error += p.error;
    }
    (value.value(), error)
}

fn finish(heap: BinaryHeap<Panel>, mut done: Vec<Panel>, subdivisions: usize) -> QuadResult {
    done.extend(heap);
    // Sum left to right so the result does not depend on heap layout.
    done.sort_by(|x, y| x.a.total_cmp(&y.a));
    let (value, abs_error) = totals(done.iter());
    QuadResult {
        value,
        abs_error,
        subdivisions,
    }
}
