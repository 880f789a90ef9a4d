//! Finite-size behavior of the large-`M` expansions for the mixed family.
//! The expansions carry an `O((lnln M / ln M)²)` remainder, so these are
//! trend checks along a ladder of sizes rather than tolerance checks.

use collectorlab::asymptotics::{mixed_mean_asymptotic, mixed_variance_leading};
use collectorlab::exact_moments::{expectation_integral, variance_exact};
use collectorlab::{CouponFamily, QuadratureSettings};

const LADDER: [usize; 4] = [50, 100, 200, 400];

#[test]
fn mean_gap_shrinks() {
    let settings = QuadratureSettings::default();
    for p in [0.5, 1.0, 2.0] {
        let gaps: Vec<f64> = LADDER
            .iter()
            .map(|&m| {
                let f = CouponFamily::mixed(m, p).unwrap();
                let exact = expectation_integral(&f, &settings).unwrap().expectation.unwrap();
                (exact / mixed_mean_asymptotic(m, p).unwrap().total - 1.0).abs()
            })
            .collect();
        assert!(gaps.windows(2).all(|w| w[1] < w[0]), "p={p}: {gaps:?}");
    }
}

#[test]
fn variance_ratio_trends_to_one() {
    let settings = QuadratureSettings::default();
    for p in [0.5, 1.0, 2.0] {
        let ratios: Vec<f64> = LADDER
            .iter()
            .map(|&m| {
                let f = CouponFamily::mixed(m, p).unwrap();
                variance_exact(&f, &settings).unwrap().variance.unwrap() / mixed_variance_leading(m, p).unwrap()
            })
            .collect();
        let first = (ratios[0] - 1.0).abs();
        let last = (ratios[LADDER.len() - 1] - 1.0).abs();
        assert!(last < first, "p={p}: ratios {ratios:?} do not approach 1");
    }
}
