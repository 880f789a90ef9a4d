use collectorlab::alias::AliasTable;
use collectorlab::exact_moments::{cdf_inclusion_exclusion, expectation_integral};
use collectorlab::planner::{plan_exact, plan_gumbel, plan_monte_carlo};
use collectorlab::simulator::{replicate_rng, simulate, Simulator};
use collectorlab::{CouponFamily, QuadratureSettings};
use rand_chacha::rand_core::RngCore;

#[test]
fn alias_frequencies_match_probabilities() {
    const DRAWS: u64 = 10_000_000;
    for f in [
        CouponFamily::zipf(100, 2.0).unwrap(),
        CouponFamily::mixed(20, 1.0).unwrap(),
    ] {
        let table = AliasTable::new(f.probs()).unwrap();
        let mut counts = vec![0u64; f.n_types()];
        let mut rng = replicate_rng(11, 0);
        for _ in 0..DRAWS {
            counts[table.sample(rng.next_u64())] += 1;
        }
        for (j, (&c, &p)) in counts.iter().zip(f.probs()).enumerate() {
            let expected = DRAWS as f64 * p;
            let sd = (DRAWS as f64 * p * (1.0 - p)).sqrt();
            assert!(
                (c as f64 - expected).abs() <= 5.0 * sd,
                "type {j}: {c} vs {expected} (sd {sd})"
            );
        }
    }
}

#[test]
fn mean_agrees_with_quadrature() {
    let settings = QuadratureSettings::default();
    for f in [
        CouponFamily::uniform(16).unwrap(),
        CouponFamily::zipf(16, 1.0).unwrap(),
        CouponFamily::mixed(8, 2.0).unwrap(),
    ] {
        let exact = expectation_integral(&f, &settings).unwrap().expectation.unwrap();
        let s = simulate(&f, 100_000, 5, None).unwrap();
        assert!(
            (s.sample_mean - exact).abs() < 4.0 * s.standard_error,
            "{}: {} vs {exact}",
            f.kind(),
            s.sample_mean
        );
    }
}

#[test]
fn empirical_variance_identity() {
    let f = CouponFamily::zipf(12, 1.5).unwrap();
    let s = simulate(&f, 50_000, 9, None).unwrap();
    let n = s.replicates as f64;
    let from_rising = s.sample_second_rising - s.sample_mean - s.sample_mean * s.sample_mean;
    // The rising-moment form uses the 1/n estimator, the summary 1/(n - 1).
    let expected = s.sample_variance * (n - 1.0) / n;
    assert!(
        (from_rising - expected).abs() <= 1e-9 * expected,
        "{from_rising} vs {expected}"
    );
}

#[test]
fn summary_is_independent_of_thread_count() {
    let f = CouponFamily::mixed(10, 1.0).unwrap();
    let reference = Simulator::new(&f).threads(Some(1)).run(30_001, 3, None).unwrap();
    for threads in [2, 4, 8] {
        let run = Simulator::new(&f).threads(Some(threads)).run(30_001, 3, None).unwrap();
        assert_eq!(run.summary, reference.summary);
        assert_eq!(run.counts, reference.counts);
    }
}

#[test]
fn gumbel_plan_close_to_exact_for_uniform_twenty() {
    let f = CouponFamily::uniform(20).unwrap();
    for q in [0.5, 0.9, 0.95, 0.99] {
        let g = plan_gumbel(&f, q).unwrap().trials as f64;
        let e = plan_exact(&f, q).unwrap().trials as f64;
        assert!((g - e).abs() / e < 0.25, "q={q}: gumbel {g} vs exact {e}");
    }
}

#[test]
fn monte_carlo_plan_is_stable_under_doubling() {
    let f = CouponFamily::zipf(15, 1.0).unwrap();
    for q in [0.5, 0.9, 0.99] {
        let r = 20_000u64;
        let base = plan_monte_carlo(&f, q, r, 1, None).unwrap().trials;
        let doubled = plan_monte_carlo(&f, q, 2 * r, 1, None).unwrap().trials;
        // Distribution-free bound: order statistics 3 binomial standard
        // deviations either side of the target rank.
        let counts = Simulator::new(&f).run(r, 1, None).unwrap().counts;
        let k = (q * (r + 1) as f64).ceil();
        let delta = 3.0 * (r as f64 * q * (1.0 - q)).sqrt();
        let lo = counts.order_statistic((k - delta).max(1.0) as u64);
        let hi = counts.order_statistic(((k + delta).ceil() as u64).min(r));
        assert!(
            doubled.abs_diff(base) <= hi - lo,
            "q={q}: {base} -> {doubled}, bound {}",
            hi - lo
        );
        let exact = plan_exact(&f, q).unwrap().trials;
        assert!(exact >= lo && exact <= hi, "q={q}: exact {exact} outside [{lo}, {hi}]");
        assert!(cdf_inclusion_exclusion(&f, exact).unwrap() >= q);
    }
}
