//! One function per subcommand, each returning the document to emit.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use collectorlab::asymptotics::{
    mixed_mean_asymptotic, mixed_second_asymptotic, mixed_variance_report, uniform_mean_asymptotic,
    zipf_mean_asymptotic,
};
use collectorlab::exact_moments::{
    decomposition_check, expectation_inclusion_exclusion, variance_exact, wk_integral, Method, MomentReport,
};
use collectorlab::planner::{gumbel_constants_for, plan_exact, plan_gumbel, plan_monte_carlo, PlanMethod};
use collectorlab::simulator::Simulator;
use collectorlab::{example, simulator, CouponFamily, FamilyKind, FamilySpec, QuadratureSettings};
use serde_json::{json, Value};
use thiserror::Error;

use crate::render::{round_sig as sig, Document, Table};
use crate::{ExactMethod, FamilyArgs, KindArg, Moment, PlanMethodArg};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] collectorlab::Error),

    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_numerical() => 3,
            _ => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl From<KindArg> for FamilyKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Uniform => FamilyKind::Uniform,
            KindArg::Zipf => FamilyKind::Zipf,
            KindArg::Mixed => FamilyKind::Mixed,
            KindArg::Custom => FamilyKind::Custom,
        }
    }
}

impl FamilyArgs {
    /// Check flag combinations and produce the family description.
    pub fn spec(&self) -> Result<FamilySpec> {
        if self.kind != KindArg::Custom && self.weights.is_some() {
            return Err(usage("--weights is only valid with --kind custom"));
        }
        if self.kind != KindArg::Mixed && self.m.is_some() {
            return Err(usage("--m is only valid with --kind mixed"));
        }
        let need_n = || self.n.ok_or_else(|| usage("--n is required for this kind"));
        Ok(match self.kind {
            KindArg::Uniform => FamilySpec::Uniform { n: need_n()? },
            KindArg::Zipf => FamilySpec::Zipf {
                n: need_n()?,
                p: self.p,
            },
            KindArg::Mixed => {
                let n = match (self.n, self.m) {
                    (Some(n), None) => n,
                    (None, Some(m)) => 2 * m,
                    (Some(n), Some(m)) if n == 2 * m => n,
                    (Some(n), Some(m)) => return Err(usage(format!("--n {n} disagrees with --m {m} (need n = 2m)"))),
                    (None, None) => return Err(usage("--m or --n is required for the mixed kind")),
                };
                FamilySpec::Mixed { n, p: self.p }
            }
            KindArg::Custom => {
                let weights = self
                    .weights
                    .clone()
                    .ok_or_else(|| usage("--weights is required for --kind custom"))?;
                if let Some(n) = self.n.filter(|&n| n != weights.len()) {
                    return Err(usage(format!("--n {n} disagrees with {} weights", weights.len())));
                }
                FamilySpec::Custom { weights }
            }
        })
    }

    pub fn build(&self) -> Result<(FamilySpec, CouponFamily)> {
        let spec = self.spec()?;
        let family = spec.build()?;
        Ok((spec, family))
    }
}

pub fn settings(tol: Option<f64>, max_subdivisions: Option<usize>) -> Result<QuadratureSettings> {
    let mut s = QuadratureSettings::default();
    if let Some(t) = tol {
        s = s.with_rel_tol(t);
    }
    if let Some(n) = max_subdivisions {
        s.max_subdivisions = n;
    }
    s.validate()?;
    Ok(s)
}

fn describe(f: &CouponFamily) -> String {
    match (f.kind(), f.zipf_exponent(), f.half_size()) {
        (FamilyKind::Mixed, Some(p), Some(m)) => format!("mixed family, N={} (M={m}), p={}", f.n_types(), sig(p)),
        (kind, Some(p), _) => format!("{kind} family, N={}, p={}", f.n_types(), sig(p)),
        (kind, None, _) => format!("{kind} family, N={}", f.n_types()),
    }
}

pub fn family(args: &FamilyArgs) -> Result<Document> {
    let (spec, f) = args.build()?;
    let rows = f
        .weights()
        .iter()
        .zip(f.probs())
        .enumerate()
        .map(|(i, (w, p))| vec![json!(i + 1), json!(w), json!(p)])
        .collect();
    Ok(Document::new("family")
        .field("family", &spec)
        .field("n_types", f.n_types())
        .field("p", f.zipf_exponent())
        .field("weight_sum", f.weight_sum())
        .field("min_prob", f.min_prob())
        .field("probs", f.probs())
        .table(Table {
            title: "coupon probabilities",
            columns: vec!["index", "weight", "prob"],
            rows,
        })
        .summary(describe(&f)))
}

pub fn exact(args: &FamilyArgs, method: ExactMethod, settings: QuadratureSettings) -> Result<Document> {
    let (spec, f) = args.build()?;
    let report = match method {
        ExactMethod::Integral => variance_exact(&f, &settings)?,
        ExactMethod::InclusionExclusion => {
            let e = expectation_inclusion_exclusion(&f)?;
            MomentReport {
                expectation: Some(e),
                second_rising: None,
                variance: None,
                method: Method::InclusionExclusion,
                // rounding bound for a 2^N-term alternating sum
                abs_error_estimate: e * f64::EPSILON * (1u64 << f.n_types()) as f64,
            }
        }
    };
    let summary = format!(
        "{}: E[T] = {}",
        describe(&f),
        sig(report.expectation.unwrap_or(f64::NAN))
    );
    Ok(Document::new("moments")
        .field("family", &spec)
        .flatten(&report)
        .summary(summary))
}

pub fn asym(args: &FamilyArgs, moment: Moment) -> Result<Document> {
    let spec = args.spec()?;
    let (report, constants) = match (&spec, moment) {
        (FamilySpec::Uniform { n }, Moment::Mean) => (
            uniform_mean_asymptotic(*n)?,
            collectorlab::asymptotics::uniform_gumbel_constants(*n).ok(),
        ),
        (FamilySpec::Zipf { n, p }, Moment::Mean) => (
            zipf_mean_asymptotic(*n, *p)?,
            collectorlab::asymptotics::zipf_gumbel_constants(*n, *p).ok(),
        ),
        (FamilySpec::Mixed { n, p }, _) => {
            if n % 2 != 0 {
                return Err(usage(format!("mixed family needs an even number of types, got {n}")));
            }
            let m = n / 2;
            let report = match moment {
                Moment::Mean => mixed_mean_asymptotic(m, *p)?,
                Moment::SecondRising => mixed_second_asymptotic(m, *p)?,
                Moment::Variance => mixed_variance_report(m, *p)?,
            };
            (report, collectorlab::asymptotics::mixed_gumbel_constants(m, *p).ok())
        }
        (FamilySpec::Custom { .. }, _) => return Err(usage("no expansion is available for custom families")),
        (_, _) => {
            return Err(usage(
                "only the mean expansion is available for uniform and zipf families",
            ))
        }
    };
    let rows = report
        .terms
        .iter()
        .map(|t| vec![json!(t.name), json!(t.value)])
        .collect();
    let summary = format!(
        "leading factor {} x bracket {} = {}",
        sig(report.leading_factor),
        sig(report.bracket_total),
        sig(report.total)
    );
    Ok(Document::new("asymptotic")
        .field("family", &spec)
        .field(
            "moment",
            match moment {
                Moment::Mean => "mean",
                Moment::SecondRising => "second_rising",
                Moment::Variance => "variance",
            },
        )
        .field("gumbel", constants)
        .flatten(&report)
        .table(Table {
            title: "expansion terms",
            columns: vec!["term", "value"],
            rows,
        })
        .summary(summary))
}

pub fn simulate(
    args: &FamilyArgs,
    replicates: u64,
    seed: u64,
    dump: Option<&Path>,
    threads: Option<usize>,
) -> Result<Document> {
    let (spec, f) = args.build()?;
    if replicates == 0 {
        return Err(usage("--replicates must be positive"));
    }
    let constants = gumbel_constants_for(&f).ok();
    let run = Simulator::new(&f).threads(threads).run(replicates, seed, constants)?;
    if let Some(path) = dump {
        let io = |source| CliError::Io {
            path: path.display().to_string(),
            source,
        };
        let mut w = BufWriter::new(File::create(path).map_err(io)?);
        for t in run.counts.sorted_times() {
            writeln!(w, "{t}").map_err(io)?;
        }
        w.flush().map_err(io)?;
    }
    let s = &run.summary;
    let rows = s
        .quantiles
        .iter()
        .map(|q| vec![json!(q.prob), json!(q.trials)])
        .collect();
    let summary = format!(
        "{}: mean {} +/- {} over {} replicates (seed {})",
        describe(&f),
        sig(s.sample_mean),
        sig(s.standard_error),
        s.replicates,
        s.seed
    );
    Ok(Document::new("simulation")
        .field("family", &spec)
        .flatten(s)
        .table(Table {
            title: "empirical quantiles",
            columns: vec!["prob", "trials"],
            rows,
        })
        .summary(summary))
}

pub fn plan(
    args: &FamilyArgs,
    q: f64,
    method: PlanMethodArg,
    replicates: u64,
    seed: u64,
    threads: Option<usize>,
) -> Result<Document> {
    let (spec, f) = args.build()?;
    let plan = match method {
        PlanMethodArg::Gumbel => plan_gumbel(&f, q)?,
        PlanMethodArg::Exact => plan_exact(&f, q)?,
        PlanMethodArg::MonteCarlo => plan_monte_carlo(&f, q, replicates, seed, threads)?,
    };
    let how = match plan.method {
        PlanMethod::Gumbel => "Gumbel approximation",
        PlanMethod::Exact => "exact distribution",
        PlanMethod::MonteCarlo => "Monte Carlo",
    };
    let summary = format!(
        "{}: at least {} trials for a complete set with probability {} ({how})",
        describe(&f),
        plan.trials,
        sig(q)
    );
    Ok(Document::new("plan")
        .field("family", &spec)
        .flatten(&plan)
        .summary(summary))
}

pub fn ks_trend(
    kind: KindArg,
    p: f64,
    sizes: &[usize],
    replicates: u64,
    seed: u64,
    threads: Option<usize>,
) -> Result<Document> {
    if replicates == 0 {
        return Err(usage("--replicates must be positive"));
    }
    let kind = FamilyKind::from(kind);
    let points = simulator::ks_trend(kind, p, sizes, replicates, seed, threads)?;
    let rows = points
        .iter()
        .map(|pt| vec![json!(pt.size), json!(pt.n_types), json!(pt.ks_statistic)])
        .collect();
    let decreasing = points.windows(2).all(|w| w[1].ks_statistic < w[0].ks_statistic);
    Ok(Document::new("ks_trend")
        .field("kind", kind)
        .field("p", (kind != FamilyKind::Uniform).then_some(p))
        .field("replicates", replicates)
        .field("seed", seed)
        .field("points", &points)
        .field("strictly_decreasing", decreasing)
        .table(Table {
            title: "KS distance to Gumbel",
            columns: vec!["size", "n_types", "ks_statistic"],
            rows,
        }))
}

pub fn wk_check(m: usize, p: f64, s: QuadratureSettings) -> Result<Document> {
    let check = decomposition_check(m, p, &s)?;
    let mut rows = Vec::with_capacity(m);
    let mut terms = Vec::with_capacity(m);
    for k in 1..=m {
        let w = wk_integral(m, p, k, false, &s)?;
        let q = wk_integral(m, p, k, true, &s)?;
        rows.push(vec![json!(k), json!(w), json!(q)]);
        terms.push(json!({ "k": k, "w_k": w, "q_k": q }));
    }
    let summary = format!(
        "M={m}, p={}: mean residual {:.9e}, second rising residual {:.9e}",
        sig(p),
        check.residual,
        check.second_rising_residual
    );
    Ok(Document::new("wk_check")
        .field("terms", Value::Array(terms))
        .field("check", &check)
        .table(Table {
            title: "W_k and Q_k",
            columns: vec!["k", "w_k", "q_k"],
            rows,
        })
        .summary(summary))
}

pub fn reproduce_example() -> Result<Document> {
    let report = example::reproduce_example()?;
    let rows = report
        .rows
        .iter()
        .map(|r| {
            vec![
                json!(r.family),
                json!(r.n_types),
                json!(r.p),
                json!(r.centering),
                json!(r.scale),
                json!(r.quantile_y),
                json!(r.trials),
                json!(r.published_trials),
            ]
        })
        .collect();
    let checks = report
        .checks
        .iter()
        .map(|c| {
            let flag = if c.consistent { "ok" } else { "DEVIATES" };
            vec![json!(c.quantity), json!(c.published), json!(c.computed), json!(flag)]
        })
        .collect();
    let trials: Vec<String> = report
        .rows
        .iter()
        .map(|r| format!("{} {}", r.family, r.trials))
        .collect();
    let summary = format!("q = {}: {}", sig(report.q), trials.join(", "));
    Ok(Document::new("example")
        .flatten(&report)
        .table(Table {
            title: "trials for a complete set",
            columns: vec![
                "family",
                "n_types",
                "p",
                "centering",
                "scale",
                "quantile_y",
                "trials",
                "published_trials",
            ],
            rows,
        })
        .table(Table {
            title: "published vs recomputed",
            columns: vec!["quantity", "published", "computed", "status"],
            rows: checks,
        })
        .summary(summary))
}
