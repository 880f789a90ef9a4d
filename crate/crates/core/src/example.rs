//! Recomputation of the worked example at `N = 100`, `q = 0.90`: trials
//! needed for a complete set when the coupons are mixed uniform/Zipf
//! (`M = 50`, `p = 1`), pure Zipf (`p = 1`) or uniform.
//!
//! The published figures are carried at their printed precision and every
//! recomputed quantity is compared at that display rounding.

use serde::{Deserialize, Serialize};

use crate::asymptotics::gumbel_quantile;
use crate::coupon_model::{partial_sum_a, CouponFamily, FamilyKind};
use crate::error::Result;
use crate::planner::plan_gumbel;

pub const EXAMPLE_Q: f64 = 0.90;
pub const EXAMPLE_TYPES: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceCheck {
    pub quantity: String,
    pub published: f64,
    pub computed: f64,
    /// Half a unit in the last printed digit.
    pub display_tolerance: f64,
    pub consistent: bool,
}

impl ReferenceCheck {
    fn new(quantity: &str, published: f64, decimals: i32, computed: f64) -> Self {
        let display_tolerance = 0.5 * 10f64.powi(-decimals);
        Self {
            quantity: quantity.to_string(),
            published,
            computed,
            display_tolerance,
            consistent: (computed - published).abs() <= display_tolerance * (1.0 + 1e-9),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExampleRow {
    pub family: FamilyKind,
    pub n_types: usize,
    pub p: Option<f64>,
    pub centering: f64,
    pub scale: f64,
    pub quantile_y: f64,
    pub trials: u64,
    pub published_trials: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExampleReport {
    pub q: f64,
    pub rows: Vec<ExampleRow>,
    pub checks: Vec<ReferenceCheck>,
    pub notes: Vec<String>,
}

impl ExampleReport {
    pub fn trials(&self, kind: FamilyKind) -> Option<u64> {
        self.rows.iter().find(|r| r.family == kind).map(|r| r.trials)
    }

    pub fn deviations(&self) -> impl Iterator<Item = &ReferenceCheck> {
        self.checks.iter().filter(|c| !c.consistent)
    }
}

pub fn reproduce_example() -> Result<ExampleReport> {
    let families = [
        (CouponFamily::mixed(EXAMPLE_TYPES / 2, 1.0)?, 11_996),
        (CouponFamily::zipf(EXAMPLE_TYPES, 1.0)?, 2_765),
        (CouponFamily::uniform(EXAMPLE_TYPES)?, 686),
    ];
    let mut rows = Vec::new();
    let mut notes = Vec::new();
    for (family, published_trials) in &families {
        let plan = plan_gumbel(family, EXAMPLE_Q)?;
        let c = plan.constants.expect("gumbel plan carries constants");
        notes.extend(plan.notes.iter().cloned());
        rows.push(ExampleRow {
            family: family.kind(),
            n_types: family.n_types(),
            p: family.zipf_exponent(),
            centering: c.m_n,
            scale: c.k_n,
            quantile_y: plan.quantile_y.unwrap_or(f64::NAN),
            trials: plan.trials,
            published_trials: *published_trials,
        });
    }

    let lambda = gumbel_quantile(EXAMPLE_Q)?;
    let (mixed, zipf, uniform) = (&rows[0], &rows[1], &rows[2]);
    let checks = vec![
        ReferenceCheck::new("lambda", 2.25037, 5, lambda),
        ReferenceCheck::new("mixed centering", 6369.92, 2, mixed.centering),
        ReferenceCheck::new("mixed centering (second printing)", 6369.22, 2, mixed.centering),
        ReferenceCheck::new("mixed scale", 2500.0, 0, mixed.scale),
        ReferenceCheck::new("zipf A_100 = H_100", 5.18738, 5, partial_sum_a(EXAMPLE_TYPES, 1.0)?),
        ReferenceCheck::new("zipf centering", 1596.67, 2, zipf.centering),
        ReferenceCheck::new("zipf scale", 518.738, 3, zipf.scale),
        ReferenceCheck::new("mixed trials", 11_996.0, 0, mixed.trials as f64),
        ReferenceCheck::new("zipf trials", 2_765.0, 0, zipf.trials as f64),
        ReferenceCheck::new("uniform trials", 686.0, 0, uniform.trials as f64),
    ];
    notes.dedup();
    Ok(ExampleReport {
        q: EXAMPLE_Q,
        rows,
        checks,
        notes,
    })
}
