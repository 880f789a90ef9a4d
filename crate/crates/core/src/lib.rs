//! Completion-time analysis for the coupon collector's problem.
//!
//! Supports uniform, generalized Zipf and mixed uniform/Zipf coupon families:
//! exact moments by quadrature and inclusion–exclusion, the closed-form
//! large-`N` expansions and Gumbel normalizations, deterministic parallel
//! Monte Carlo, and trial-count planning for a target completion probability.

pub mod alias;
pub mod asymptotics;
pub mod coupon_model;
pub mod error;
pub mod exact_moments;
pub mod example;
pub mod planner;
pub mod quadrature;
pub mod simulator;
pub mod summation;

pub use coupon_model::{CouponFamily, FamilyKind, FamilySpec};
pub use error::{Error, Result};
pub use quadrature::QuadratureSettings;
