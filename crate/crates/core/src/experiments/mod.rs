//! Numerical experiments around the counting functions: smoothed counts,
//! the truncated explicit formula, smoothed L-series, short intervals,
//! averages of `L(1, n^2 - 4)`, and the Kloosterman-sum identity for a
//! weighted trace sum.

mod averages;
mod explicit;
mod kernel;
mod report;
mod smoothing;
mod thm13;

pub use averages::{
    euler_local_factor, mean_l_short, s1_s2_stats, s_v, short_interval, short_interval_from, MeanL, S1S2,
    ShortInterval, DEFAULT_THETA,
};
pub use explicit::{explicit_formula, ExplicitFormula, SpectralData};
pub use kernel::{bump_derivative_l1, BumpShape, KernelSpec, DERIVATIVE_CONSTANTS};
pub use report::{ExperimentReport, TaggedValue};
pub use smoothing::{
    psi_smoothed, psi_smoothed_bruteforce, psi_smoothed_from, smooth_error, smooth_error_from, smoothing_defect,
    smoothsharp_sides, SmoothError, StepFunction,
};
pub use thm13::{q_term, theorem13_check, theorem13_lhs, PeriodizedTransform, Theorem13Report, WeightSpec, WHAT_CUTOFF};
