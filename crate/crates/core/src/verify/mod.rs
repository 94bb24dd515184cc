//! Samplers, trial bookkeeping and the named property suites.

mod report;
mod sample;
mod suites;

pub use report::{Failure, Trial, VerificationReport, MAX_RECORDED_FAILURES};
#[cfg(test)]
pub(crate) use sample::kn_point;
pub(crate) use sample::{beta_point, disc, unimodular};
pub use sample::{sample, sample_inside_gn, sample_inside_gtilde, sample_point, trial_rng, SampleConfig, SampleMode};
pub use suites::{run_suite, verify_interpolation, SUITES};
