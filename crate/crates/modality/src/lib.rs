//! Native tests of multimodality: Hartigan's dip test and Silverman's
//! critical-bandwidth test, with the Hall-York k = 1 calibration and
//! sequential mode-count estimation.
//!
//! Everything stochastic is driven by a seedable, splittable random source,
//! so results are reproducible bit for bit regardless of thread count. The
//! dip test's uniform-null quantile table and the calibration curve are
//! simulated artifacts bundled with the crate and regenerable from their
//! recorded seeds.

pub mod dip;
mod error;
pub mod kde;
pub mod replicate;
mod rng;
mod sample;
pub mod silverman;
pub mod tables;
mod warning;

pub use dip::{dip_pvalue_mc, dip_pvalue_table, dip_statistic, dip_test};
pub use dip::{DipOptions, DipTestResult, PValueMethod};
pub use error::{Error, Result};
pub use rng::RngState;
pub use sample::{ColumnSelector, LoadOptions, Sample};
pub use silverman::{
    critical_bandwidth, estimate_num_modes, hall_york_adjust, silverman_pvalue, silverman_test,
    smoothed_bootstrap, CriticalBandwidth, ModeEstimate, SilvermanOptions, SilvermanTestResult,
};
pub use tables::{
    default_calibration_curve, default_dip_table, derive_calibration_curve, generate_dip_table,
    CalibrationCurve, CurveProvenance, DipQuantileTable,
};
pub use warning::Warning;

/// The iris petal-width column (150 observations), the classical example
/// data used by the replication suite.
pub fn iris_petal_width() -> Sample {
    let text = include_str!("../data/iris_pw.csv");
    let values: Vec<f64> = text
        .lines()
        .map(|l| l.trim().parse().expect("bundled iris data is numeric"))
        .collect();
    Sample::from_values(values).expect("bundled iris data is valid")
}
