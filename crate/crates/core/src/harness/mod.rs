//! Seeded Monte Carlo campaigns that check the stability and generalisation
//! inequalities, plus config parsing and report emission for the CLI.
//!
//! Every experiment derives its random streams from `base_seed` alone, and every
//! parallel map collects in index order, so reruns are byte-identical whatever
//! the thread count.

mod config;
mod emit;
mod experiments;
mod svg;

pub use config::{AlgorithmConfig, ExperimentConfig, ExperimentKind};
pub use emit::{emit_report, EmitFormat, RunLock};
pub use experiments::{
    run_bounds_table, run_coverage, run_efron_stein, run_experiment, run_rate, run_stability_sweep, BoundsRow,
    BoundsTableReport, CoverageReport, CoverageRow, DeviationSamples, EfronSteinReport, EfronSteinRow, RateReport,
    RateRow, Report, SweepReport, SweepRow, Y_NORM_MC_DRAWS,
};

/// Admissible window for the log-log slope of deviations against n.
pub const RATE_SLOPE_WINDOW: (f64, f64) = (-0.65, -0.35);
