use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::config::{AlgorithmConfig, ExperimentConfig, ExperimentKind};
use super::RATE_SLOPE_WINDOW;
use crate::bounds::{
    efron_stein_moment_check, gamma_set, pac_bound_bounded, pac_bound_subgaussian, pac_failure_probability,
    ridge_moment_bound, GammaSet, Statistic,
};
use crate::datagen::{sample_dataset, DataSpec};
use crate::error::{Error, Result};
use crate::learners::{prediction_error_mc, ridge_fit, ridge_loo_fast, CostKind, Learner};
use crate::seed::SeedSpec;
use crate::stability::{
    check_corollary_domain, check_stability_domain, knn_gamma_1, ridge_gamma_q, y_norm_analytic, y_norm_mc,
    RidgeStabilityInputs, StabilitySamples,
};

/// Draws used for `‖Y‖_q` when no closed form is available.
pub const Y_NORM_MC_DRAWS: usize = 1_000_000;

const BOOTSTRAP_RESAMPLES: usize = 1000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoverageRow {
    pub n: usize,
    pub x: f64,
    pub threshold: f64,
    pub reps: usize,
    pub exceedances: usize,
    pub exceedance_rate: f64,
    /// `e·e^{−x}` at face value, possibly above 1.
    pub failure_bound: f64,
    /// `3·√(p(1−p)/reps)` with `p` the failure bound capped at 1.
    pub half_width: f64,
    /// The failure bound is at least 1, so the row asserts nothing.
    pub vacuous: bool,
    /// `max_r Δ_r / threshold`.
    pub max_ratio: f64,
    pub sound: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeviationSamples {
    pub n: usize,
    pub deviations: Vec<f64>,
    /// Largest Monte Carlo standard error of the prediction error across replications.
    pub max_lp_std_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoverageReport {
    pub base_seed: u64,
    /// `bounded` or `subgaussian`.
    pub bound: String,
    pub gammas: GammaSet,
    pub rows: Vec<CoverageRow>,
    pub samples: Vec<DeviationSamples>,
}

impl CoverageReport {
    pub fn sound(&self) -> bool {
        self.rows.iter().all(|r| r.sound)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RateRow {
    pub n: usize,
    pub median_deviation: f64,
    pub mean_deviation: f64,
    pub reps: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RateReport {
    pub base_seed: u64,
    pub rows: Vec<RateRow>,
    /// OLS slope of `ln median` against `ln n`.
    pub slope: f64,
    pub intercept: f64,
    /// Percentile bootstrap 95% interval.
    pub slope_ci: (f64, f64),
    pub in_window: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub algo: String,
    pub q: f64,
    pub n: usize,
    pub lambda_or_k: f64,
    pub s_q_hat: Option<f64>,
    pub std_error: Option<f64>,
    pub gamma_theory: Option<f64>,
    /// Standard error carried by `gamma_theory` when `‖Y‖_{2q}` is estimated.
    pub gamma_std_error: Option<f64>,
    /// `None` when the row was skipped.
    pub dominated: Option<bool>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub base_seed: u64,
    pub rows: Vec<SweepRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EfronSteinRow {
    pub f: String,
    pub n: usize,
    pub q: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub lhs_se: f64,
    pub rhs_se: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EfronSteinReport {
    pub base_seed: u64,
    pub rows: Vec<EfronSteinRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsRow {
    pub bound_name: String,
    pub b_x: f64,
    pub lambda: f64,
    pub eta: f64,
    pub n: Option<usize>,
    pub q_or_x: Option<f64>,
    pub value: f64,
    pub vacuous: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsTableReport {
    pub base_seed: u64,
    pub rows: Vec<BoundsRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Report {
    Coverage(CoverageReport),
    Rate(RateReport),
    StabilitySweep(SweepReport),
    EfronStein(EfronSteinReport),
    BoundsTable(BoundsTableReport),
}

impl Report {
    pub fn kind(&self) -> ExperimentKind {
        match self {
            Report::Coverage(_) => ExperimentKind::Coverage,
            Report::Rate(_) => ExperimentKind::Rate,
            Report::StabilitySweep(_) => ExperimentKind::StabilitySweep,
            Report::EfronStein(_) => ExperimentKind::EfronStein,
            Report::BoundsTable(_) => ExperimentKind::BoundsTable,
        }
    }

    pub fn base_seed(&self) -> u64 {
        match self {
            Report::Coverage(r) => r.base_seed,
            Report::Rate(r) => r.base_seed,
            Report::StabilitySweep(r) => r.base_seed,
            Report::EfronStein(r) => r.base_seed,
            Report::BoundsTable(r) => r.base_seed,
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            Report::Coverage(r) => r.rows.is_empty(),
            Report::Rate(r) => r.rows.is_empty(),
            Report::StabilitySweep(r) => r.rows.is_empty(),
            Report::EfronStein(r) => r.rows.is_empty(),
            Report::BoundsTable(r) => r.rows.is_empty(),
        }
    }

    /// Inequalities the run found broken beyond Monte Carlo slack.
    pub fn invariant_violations(&self) -> Vec<String> {
        match self {
            Report::Coverage(r) => r
                .rows
                .iter()
                .filter(|row| !row.sound || !row.max_ratio.is_finite())
                .map(|row| {
                    format!(
                        "coverage n={} x={}: exceedance {} > {} + {}",
                        row.n, row.x, row.exceedance_rate, row.failure_bound, row.half_width
                    )
                })
                .collect(),
            Report::Rate(r) if !r.in_window => vec![format!(
                "rate slope {} outside [{}, {}]",
                r.slope, RATE_SLOPE_WINDOW.0, RATE_SLOPE_WINDOW.1
            )],
            Report::Rate(_) => Vec::new(),
            Report::StabilitySweep(r) => r
                .rows
                .iter()
                .filter(|row| row.dominated == Some(false))
                .map(|row| {
                    format!(
                        "{} n={} q={} param={}: S_q {:?} above {:?}",
                        row.algo, row.n, row.q, row.lambda_or_k, row.s_q_hat, row.gamma_theory
                    )
                })
                .collect(),
            Report::EfronStein(r) => r
                .rows
                .iter()
                .filter(|row| !row.pass)
                .map(|row| format!("efron-stein f={} n={} q={}: lhs {} > rhs {}", row.f, row.n, row.q, row.lhs, row.rhs))
                .collect(),
            Report::BoundsTable(_) => Vec::new(),
        }
    }
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Report> {
    Ok(match cfg.kind {
        ExperimentKind::Coverage => Report::Coverage(run_coverage(cfg)?),
        ExperimentKind::Rate => Report::Rate(run_rate(cfg)?),
        ExperimentKind::StabilitySweep => Report::StabilitySweep(run_stability_sweep(cfg)?),
        ExperimentKind::EfronStein => Report::EfronStein(run_efron_stein(cfg)?),
        ExperimentKind::BoundsTable => Report::BoundsTable(run_bounds_table(cfg)?),
    })
}

fn expect_kind(cfg: &ExperimentConfig, kind: ExperimentKind) -> Result<()> {
    if cfg.kind != kind {
        return Err(Error::Config(format!("config kind is {}, expected {}", cfg.kind.as_str(), kind.as_str())));
    }
    cfg.validate()
}

fn ridge_params(cfg: &ExperimentConfig) -> Result<(f64, f64)> {
    match cfg.algorithm {
        AlgorithmConfig::Ridge { lambda, eta } => Ok((lambda, eta)),
        AlgorithmConfig::Knn { .. } => Err(Error::Config(format!("{} needs the ridge algorithm", cfg.kind.as_str()))),
    }
}

struct Deviation {
    delta: f64,
    lp_std_error: f64,
}

/// `|R̂₁ − L̂_P|` for one replication: sample from `seed.child(0)`, fresh test
/// points from `seed.child(1)`.
fn ridge_deviation(spec: &DataSpec, n: usize, lambda: f64, test_m: usize, seed: SeedSpec) -> Result<Deviation> {
    let data = sample_dataset(spec, n, seed.child(0))?;
    let loo = ridge_loo_fast(&data, lambda)?;
    let model = ridge_fit(&data, lambda)?;
    let lp = prediction_error_mc(&model, spec, test_m, CostKind::Squared, seed.child(1))?;
    Ok(Deviation { delta: (loo - lp.estimate).abs(), lp_std_error: lp.std_error })
}

fn deviations_at(cfg: &ExperimentConfig, lambda: f64, a: usize, n: usize) -> Result<Vec<Deviation>> {
    let root = cfg.root_seed().child(a as u64);
    (0..cfg.reps)
        .into_par_iter()
        .map(|r| ridge_deviation(&cfg.spec, n, lambda, cfg.test_m, root.child(r as u64)))
        .collect()
}

/// Deviation threshold as a function of `(n, x)`.
type ThresholdFn = Box<dyn Fn(usize, f64) -> f64>;

pub fn run_coverage(cfg: &ExperimentConfig) -> Result<CoverageReport> {
    expect_kind(cfg, ExperimentKind::Coverage)?;
    let (lambda, eta) = ridge_params(cfg)?;
    let spec = &cfg.spec;
    for &n in &cfg.n_grid {
        check_corollary_domain(spec.b_x, lambda, eta, n)?;
    }
    let gammas = gamma_set(spec.b_x, lambda, eta)?;
    let (bound, threshold): (&str, ThresholdFn) = match spec.b_y {
        Some(b_y) if spec.is_y_bounded() => ("bounded", Box::new(move |n, x| pac_bound_bounded(&gammas, b_y, n, x))),
        _ => {
            let (mean, v) = (spec.mean_y(), spec.subgaussian_v());
            ("subgaussian", Box::new(move |n, x| pac_bound_subgaussian(&gammas, mean, v, n, x)))
        }
    };
    let smallest = cfg
        .n_grid
        .iter()
        .flat_map(|&n| cfg.x_grid.iter().map(move |&x| (n, x)))
        .map(|(n, x)| threshold(n, x))
        .fold(f64::INFINITY, f64::min);

    let mut rows = Vec::new();
    let mut samples = Vec::new();
    for (a, &n) in cfg.n_grid.iter().enumerate() {
        let devs = deviations_at(cfg, lambda, a, n)?;
        let max_se = devs.iter().map(|d| d.lp_std_error).fold(0.0, f64::max);
        if max_se > 0.0 && max_se >= 0.01 * smallest {
            return Err(Error::precondition(format!(
                "prediction-error std error {max_se:.3e} is not below 1% of the smallest threshold {smallest:.3e}; \
                 increase test_m (currently {})",
                cfg.test_m
            )));
        }
        let deltas: Vec<f64> = devs.iter().map(|d| d.delta).collect();
        for &x in &cfg.x_grid {
            let thr = threshold(n, x);
            let exceedances = deltas.iter().filter(|&&d| d > thr).count();
            let rate = exceedances as f64 / cfg.reps as f64;
            let failure_bound = pac_failure_probability(x);
            let p = failure_bound.min(1.0);
            let half_width = 3.0 * (p * (1.0 - p) / cfg.reps as f64).sqrt();
            let max_ratio = deltas.iter().map(|&d| if d == 0.0 { 0.0 } else { d / thr }).fold(0.0, f64::max);
            rows.push(CoverageRow {
                n,
                x,
                threshold: thr,
                reps: cfg.reps,
                exceedances,
                exceedance_rate: rate,
                failure_bound,
                half_width,
                vacuous: failure_bound >= 1.0,
                max_ratio,
                sound: rate <= failure_bound + half_width,
            });
        }
        samples.push(DeviationSamples { n, deviations: deltas, max_lp_std_error: max_se });
    }
    Ok(CoverageReport { base_seed: cfg.base_seed, bound: bound.to_string(), gammas, rows, samples })
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let m = values.len();
    if m % 2 == 1 {
        values[m / 2]
    } else {
        0.5 * (values[m / 2 - 1] + values[m / 2])
    }
}

/// `(slope, intercept)` of the least-squares line through `(x, y)`.
fn ols(x: &[f64], y: &[f64]) -> (f64, f64) {
    let k = x.len() as f64;
    let mx = x.iter().sum::<f64>() / k;
    let my = y.iter().sum::<f64>() / k;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

fn percentile(sorted: &[f64], p: f64) -> f64 {
    let pos = p * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

fn check_rate_grid(cfg: &ExperimentConfig) -> Result<()> {
    let grid = &cfg.n_grid;
    if grid.len() < 4 {
        return Err(Error::Config("rate needs at least 4 sample sizes".into()));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Config("rate n_grid must be strictly increasing".into()));
    }
    let first = grid[1] as f64 / grid[0] as f64;
    if grid.windows(2).any(|w| ((w[1] as f64 / w[0] as f64) / first - 1.0).abs() > 0.1) {
        return Err(Error::Config("rate n_grid must be geometrically spaced".into()));
    }
    if cfg.reps < 100 {
        return Err(Error::Config("rate needs reps >= 100".into()));
    }
    Ok(())
}

pub fn run_rate(cfg: &ExperimentConfig) -> Result<RateReport> {
    expect_kind(cfg, ExperimentKind::Rate)?;
    check_rate_grid(cfg)?;
    let (lambda, _) = ridge_params(cfg)?;
    let mut per_n = Vec::with_capacity(cfg.n_grid.len());
    let mut rows = Vec::with_capacity(cfg.n_grid.len());
    for (a, &n) in cfg.n_grid.iter().enumerate() {
        let deltas: Vec<f64> = deviations_at(cfg, lambda, a, n)?.into_iter().map(|d| d.delta).collect();
        let mean = deltas.iter().sum::<f64>() / deltas.len() as f64;
        let med = median(&mut deltas.clone());
        if !(med.is_finite() && med > 0.0) {
            return Err(Error::precondition(format!("degenerate median deviation {med} at n = {n}")));
        }
        rows.push(RateRow { n, median_deviation: med, mean_deviation: mean, reps: cfg.reps });
        per_n.push(deltas);
    }
    let log_n: Vec<f64> = cfg.n_grid.iter().map(|&n| (n as f64).ln()).collect();
    let log_med: Vec<f64> = rows.iter().map(|r| r.median_deviation.ln()).collect();
    let (slope, intercept) = ols(&log_n, &log_med);

    let boot_root = cfg.root_seed().child(u64::MAX);
    let mut boot: Vec<f64> = (0..BOOTSTRAP_RESAMPLES)
        .into_par_iter()
        .map(|b| {
            let mut rng = boot_root.child(b as u64).rng();
            let meds: Vec<f64> = per_n
                .iter()
                .map(|d| {
                    let mut resample: Vec<f64> = (0..d.len()).map(|_| d[rng.random_range(0..d.len())]).collect();
                    median(&mut resample).max(f64::MIN_POSITIVE).ln()
                })
                .collect();
            ols(&log_n, &meds).0
        })
        .collect();
    boot.sort_by(f64::total_cmp);
    let slope_ci = (percentile(&boot, 0.025), percentile(&boot, 0.975));
    let in_window = (RATE_SLOPE_WINDOW.0..=RATE_SLOPE_WINDOW.1).contains(&slope);
    Ok(RateReport { base_seed: cfg.base_seed, rows, slope, intercept, slope_ci, in_window })
}

/// `‖Y‖_q` per distinct q: closed form when available, else Monte Carlo.
struct NormCache<'a> {
    spec: &'a DataSpec,
    seed: SeedSpec,
    cache: BTreeMap<u64, (f64, f64)>,
}

impl<'a> NormCache<'a> {
    fn new(spec: &'a DataSpec, seed: SeedSpec) -> Self {
        Self { spec, seed, cache: BTreeMap::new() }
    }

    /// `(value, std error)`; the error is zero for closed forms.
    fn get(&mut self, q: f64) -> Result<(f64, f64)> {
        if let Some(&v) = self.cache.get(&q.to_bits()) {
            return Ok(v);
        }
        let v = match y_norm_analytic(self.spec, q) {
            Ok(v) => (v, 0.0),
            Err(Error::InvalidArgument(_)) => {
                let mc = y_norm_mc(self.spec, q, Y_NORM_MC_DRAWS, self.seed.child(q.to_bits()))?;
                (mc.estimate, mc.std_error)
            }
            Err(e) => return Err(e),
        };
        self.cache.insert(q.to_bits(), v);
        Ok(v)
    }
}

fn skipped(algo: &str, q: f64, n: usize, param: f64, note: String) -> SweepRow {
    SweepRow {
        algo: algo.to_string(),
        q,
        n,
        lambda_or_k: param,
        s_q_hat: None,
        std_error: None,
        gamma_theory: None,
        gamma_std_error: None,
        dominated: None,
        note: Some(note),
    }
}

pub fn run_stability_sweep(cfg: &ExperimentConfig) -> Result<SweepReport> {
    expect_kind(cfg, ExperimentKind::StabilitySweep)?;
    let spec = &cfg.spec;
    let root = cfg.root_seed();
    let mut rows = Vec::new();
    match cfg.algorithm {
        AlgorithmConfig::Ridge { eta, .. } => {
            let mut norms = NormCache::new(spec, root.child(1));
            for (li, &lambda) in cfg.lambdas().iter().enumerate() {
                for (ni, &n) in cfg.n_grid.iter().enumerate() {
                    if let Err(e) = check_stability_domain(spec.b_x, lambda, eta, n) {
                        log::warn!("skipping ridge lambda={lambda} n={n}: {e}");
                        rows.extend(cfg.q_grid.iter().map(|&q| skipped("ridge", q, n, lambda, e.to_string())));
                        continue;
                    }
                    let samples = StabilitySamples::draw(
                        Learner::Ridge { lambda },
                        spec,
                        CostKind::Squared,
                        n,
                        cfg.reps,
                        cfg.j_policy,
                        root.child(0).child(li as u64).child(ni as u64),
                    )?;
                    for &q in &cfg.q_grid {
                        let (s, se) = samples.estimate(q);
                        let (norm, norm_se) = norms.get(2.0 * q)?;
                        let gamma =
                            ridge_gamma_q(RidgeStabilityInputs { b_x: spec.b_x, lambda, eta, n, y_norm_2q: norm })?;
                        let gamma_se = if norm > 0.0 { 2.0 * gamma * norm_se / norm } else { 0.0 };
                        let margin = 3.0 * se.hypot(gamma_se);
                        rows.push(SweepRow {
                            algo: "ridge".into(),
                            q,
                            n,
                            lambda_or_k: lambda,
                            s_q_hat: Some(s),
                            std_error: Some(se),
                            gamma_theory: Some(gamma),
                            gamma_std_error: Some(gamma_se),
                            dominated: Some(s <= gamma + margin),
                            note: None,
                        });
                    }
                }
            }
        }
        AlgorithmConfig::Knn { .. } => {
            for (ki, &k) in cfg.ks().iter().enumerate() {
                for (ni, &n) in cfg.n_grid.iter().enumerate() {
                    if n < k + 2 {
                        let note = format!("kNN stability needs n >= k+2, n = {n}, k = {k}");
                        rows.extend(cfg.q_grid.iter().map(|&q| skipped("knn", q, n, k as f64, note.clone())));
                        continue;
                    }
                    let gamma = knn_gamma_1(k, n)?;
                    let samples = StabilitySamples::draw(
                        Learner::Knn { k },
                        spec,
                        CostKind::ZeroOne,
                        n,
                        cfg.reps,
                        cfg.j_policy,
                        root.child(0).child(ki as u64).child(ni as u64),
                    )?;
                    for &q in &cfg.q_grid {
                        if q != 1.0 {
                            rows.push(skipped("knn", q, n, k as f64, "the kNN constant is stated for q = 1".into()));
                            continue;
                        }
                        let (s, se) = samples.estimate(q);
                        rows.push(SweepRow {
                            algo: "knn".into(),
                            q,
                            n,
                            lambda_or_k: k as f64,
                            s_q_hat: Some(s),
                            std_error: Some(se),
                            gamma_theory: Some(gamma),
                            gamma_std_error: Some(0.0),
                            dominated: Some(s <= gamma + 3.0 * se),
                            note: None,
                        });
                    }
                }
            }
        }
    }
    Ok(SweepReport { base_seed: cfg.base_seed, rows })
}

/// `constant`, `mean`, `max` or `ridge_loo:<lambda>`; inverse of [`Statistic::from_tag`].
pub(crate) fn statistic_tag(stat: &Statistic) -> String {
    match stat {
        Statistic::RidgeLoo { lambda } => format!("ridge_loo:{lambda}"),
        other => other.name().to_string(),
    }
}

pub fn run_efron_stein(cfg: &ExperimentConfig) -> Result<EfronSteinReport> {
    expect_kind(cfg, ExperimentKind::EfronStein)?;
    let root = cfg.root_seed();
    let mut rows = Vec::new();
    for (si, stat) in cfg.statistics().iter().enumerate() {
        for (ni, &n) in cfg.n_grid.iter().enumerate() {
            for (qi, &q) in cfg.q_grid.iter().enumerate() {
                let seed = root.child(si as u64).child(ni as u64).child(qi as u64);
                let check = efron_stein_moment_check(*stat, &cfg.spec, n, q, cfg.reps, seed)?;
                rows.push(EfronSteinRow {
                    f: statistic_tag(stat),
                    n,
                    q,
                    lhs: check.lhs,
                    rhs: check.rhs,
                    lhs_se: check.lhs_se,
                    rhs_se: check.rhs_se,
                    pass: check.passes(),
                });
            }
        }
    }
    Ok(EfronSteinReport { base_seed: cfg.base_seed, rows })
}

pub fn run_bounds_table(cfg: &ExperimentConfig) -> Result<BoundsTableReport> {
    expect_kind(cfg, ExperimentKind::BoundsTable)?;
    let (_, eta) = ridge_params(cfg)?;
    let spec = &cfg.spec;
    let b_x = spec.b_x;
    let scale = spec.squared_scale();
    let mut norms = NormCache::new(spec, cfg.root_seed().child(1));
    let mut rows = Vec::new();
    for lambda in cfg.lambdas() {
        let gammas = gamma_set(b_x, lambda, eta)?;
        let row = |name: &str, n: Option<usize>, q_or_x: Option<f64>, value: f64, vacuous: bool| BoundsRow {
            bound_name: name.to_string(),
            b_x,
            lambda,
            eta,
            n,
            q_or_x,
            value,
            vacuous,
        };
        rows.push(row("gamma1", None, None, gammas.gamma1, false));
        rows.push(row("gamma2", None, None, gammas.gamma2, false));
        rows.push(row("gamma3", None, None, gammas.gamma3, false));
        for &n in &cfg.n_grid {
            if let Err(e) = check_corollary_domain(b_x, lambda, eta, n) {
                log::warn!("bounds table: skipping lambda={lambda} n={n}: {e}");
                continue;
            }
            for &q in &cfg.q_grid {
                let (n2q, _) = norms.get(2.0 * q)?;
                let g = ridge_gamma_q(RidgeStabilityInputs { b_x, lambda, eta, n, y_norm_2q: n2q })?;
                rows.push(row("gamma_q", Some(n), Some(q), g, g >= scale));
                if q >= 2.0 {
                    let (nq, _) = norms.get(q)?;
                    for (name, centered) in [("moment_centered", true), ("moment_uncentered", false)] {
                        let m = ridge_moment_bound(&gammas, q, n, nq, n2q, centered)?;
                        rows.push(row(name, Some(n), Some(q), m, m >= scale));
                    }
                }
            }
            for &x in &cfg.x_grid {
                let p = pac_failure_probability(x);
                rows.push(row("failure_probability", Some(n), Some(x), p, p >= 1.0));
                if let (Some(b_y), true) = (spec.b_y, spec.is_y_bounded()) {
                    let v = pac_bound_bounded(&gammas, b_y, n, x);
                    rows.push(row("pac_bounded", Some(n), Some(x), v, v >= scale));
                }
                if spec.is_subgaussian() {
                    let v = pac_bound_subgaussian(&gammas, spec.mean_y(), spec.subgaussian_v(), n, x);
                    rows.push(row("pac_subgaussian", Some(n), Some(x), v, v >= scale));
                }
            }
        }
    }
    Ok(BoundsTableReport { base_seed: cfg.base_seed, rows })
}
