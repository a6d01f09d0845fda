//! L^q stability: the empirical estimator and the closed-form constants.
//!
//! `S_q(A, n)^q = E|c(A(D, X), Y) − c(A(τ_j(D), X), Y)|^q`, with the expectation
//! over the sample D of size n and an independent test point (X, Y).
//!
//! Ridge is stable with
//! `γ_q = 2‖Y‖_{2q}² (B_X²/(nλ)) (1 + (B_X²+λ)/(λ(1−η))) (1 + B_X²/λ)`
//! and kNN (0-1 cost, q = 1) with `γ₁ = (4/√(2π)) √k / n`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::datagen::{sample_dataset, DataSpec, Dataset, XFamily, YModel, MAX_ENUMERATION_DIM};
use crate::error::{Error, Result};
use crate::learners::{cost, knn_predict_with_removals, ridge_fit, CostKind, Learner, McEstimate, RidgeLoo};
use crate::linalg::norm2;
use crate::seed::SeedSpec;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JPolicy {
    /// Remove the last point only.
    FixedLast,
    /// Average the q-th power over every removed index before taking the root.
    #[default]
    AverageAll,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilityConfig {
    pub q: f64,
    pub n: usize,
    pub reps: usize,
    pub j_policy: JPolicy,
    pub seed: SeedSpec,
}

impl StabilityConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.q.is_finite() && self.q >= 1.0) {
            return Err(Error::invalid(format!("q must be >= 1, got {}", self.q)));
        }
        if self.reps < 2 {
            return Err(Error::invalid("stability estimation needs reps >= 2"));
        }
        if self.n < 2 {
            return Err(Error::invalid("stability estimation needs n >= 2"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilityEstimate {
    pub s_q_hat: f64,
    pub std_error: f64,
    pub config: StabilityConfig,
}

/// Absolute cost differences `|c(A(D,X),Y) − c(A(τ_j(D),X),Y)|`, one vector per
/// replication (one entry per removed index j under the chosen policy).
#[derive(Clone, Debug)]
pub struct StabilitySamples {
    per_rep: Vec<Vec<f64>>,
}

/// Stream layout: replication r draws its sample from `seed.child(r).child(0)` and
/// its test point from `seed.child(r).child(1)`.
pub fn replication_seeds(seed: SeedSpec, r: usize) -> (SeedSpec, SeedSpec) {
    let parent = seed.child(r as u64);
    (parent.child(0), parent.child(1))
}

impl StabilitySamples {
    pub fn draw(
        learner: Learner,
        spec: &DataSpec,
        kind: CostKind,
        n: usize,
        reps: usize,
        j_policy: JPolicy,
        seed: SeedSpec,
    ) -> Result<Self> {
        if n < 2 || reps < 2 {
            return Err(Error::invalid("stability estimation needs n >= 2 and reps >= 2"));
        }
        if let Learner::Knn { k } = learner {
            if kind != CostKind::ZeroOne {
                return Err(Error::invalid("kNN stability uses the zero-one cost"));
            }
            if k == 0 || n < k + 2 {
                return Err(Error::precondition(format!("kNN stability needs n >= k+2, n = {n}, k = {k}")));
            }
        }
        if let Learner::Ridge { .. } = learner {
            if kind != CostKind::Squared {
                return Err(Error::invalid("ridge stability uses the squared cost"));
            }
        }
        spec.validate()?;
        let per_rep = (0..reps)
            .into_par_iter()
            .map(|r| {
                let (data_seed, test_seed) = replication_seeds(seed, r);
                let data = sample_dataset(spec, n, data_seed)?;
                let test = sample_dataset(spec, 1, test_seed)?;
                cost_differences(learner, &data, test.x(0), test.y(0), kind, j_policy)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { per_rep })
    }

    pub fn reps(&self) -> usize {
        self.per_rep.len()
    }

    /// `(Ŝ_q, std error)`; the error comes from the delta method on the
    /// mean of per-replication q-th powers.
    pub fn estimate(&self, q: f64) -> (f64, f64) {
        let u: Vec<f64> = self
            .per_rep
            .iter()
            .map(|diffs| diffs.iter().map(|v| v.powf(q)).sum::<f64>() / diffs.len() as f64)
            .collect();
        let mc = mean_and_se(&u);
        lq_root(mc, q)
    }
}

/// `(mean, std error of mean)` of a sample of size ≥ 2.
pub(crate) fn mean_and_se(values: &[f64]) -> McEstimate {
    let m = values.len() as f64;
    let mean = values.iter().sum::<f64>() / m;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (m - 1.0).max(1.0);
    McEstimate { estimate: mean, std_error: (var / m).sqrt() }
}

/// `(m^{1/q}, (1/q) m^{1/q − 1} se)`.
pub(crate) fn lq_root(mc: McEstimate, q: f64) -> (f64, f64) {
    let value = mc.estimate.powf(1.0 / q);
    let se = if mc.estimate > 0.0 { value / (q * mc.estimate) * mc.std_error } else { 0.0 };
    (value, se)
}

fn cost_differences(
    learner: Learner,
    data: &Dataset,
    x: &[f64],
    y: f64,
    kind: CostKind,
    policy: JPolicy,
) -> Result<Vec<f64>> {
    let n = data.n();
    match learner {
        Learner::Ridge { lambda } => {
            let full = cost(kind, ridge_fit(data, lambda)?.predict(x)?, y)?;
            match policy {
                JPolicy::FixedLast => {
                    let refit = ridge_fit(&data.leave_one_out(n - 1)?, lambda)?;
                    Ok(vec![(full - cost(kind, refit.predict(x)?, y)?).abs()])
                }
                JPolicy::AverageAll => {
                    let loo = RidgeLoo::new(data, lambda)?;
                    (0..n)
                        .map(|j| {
                            let beta = loo.held_out_beta(j)?;
                            let pred = crate::linalg::dot(&beta, x);
                            Ok((full - cost(kind, pred, y)?).abs())
                        })
                        .collect()
                }
            }
        }
        Learner::Knn { k } => {
            let (full_pred, removed) = knn_predict_with_removals(data, k, x)?;
            let full = cost(kind, full_pred, y)?;
            let diff = |p: f64| cost(kind, p, y).map(|c| (full - c).abs());
            match policy {
                JPolicy::FixedLast => Ok(vec![diff(removed[n - 1])?]),
                JPolicy::AverageAll => removed.into_iter().map(diff).collect(),
            }
        }
    }
}

/// Monte Carlo estimate of `S_q(A, n)`.
pub fn empirical_lq_stability(
    learner: Learner,
    spec: &DataSpec,
    kind: CostKind,
    config: StabilityConfig,
) -> Result<StabilityEstimate> {
    config.validate()?;
    let samples = StabilitySamples::draw(learner, spec, kind, config.n, config.reps, config.j_policy, config.seed)?;
    let (s_q_hat, std_error) = samples.estimate(config.q);
    Ok(StabilityEstimate { s_q_hat, std_error, config })
}

/// Region where the ridge stability constants are valid at sample size `n`:
/// `nη > 1`, `λ > B_X²/(nη − 1)` and `λ > 1/(η(n − 1))`.
pub fn check_stability_domain(b_x: f64, lambda: f64, eta: f64, n: usize) -> Result<()> {
    if !(b_x.is_finite() && b_x > 0.0) {
        return Err(Error::Domain(format!("b_x > 0 required, got {b_x}")));
    }
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::Domain(format!("lambda > 0 required, got {lambda}")));
    }
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::Domain(format!("eta in (0,1) required, got {eta}")));
    }
    if n < 2 {
        return Err(Error::Domain(format!("n > 1 required, got {n}")));
    }
    let n_f = n as f64;
    if n_f * eta <= 1.0 {
        return Err(Error::Domain(format!("n·eta > 1 violated: n = {n}, eta = {eta}")));
    }
    let floor = b_x * b_x / (n_f * eta - 1.0);
    if lambda <= floor {
        return Err(Error::Domain(format!("lambda > b_x²/(n·eta − 1) = {floor} violated at n = {n}: lambda = {lambda}")));
    }
    let stated = 1.0 / (eta * (n_f - 1.0));
    if lambda <= stated {
        return Err(Error::Domain(format!("lambda > 1/(eta·(n − 1)) = {stated} violated at n = {n}: lambda = {lambda}")));
    }
    Ok(())
}

/// Region for the moment and PAC bounds at sample size `n`: stability at both
/// `n` and `n − 1`, plus `λ > 1/(η(n − 2))`.
pub fn check_corollary_domain(b_x: f64, lambda: f64, eta: f64, n: usize) -> Result<()> {
    if n <= 2 {
        return Err(Error::Domain(format!("n > 2 required, got {n}")));
    }
    check_stability_domain(b_x, lambda, eta, n)?;
    check_stability_domain(b_x, lambda, eta, n - 1)?;
    let stated = 1.0 / (eta * (n as f64 - 2.0));
    if lambda <= stated {
        return Err(Error::Domain(format!("lambda > 1/(eta·(n − 2)) = {stated} violated: lambda = {lambda}")));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RidgeStabilityInputs {
    pub b_x: f64,
    pub lambda: f64,
    pub eta: f64,
    pub n: usize,
    /// `‖Y‖_{2q}`; may be `+∞`.
    pub y_norm_2q: f64,
}

/// Shared factor `(1 + (B_X²+λ)/(λ(1−η))) (1 + B_X²/λ)`.
pub(crate) fn ridge_growth_factor(b_x: f64, lambda: f64, eta: f64) -> f64 {
    let b2 = b_x * b_x;
    (1.0 + (b2 + lambda) / (lambda * (1.0 - eta))) * (1.0 + b2 / lambda)
}

pub fn ridge_gamma_q(inputs: RidgeStabilityInputs) -> Result<f64> {
    let RidgeStabilityInputs { b_x, lambda, eta, n, y_norm_2q } = inputs;
    check_stability_domain(b_x, lambda, eta, n)?;
    if y_norm_2q.is_nan() || y_norm_2q < 0.0 {
        return Err(Error::invalid(format!("‖Y‖_2q must be nonnegative, got {y_norm_2q}")));
    }
    if y_norm_2q.is_infinite() {
        return Ok(f64::INFINITY);
    }
    Ok(2.0 * y_norm_2q * y_norm_2q * (b_x * b_x / (n as f64 * lambda)) * ridge_growth_factor(b_x, lambda, eta))
}

pub fn knn_gamma_1(k: usize, n: usize) -> Result<f64> {
    if k == 0 || k >= n {
        return Err(Error::invalid(format!("k = {k} must satisfy 1 <= k <= n-1 with n = {n}")));
    }
    Ok(4.0 / (2.0 * std::f64::consts::PI).sqrt() * (k as f64).sqrt() / n as f64)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamDiffCheck {
    pub lhs: f64,
    pub rhs: f64,
}

impl ParamDiffCheck {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs
    }
}

/// Distance between the full and leave-`j`-out ridge coefficients against
/// `(B_X/(nλ)) (|Y_j| + ((B_X²+λ)/(λ(1−η))) (1/(n−1)) Σ_{i≠j} |Y_i|)`.
pub fn ridge_param_diff_check(data: &Dataset, j: usize, lambda: f64, eta: f64, b_x: f64) -> Result<ParamDiffCheck> {
    let n = data.n();
    check_stability_domain(b_x, lambda, eta, n)?;
    if j >= n {
        return Err(Error::invalid(format!("index {j} out of range for n = {n}")));
    }
    let max_norm = data.max_x_norm();
    if max_norm > b_x {
        return Err(Error::precondition(format!("sample violates ‖X‖ <= b_x: max norm {max_norm} > {b_x}")));
    }
    let full = ridge_fit(data, lambda)?;
    let held = ridge_fit(&data.leave_one_out(j)?, lambda)?;
    let diff: Vec<f64> = full.beta.iter().zip(&held.beta).map(|(a, b)| a - b).collect();
    let lhs = norm2(&diff);

    let n_f = n as f64;
    let others: f64 = data.ys().iter().enumerate().filter(|&(i, _)| i != j).map(|(_, y)| y.abs()).sum();
    let ratio = (b_x * b_x + lambda) / (lambda * (1.0 - eta));
    let rhs = b_x / (n_f * lambda) * (data.y(j).abs() + ratio * others / (n_f - 1.0));
    Ok(ParamDiffCheck { lhs, rhs })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum YNormMethod {
    Analytic,
    Mc { m: usize, seed: SeedSpec },
}

/// `‖Y‖_q = (E|Y|^q)^{1/q}` under `spec`.
pub fn y_norm(spec: &DataSpec, q: f64, method: YNormMethod) -> Result<f64> {
    match method {
        YNormMethod::Analytic => y_norm_analytic(spec, q),
        YNormMethod::Mc { m, seed } => Ok(y_norm_mc(spec, q, m, seed)?.estimate),
    }
}

/// Closed form when one exists: Bernoulli labels, or noise-free linear labels
/// with zero slope or Rademacher features (exact enumeration of sign patterns).
pub fn y_norm_analytic(spec: &DataSpec, q: f64) -> Result<f64> {
    spec.validate()?;
    if !(q.is_finite() && q >= 1.0) {
        return Err(Error::invalid(format!("q must be >= 1, got {q}")));
    }
    let unavailable = || Error::invalid("no closed-form ‖Y‖_q for this spec; use the Monte Carlo method");
    match spec.y_model {
        YModel::BernoulliLabel => Ok(spec.label_rate.powf(1.0 / q)),
        YModel::LinearClipped | YModel::LinearGaussian => {
            if spec.noise_scale != 0.0 {
                return Err(unavailable());
            }
            if spec.beta_star.iter().all(|&b| b == 0.0) {
                return Ok(spec.intercept.abs());
            }
            if spec.x_family != XFamily::RademacherCoords || spec.d > MAX_ENUMERATION_DIM {
                return Err(unavailable());
            }
            let d = spec.d;
            let a = spec.b_x / (d as f64).sqrt();
            let patterns = 1u64 << d;
            let total: f64 = (0..patterns)
                .map(|mask| {
                    let s: f64 = spec
                        .beta_star
                        .iter()
                        .enumerate()
                        .map(|(i, b)| if mask >> i & 1 == 1 { b * a } else { -b * a })
                        .sum();
                    (spec.intercept + s).abs().powf(q)
                })
                .sum();
            Ok((total / patterns as f64).powf(1.0 / q))
        }
    }
}

/// Monte Carlo `‖Y‖_q` with a delta-method standard error.
pub fn y_norm_mc(spec: &DataSpec, q: f64, m: usize, seed: SeedSpec) -> Result<McEstimate> {
    if m < 2 {
        return Err(Error::invalid("Monte Carlo norm needs m >= 2"));
    }
    if !(q.is_finite() && q >= 1.0) {
        return Err(Error::invalid(format!("q must be >= 1, got {q}")));
    }
    let mut sampler = crate::datagen::PointSampler::new(spec, seed)?;
    let mut x = vec![0.0; spec.d];
    let powers: Vec<f64> = (0..m).map(|_| sampler.next_point(&mut x).abs().powf(q)).collect();
    let (estimate, std_error) = lq_root(mean_and_se(&powers), q);
    Ok(McEstimate { estimate, std_error })
}
