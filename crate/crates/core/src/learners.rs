//! Ridge regression, the kNN classifier, cost functions and the
//! leave-one-out risk estimator.
//!
//! The ridge objective is `(1/n) Σ (Y_i − ⟨X_i, β⟩)² + λ‖β‖²`, so the estimator is
//! `β = (XᵀX + nλI)^{-1} XᵀY`. A leave-one-out refit on `n − 1` points therefore
//! uses `(n − 1)λ`, not `nλ`; the fast path in [`ridge_loo_fast`] works with the
//! Gram matrix `XᵀX + (n − 1)λI` shared by all refits and downdates it by one
//! rank-one term per held-out point.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::datagen::{DataSpec, Dataset, PointSampler};
use crate::error::{Error, Result};
use crate::linalg::{dot, solve_regularized, Cholesky, SquareMatrix};
use crate::seed::SeedSpec;

/// Reciprocal pivot above which the rank-one downdate is abandoned for a plain refit.
pub const DOWNDATE_CONDITION_LIMIT: f64 = 1e12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RidgeModel {
    pub lambda: f64,
    pub n_fit: usize,
    pub beta: Vec<f64>,
}

impl RidgeModel {
    pub fn predict(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.beta.len() {
            return Err(Error::DimensionMismatch { expected: self.beta.len(), got: x.len() });
        }
        Ok(dot(&self.beta, x))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// `(1/n) Σ (Y_i − ⟨X_i, β⟩)² + λ‖β‖²` on `data`.
    pub fn objective(&self, data: &Dataset) -> f64 {
        ridge_objective(data, self.lambda, &self.beta)
    }
}

pub fn ridge_objective(data: &Dataset, lambda: f64, beta: &[f64]) -> f64 {
    let n = data.n() as f64;
    let rss: f64 = data.rows().map(|(x, y)| (y - dot(x, beta)).powi(2)).sum();
    rss / n + lambda * dot(beta, beta)
}

fn gram(data: &Dataset) -> (SquareMatrix, Vec<f64>) {
    let d = data.dim();
    let mut g = SquareMatrix::zeros(d);
    let mut r = vec![0.0; d];
    for (x, y) in data.rows() {
        for i in 0..d {
            r[i] += x[i] * y;
            for j in 0..=i {
                g.set(i, j, g.get(i, j) + x[i] * x[j]);
            }
        }
    }
    for i in 0..d {
        for j in 0..i {
            g.set(j, i, g.get(i, j));
        }
    }
    (g, r)
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda.is_finite() && lambda > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("lambda must be positive and finite, got {lambda}")))
    }
}

/// `β = (1/n)(Σ̂ + λI)^{-1} XᵀY` with `Σ̂ = XᵀX / n`.
pub fn ridge_fit(data: &Dataset, lambda: f64) -> Result<RidgeModel> {
    check_lambda(lambda)?;
    let n = data.n() as f64;
    let (g, r) = gram(data);
    let sigma_hat = g.scale(1.0 / n);
    let rhs: Vec<f64> = r.iter().map(|v| v / n).collect();
    let beta = solve_regularized(&sigma_hat, lambda, &rhs)?;
    Ok(RidgeModel { lambda, n_fit: data.n(), beta })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CostKind {
    Squared,
    ZeroOne,
}

pub fn cost(kind: CostKind, y_hat: f64, y: f64) -> Result<f64> {
    match kind {
        CostKind::Squared => Ok((y_hat - y).powi(2)),
        CostKind::ZeroOne => {
            let binary = |v: f64| v == 0.0 || v == 1.0;
            if !binary(y_hat) || !binary(y) {
                return Err(Error::invalid(format!("zero-one cost needs labels in {{0,1}}, got ({y_hat}, {y})")));
            }
            Ok(if y_hat == y { 0.0 } else { 1.0 })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnnParams {
    pub k: usize,
}

fn check_binary_labels(data: &Dataset) -> Result<()> {
    match data.ys().iter().find(|&&y| y != 0.0 && y != 1.0) {
        Some(y) => Err(Error::invalid(format!("kNN needs labels in {{0,1}}, found {y}"))),
        None => Ok(()),
    }
}

/// Training indices sorted by squared Euclidean distance to `x`, ties broken by index.
pub fn neighbour_order(data: &Dataset, x: &[f64]) -> Result<Vec<usize>> {
    if x.len() != data.dim() {
        return Err(Error::DimensionMismatch { expected: data.dim(), got: x.len() });
    }
    let dist: Vec<f64> = (0..data.n())
        .map(|i| data.x(i).iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum())
        .collect();
    let mut order: Vec<usize> = (0..data.n()).collect();
    order.sort_by(|&a, &b| dist[a].total_cmp(&dist[b]).then(a.cmp(&b)));
    Ok(order)
}

#[inline]
fn majority_vote(label_sum: f64, k: usize) -> f64 {
    if 2.0 * label_sum >= k as f64 {
        1.0
    } else {
        0.0
    }
}

/// 1 iff the labels of the k nearest neighbours of `x` sum to at least `k/2`.
pub fn knn_classify(data: &Dataset, params: KnnParams, x: &[f64]) -> Result<f64> {
    let k = params.k;
    if k == 0 || k + 1 > data.n() {
        return Err(Error::invalid(format!("k = {k} must satisfy 1 <= k <= n-1 with n = {}", data.n())));
    }
    check_binary_labels(data)?;
    let order = neighbour_order(data, x)?;
    let sum: f64 = order[..k].iter().map(|&i| data.y(i)).sum();
    Ok(majority_vote(sum, k))
}

/// kNN predictions at `x` for the full sample and for every `τ_j` sample,
/// from a single distance sort. Element `j` of the second vector is the
/// prediction after removing training point `j`.
pub fn knn_predict_with_removals(data: &Dataset, k: usize, x: &[f64]) -> Result<(f64, Vec<f64>)> {
    if k == 0 || k + 2 > data.n() {
        return Err(Error::invalid(format!("k = {k} needs n >= k+2 for removals, n = {}", data.n())));
    }
    check_binary_labels(data)?;
    let order = neighbour_order(data, x)?;
    let sum: f64 = order[..k].iter().map(|&i| data.y(i)).sum();
    let full = majority_vote(sum, k);
    let replacement = data.y(order[k]);
    let mut removed = vec![full; data.n()];
    for &j in &order[..k] {
        removed[j] = majority_vote(sum - data.y(j) + replacement, k);
    }
    Ok((full, removed))
}

/// A learning algorithm whose leave-one-out risk can be estimated.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Learner {
    Ridge { lambda: f64 },
    Knn { k: usize },
}

impl Learner {
    pub fn default_cost(&self) -> CostKind {
        match self {
            Learner::Ridge { .. } => CostKind::Squared,
            Learner::Knn { .. } => CostKind::ZeroOne,
        }
    }

    fn check_cost(&self, kind: CostKind) -> Result<()> {
        match (self, kind) {
            (Learner::Ridge { .. }, CostKind::ZeroOne) => {
                Err(Error::invalid("ridge predictions are real-valued; zero-one cost does not apply"))
            }
            _ => Ok(()),
        }
    }

    /// Fits on `data` and predicts at `x`.
    pub fn fit_predict(&self, data: &Dataset, x: &[f64]) -> Result<f64> {
        match *self {
            Learner::Ridge { lambda } => ridge_fit(data, lambda)?.predict(x),
            Learner::Knn { k } => knn_classify(data, KnnParams { k }, x),
        }
    }
}

/// `R̂₁ = (1/n) Σ c(A(τ_i(D), X_i), Y_i)`, refitting from scratch for every i.
pub fn loo_estimate(learner: Learner, data: &Dataset, kind: CostKind) -> Result<f64> {
    learner.check_cost(kind)?;
    let n = data.n();
    match learner {
        Learner::Ridge { lambda } => {
            check_lambda(lambda)?;
            if n < 2 {
                return Err(Error::precondition("leave-one-out needs n >= 2"));
            }
        }
        Learner::Knn { k } => {
            if k == 0 || n < k + 2 {
                return Err(Error::precondition(format!("kNN leave-one-out needs n >= k+2, n = {n}, k = {k}")));
            }
        }
    }
    let costs: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|i| {
            let rest = data.leave_one_out(i)?;
            let pred = learner.fit_predict(&rest, data.x(i))?;
            cost(kind, pred, data.y(i))
        })
        .collect::<Result<_>>()?;
    Ok(costs.iter().sum::<f64>() / n as f64)
}

/// Leave-one-out ridge refits from one factorisation.
///
/// With `G = XᵀX + (n−1)λI` and `r = XᵀY`, the refit without point j is
/// `(G − x_j x_jᵀ)^{-1}(r − x_j y_j)`, which Sherman–Morrison turns into
/// `O(d²)` work per j once `G` is factored.
pub struct RidgeLoo<'a> {
    data: &'a Dataset,
    lambda: f64,
    chol: Cholesky,
    beta_g: Vec<f64>,
}

impl<'a> RidgeLoo<'a> {
    pub fn new(data: &'a Dataset, lambda: f64) -> Result<Self> {
        check_lambda(lambda)?;
        let n = data.n();
        if n < 2 {
            return Err(Error::precondition("leave-one-out needs n >= 2"));
        }
        let (g, r) = gram(data);
        let chol = Cholesky::factor(&g.add_diagonal((n - 1) as f64 * lambda))?;
        let beta_g = chol.solve(&r)?;
        Ok(Self { data, lambda, chol, beta_g })
    }

    /// `(G^{-1} x_j, x_jᵀ G^{-1} x_j)`, or `None` when the downdate is ill-conditioned.
    // Negated comparison so that a NaN pivot counts as ill-conditioned.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    fn leverage(&self, j: usize) -> Option<(Vec<f64>, f64)> {
        let x = self.data.x(j);
        let u = self.chol.solve(x).expect("dimension checked");
        let h = dot(x, &u);
        let pivot = 1.0 - h;
        if !(pivot > 0.0) || 1.0 / pivot > DOWNDATE_CONDITION_LIMIT {
            return None;
        }
        Some((u, h))
    }

    fn naive_refit(&self, j: usize) -> Result<RidgeModel> {
        ridge_fit(&self.data.leave_one_out(j)?, self.lambda)
    }

    /// Prediction at `X_j` of the model refit without point j.
    pub fn held_out_prediction(&self, j: usize) -> Result<f64> {
        let x = self.data.x(j);
        match self.leverage(j) {
            Some((_, h)) => Ok((dot(x, &self.beta_g) - h * self.data.y(j)) / (1.0 - h)),
            None => self.naive_refit(j)?.predict(x),
        }
    }

    /// Coefficients of the model refit without point j.
    pub fn held_out_beta(&self, j: usize) -> Result<Vec<f64>> {
        let x = self.data.x(j);
        let y = self.data.y(j);
        match self.leverage(j) {
            Some((u, h)) => {
                let w: Vec<f64> = self.beta_g.iter().zip(&u).map(|(b, ui)| b - ui * y).collect();
                let s = dot(x, &w) / (1.0 - h);
                Ok(w.iter().zip(&u).map(|(wi, ui)| wi + ui * s).collect())
            }
            None => Ok(self.naive_refit(j)?.beta),
        }
    }
}

/// Same value as [`loo_estimate`] for ridge with squared cost, via rank-one downdates.
pub fn ridge_loo_fast(data: &Dataset, lambda: f64) -> Result<f64> {
    let loo = RidgeLoo::new(data, lambda)?;
    let mut total = 0.0;
    for j in 0..data.n() {
        total += (loo.held_out_prediction(j)? - data.y(j)).powi(2);
    }
    Ok(total / data.n() as f64)
}

/// Anything that maps a feature vector to a prediction.
pub trait Predictor {
    fn predict_point(&self, x: &[f64]) -> Result<f64>;
}

impl Predictor for RidgeModel {
    fn predict_point(&self, x: &[f64]) -> Result<f64> {
        self.predict(x)
    }
}

/// A kNN classifier bound to its training sample.
pub struct KnnClassifier<'a> {
    pub data: &'a Dataset,
    pub params: KnnParams,
}

impl Predictor for KnnClassifier<'_> {
    fn predict_point(&self, x: &[f64]) -> Result<f64> {
        knn_classify(self.data, self.params, x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub std_error: f64,
}

/// Monte Carlo estimate of `L_P = E[c(A(D, X), Y)]` over `m` fresh draws.
pub fn prediction_error_mc<P: Predictor + ?Sized>(
    predictor: &P,
    spec: &DataSpec,
    m: usize,
    kind: CostKind,
    seed: SeedSpec,
) -> Result<McEstimate> {
    if m < 2 {
        return Err(Error::invalid("Monte Carlo prediction error needs m >= 2"));
    }
    let mut sampler = PointSampler::new(spec, seed)?;
    let mut x = vec![0.0; spec.d];
    // Welford
    let (mut mean, mut m2) = (0.0, 0.0);
    for i in 0..m {
        let y = sampler.next_point(&mut x);
        let c = cost(kind, predictor.predict_point(&x)?, y)?;
        let delta = c - mean;
        mean += delta / (i + 1) as f64;
        m2 += delta * (c - mean);
    }
    let var = m2 / (m - 1) as f64;
    Ok(McEstimate { estimate: mean, std_error: (var / m as f64).sqrt() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datagen::{sample_dataset, XFamily};
    use approx::assert_relative_eq;

    fn ds(xs: &[&[f64]], ys: &[f64]) -> Dataset {
        Dataset::from_rows(&xs.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), ys).unwrap()
    }

    #[test]
    fn ridge_constant_data() {
        let data = ds(&[&[1.0], &[1.0], &[1.0]], &[2.0, 2.0, 2.0]);
        let m = ridge_fit(&data, 1.0).unwrap();
        assert_relative_eq!(m.beta[0], 1.0, epsilon = 1e-14);
        assert_eq!(m.n_fit, 3);
    }

    #[test]
    fn ridge_heavy_shrinkage() {
        let spec = DataSpec::linear_clipped(XFamily::UniformBall, 1.0, vec![0.5, -0.5, 0.2], 0.3, 2.0);
        let data = sample_dataset(&spec, 40, SeedSpec::new(2, 0)).unwrap();
        let m = ridge_fit(&data, 1e9).unwrap();
        assert!(crate::linalg::norm2(&m.beta) <= 1e-6 * data.max_abs_y().max(1.0));
    }

    #[test]
    fn ridge_hand_case_matches_cramer() {
        // XᵀX = [[2,1],[1,2]], XᵀY = (4,5), n = 3, λ = 0.5
        // (XᵀX + nλI) β = XᵀY → [[3.5,1],[1,3.5]] β = (4,5), det = 11.25
        let data = ds(&[&[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]], &[1.0, 2.0, 3.0]);
        let m = ridge_fit(&data, 0.5).unwrap();
        assert_relative_eq!(m.beta[0], (3.5 * 4.0 - 5.0) / 11.25, epsilon = 1e-10);
        assert_relative_eq!(m.beta[1], (3.5 * 5.0 - 4.0) / 11.25, epsilon = 1e-10);
    }

    #[test]
    fn ridge_rejects_bad_lambda() {
        let data = ds(&[&[1.0]], &[1.0]);
        assert!(ridge_fit(&data, 0.0).is_err());
        assert!(ridge_fit(&data, -1.0).is_err());
        assert!(ridge_fit(&data, f64::NAN).is_err());
    }

    #[test]
    fn predict_examples() {
        let zero = RidgeModel { lambda: 1.0, n_fit: 1, beta: vec![0.0, 0.0] };
        assert_eq!(zero.predict(&[3.0, -7.0]).unwrap(), 0.0);
        let m = RidgeModel { lambda: 1.0, n_fit: 1, beta: vec![1.0, 1.0] };
        assert_eq!(m.predict(&[2.0, 3.0]).unwrap(), 5.0);
        assert!(m.predict(&[1.0]).is_err());
    }

    #[test]
    fn model_json_shape() {
        let m = RidgeModel { lambda: 0.5, n_fit: 3, beta: vec![1.0, -2.0] };
        let s = m.to_json().unwrap();
        assert_eq!(s, r#"{"lambda":0.5,"n_fit":3,"beta":[1.0,-2.0]}"#);
        assert_eq!(RidgeModel::from_json(&s).unwrap(), m);
    }

    #[test]
    fn cost_examples() {
        assert_eq!(cost(CostKind::Squared, 3.0, 1.0).unwrap(), 4.0);
        assert_eq!(cost(CostKind::ZeroOne, 1.0, 1.0).unwrap(), 0.0);
        assert_eq!(cost(CostKind::ZeroOne, 0.0, 1.0).unwrap(), 1.0);
        assert!(cost(CostKind::ZeroOne, 0.5, 1.0).is_err());
    }

    #[test]
    fn knn_exact_match() {
        let data = ds(&[&[0.0], &[1.0], &[5.0]], &[0.0, 1.0, 0.0]);
        assert_eq!(knn_classify(&data, KnnParams { k: 1 }, &[1.0]).unwrap(), 1.0);
    }

    #[test]
    fn knn_half_vote_is_positive() {
        let data = ds(&[&[0.0], &[1.0], &[9.0]], &[1.0, 0.0, 0.0]);
        assert_eq!(knn_classify(&data, KnnParams { k: 2 }, &[0.4]).unwrap(), 1.0);
    }

    #[test]
    fn knn_ties_go_to_lowest_index() {
        // points 0 and 1 are equidistant from x; k = 1 must pick index 0
        let data = ds(&[&[-1.0], &[1.0], &[4.0]], &[1.0, 0.0, 0.0]);
        assert_eq!(knn_classify(&data, KnnParams { k: 1 }, &[0.0]).unwrap(), 1.0);
        let swapped = ds(&[&[1.0], &[-1.0], &[4.0]], &[0.0, 1.0, 0.0]);
        assert_eq!(knn_classify(&swapped, KnnParams { k: 1 }, &[0.0]).unwrap(), 0.0);
    }

    #[test]
    fn knn_matches_brute_force_sort() {
        let xs = [0.3, -1.2, 2.5, 0.9, -0.1];
        let ys = [1.0, 0.0, 0.0, 1.0, 0.0];
        let data = ds(&xs.iter().map(std::slice::from_ref).collect::<Vec<_>>(), &ys);
        for &q in &[-2.0, -0.5, 0.0, 0.6, 1.7, 3.0] {
            // exhaustive: for each point count how many are strictly closer or tied with lower index
            let mut votes = 0.0;
            for i in 0..5 {
                let di = (xs[i] - q).abs();
                let rank = (0..5)
                    .filter(|&j| {
                        let dj = (xs[j] - q).abs();
                        dj < di || (dj == di && j < i)
                    })
                    .count();
                if rank < 3 {
                    votes += ys[i];
                }
            }
            let expect = if votes >= 1.5 { 1.0 } else { 0.0 };
            assert_eq!(knn_classify(&data, KnnParams { k: 3 }, &[q]).unwrap(), expect, "x = {q}");
        }
    }

    #[test]
    fn knn_errors() {
        let data = ds(&[&[0.0], &[1.0]], &[0.0, 1.0]);
        assert!(knn_classify(&data, KnnParams { k: 2 }, &[0.0]).is_err());
        assert!(knn_classify(&data, KnnParams { k: 0 }, &[0.0]).is_err());
        let nonbinary = ds(&[&[0.0], &[1.0], &[2.0]], &[0.0, 2.0, 1.0]);
        assert!(knn_classify(&nonbinary, KnnParams { k: 1 }, &[0.0]).is_err());
    }

    #[test]
    fn knn_removals_match_explicit_refits() {
        let spec = DataSpec::bernoulli(XFamily::UniformBall, 1.0, vec![0.3, 0.2], 0.5);
        let data = sample_dataset(&spec, 30, SeedSpec::new(77, 0)).unwrap();
        let probe = sample_dataset(&spec, 5, SeedSpec::new(77, 1)).unwrap();
        for k in [1, 2, 3, 5] {
            for t in 0..probe.n() {
                let x = probe.x(t);
                let (full, removed) = knn_predict_with_removals(&data, k, x).unwrap();
                assert_eq!(full, knn_classify(&data, KnnParams { k }, x).unwrap());
                for (j, &r) in removed.iter().enumerate() {
                    let rest = data.leave_one_out(j).unwrap();
                    assert_eq!(r, knn_classify(&rest, KnnParams { k }, x).unwrap());
                }
            }
        }
    }

    #[test]
    fn loo_zero_labels() {
        let spec = DataSpec::linear_clipped(XFamily::UniformCube, 1.0, vec![0.0; 3], 0.0, 1.0);
        let data = sample_dataset(&spec, 12, SeedSpec::new(1, 1)).unwrap();
        assert_eq!(loo_estimate(Learner::Ridge { lambda: 0.3 }, &data, CostKind::Squared).unwrap(), 0.0);
        assert_eq!(ridge_loo_fast(&data, 0.3).unwrap(), 0.0);
    }

    #[test]
    fn loo_two_point_hand_case() {
        // Holding out (1, 0) leaves (1, 2): β = 2/(1+1) = 1, cost (0-1)² = 1.
        // Holding out (1, 2) leaves (1, 0): β = 0, cost (2-0)² = 4.
        let data = ds(&[&[1.0], &[1.0]], &[0.0, 2.0]);
        let naive = loo_estimate(Learner::Ridge { lambda: 1.0 }, &data, CostKind::Squared).unwrap();
        assert_relative_eq!(naive, 2.5, epsilon = 1e-14);
        assert_relative_eq!(ridge_loo_fast(&data, 1.0).unwrap(), naive, max_relative = 1e-9);
    }

    #[test]
    fn loo_knn_perfectly_separated() {
        let data = ds(&[&[0.0], &[0.1], &[0.2], &[5.0], &[5.1], &[5.2]], &[0.0, 0.0, 0.0, 1.0, 1.0, 1.0]);
        assert_eq!(loo_estimate(Learner::Knn { k: 1 }, &data, CostKind::ZeroOne).unwrap(), 0.0);
    }

    #[test]
    fn loo_preconditions() {
        let one = ds(&[&[1.0]], &[1.0]);
        assert!(loo_estimate(Learner::Ridge { lambda: 1.0 }, &one, CostKind::Squared).is_err());
        assert!(ridge_loo_fast(&one, 1.0).is_err());
        let three = ds(&[&[0.0], &[1.0], &[2.0]], &[0.0, 1.0, 1.0]);
        assert!(loo_estimate(Learner::Knn { k: 2 }, &three, CostKind::ZeroOne).is_err());
        assert!(loo_estimate(Learner::Ridge { lambda: 1.0 }, &three, CostKind::ZeroOne).is_err());
    }

    #[test]
    fn held_out_beta_matches_refit() {
        let spec = DataSpec::linear_gaussian(XFamily::UniformBall, 1.0, vec![0.4, -0.1, 0.3], 0.5);
        let data = sample_dataset(&spec, 25, SeedSpec::new(5, 0)).unwrap();
        let loo = RidgeLoo::new(&data, 0.2).unwrap();
        for j in 0..data.n() {
            let fast = loo.held_out_beta(j).unwrap();
            let slow = ridge_fit(&data.leave_one_out(j).unwrap(), 0.2).unwrap().beta;
            for (a, b) in fast.iter().zip(&slow) {
                assert_relative_eq!(a, b, epsilon = 1e-12, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn prediction_error_examples() {
        let spec = DataSpec::linear_clipped(XFamily::UniformBall, 1.0, vec![0.5, 0.25], 0.0, 1.0);
        let model = RidgeModel { lambda: 1.0, n_fit: 1, beta: spec.beta_star.clone() };
        let est = prediction_error_mc(&model, &spec, 500, CostKind::Squared, SeedSpec::new(1, 2)).unwrap();
        assert!(est.estimate < 1e-28);

        let constant = DataSpec::linear_clipped(XFamily::UniformCube, 1.0, vec![0.0], 0.0, 2.0).with_intercept(2.0);
        let zero = RidgeModel { lambda: 1.0, n_fit: 1, beta: vec![0.0] };
        let est = prediction_error_mc(&zero, &constant, 100, CostKind::Squared, SeedSpec::new(1, 2)).unwrap();
        assert_eq!(est.estimate, 4.0);
        assert_eq!(est.std_error, 0.0);

        let noisy = DataSpec::linear_gaussian(XFamily::UniformBall, 1.0, vec![0.5, 0.25], 1.0);
        let a = prediction_error_mc(&zero_d2(), &noisy, 1000, CostKind::Squared, SeedSpec::new(9, 9)).unwrap();
        let b = prediction_error_mc(&zero_d2(), &noisy, 1000, CostKind::Squared, SeedSpec::new(9, 9)).unwrap();
        assert_eq!(a.estimate.to_bits(), b.estimate.to_bits());
        assert_eq!(a.std_error.to_bits(), b.std_error.to_bits());
        assert!(prediction_error_mc(&zero_d2(), &noisy, 1, CostKind::Squared, SeedSpec::new(9, 9)).is_err());
    }

    fn zero_d2() -> RidgeModel {
        RidgeModel { lambda: 1.0, n_fit: 1, beta: vec![0.0, 0.0] }
    }
}
