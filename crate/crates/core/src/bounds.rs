//! Closed-form generalisation bounds for the leave-one-out estimator.
//!
//! All evaluators are plain formula evaluations. Nothing is clamped: a bound
//! larger than the trivial cost range is returned as is, and callers report it
//! as vacuous.

use std::f64::consts::E;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::datagen::{sample_dataset, DataSpec, Dataset};
use crate::error::{Error, Result};
use crate::learners::ridge_loo_fast;
use crate::seed::SeedSpec;
use crate::stability::{lq_root, mean_and_se, ridge_growth_factor};

/// Constant of the generalised Efron–Stein moment inequality, taken at its ceiling.
pub const KAPPA: f64 = 1.271;

/// The three constants of the ridge moment bounds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaSet {
    pub gamma1: f64,
    pub gamma2: f64,
    pub gamma3: f64,
    pub b_x: f64,
    pub lambda: f64,
    pub eta: f64,
    pub kappa: f64,
}

impl GammaSet {
    /// Same formulas as [`gamma_set`] with an explicit κ.
    pub fn with_kappa(b_x: f64, lambda: f64, eta: f64, kappa: f64) -> Result<Self> {
        if !(eta > 0.0 && eta < 1.0) {
            return Err(Error::Domain(format!("eta in (0,1) required, got {eta}")));
        }
        if !(b_x.is_finite() && b_x > 0.0 && lambda.is_finite() && lambda > 0.0) {
            return Err(Error::Domain(format!("b_x > 0 and lambda > 0 required, got ({b_x}, {lambda})")));
        }
        if !(kappa.is_finite() && kappa > 0.0) {
            return Err(Error::invalid(format!("kappa must be positive, got {kappa}")));
        }
        let ratio = b_x * b_x / lambda;
        let growth = ridge_growth_factor(b_x, lambda, eta);
        let sk = kappa.sqrt();
        Ok(Self {
            gamma1: 8.0 * sk * ratio,
            gamma2: 2.0 * sk * ratio * ((8.0 + 2.0_f64.sqrt()) * growth + 4.0 * ratio),
            gamma3: 2.0 * ratio * growth,
            b_x,
            lambda,
            eta,
            kappa,
        })
    }

    pub fn sum(&self) -> f64 {
        self.gamma1 + self.gamma2 + self.gamma3
    }
}

/// `Γ₁ = 8√κ B_X²/λ`,
/// `Γ₂ = 2√κ (B_X²/λ) [(8+√2)(1 + (B_X²+λ)/(λ(1−η)))(1 + B_X²/λ) + 4B_X²/λ]`,
/// `Γ₃ = (2B_X²/λ)(1 + (B_X²+λ)/(λ(1−η)))(1 + B_X²/λ)`.
///
/// The sample-size conditions are checked separately by
/// [`crate::stability::check_corollary_domain`].
pub fn gamma_set(b_x: f64, lambda: f64, eta: f64) -> Result<GammaSet> {
    GammaSet::with_kappa(b_x, lambda, eta, KAPPA)
}

fn check_q2(q: f64) -> Result<()> {
    if q.is_finite() && q >= 2.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("moment bounds need q >= 2, got {q}")))
    }
}

/// `√(κqn)(√2 S_q(n) + 4 S_q(n−1)) + (2√(κq)/√n) ‖variance term‖_q`.
pub fn moment_bound_generic(s_q_n: f64, s_q_n1: f64, var_term_norm: f64, q: f64, n: usize) -> Result<f64> {
    check_q2(q)?;
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    if s_q_n < 0.0 || s_q_n1 < 0.0 || var_term_norm < 0.0 {
        return Err(Error::invalid("stability and variance inputs must be nonnegative"));
    }
    let n_f = n as f64;
    Ok((KAPPA * q * n_f).sqrt() * (2.0_f64.sqrt() * s_q_n + 4.0 * s_q_n1)
        + 2.0 * (KAPPA * q).sqrt() / n_f.sqrt() * var_term_norm)
}

/// `(4B_X²/λ)‖Y‖_q² + (4B_X⁴/λ²)‖Y‖_{2q}²`.
// Negated comparisons so that NaN is rejected too.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn ridge_variance_term_bound(b_x: f64, lambda: f64, y_norm_q: f64, y_norm_2q: f64) -> Result<f64> {
    if !(lambda > 0.0) || b_x < 0.0 || y_norm_q < 0.0 || y_norm_2q < 0.0 {
        return Err(Error::invalid("variance bound needs lambda > 0 and nonnegative inputs"));
    }
    let r = b_x * b_x / lambda;
    Ok(4.0 * r * y_norm_q * y_norm_q + 4.0 * r * r * y_norm_2q * y_norm_2q)
}

/// `(√q/√n)(Γ₁‖Y‖_q² + Γ₂‖Y‖_{2q}²)`, plus `(Γ₃/n)‖Y‖_{2q}²` when not centred.
pub fn ridge_moment_bound(
    gammas: &GammaSet,
    q: f64,
    n: usize,
    y_norm_q: f64,
    y_norm_2q: f64,
    centered: bool,
) -> Result<f64> {
    check_q2(q)?;
    if n < 3 {
        return Err(Error::invalid(format!("ridge moment bound needs n >= 3, got {n}")));
    }
    let n_f = n as f64;
    let centred = (q / n_f).sqrt() * (gammas.gamma1 * y_norm_q.powi(2) + gammas.gamma2 * y_norm_2q.powi(2));
    Ok(if centered { centred } else { centred + gammas.gamma3 / n_f * y_norm_2q.powi(2) })
}

/// Moment growth `E|X|^q ≤ C (Σ λ_i q^{α_i})^q` for `q ≥ q₀`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailSpec {
    pub c: f64,
    pub q0: f64,
    /// `(λ_i, α_i)` pairs.
    pub terms: Vec<(f64, f64)>,
}

impl TailSpec {
    pub fn new(c: f64, q0: f64, terms: Vec<(f64, f64)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::invalid("tail spec needs at least one term"));
        }
        let positive = |v: f64| v.is_finite() && v > 0.0;
        // a zero weight keeps its exponent in min α (the sub-Gaussian spec with E[Y] = 0)
        let weights_ok = terms.iter().all(|&(l, a)| l.is_finite() && l >= 0.0 && positive(a))
            && terms.iter().any(|&(l, _)| l > 0.0);
        if !positive(c) || !(q0.is_finite() && q0 >= 1.0) || !weights_ok {
            return Err(Error::invalid(
                "tail spec needs C > 0, q0 >= 1, exponents > 0 and nonnegative weights (at least one positive)",
            ));
        }
        Ok(Self { c, q0, terms })
    }

    pub fn min_alpha(&self) -> f64 {
        self.terms.iter().map(|t| t.1).fold(f64::INFINITY, f64::min)
    }
}

/// `Σ λ_i (e x / min α)^{α_i}`.
pub fn tail_threshold(spec: &TailSpec, x: f64) -> f64 {
    let base = E * x / spec.min_alpha();
    spec.terms.iter().map(|&(l, a)| l * base.powf(a)).sum()
}

/// `C e^{q₀ min α} e^{−x}`.
pub fn tail_prob_bound(spec: &TailSpec, x: f64) -> f64 {
    spec.c * (spec.q0 * spec.min_alpha()).exp() * (-x).exp()
}

/// Failure probability `e · e^{−x}` shared by both PAC bounds.
pub fn pac_failure_probability(x: f64) -> f64 {
    E * (-x).exp()
}

/// `√(2ex/n) B_Y² (Γ₁ + Γ₂ + Γ₃)`, holding with probability at least `1 − e·e^{−x}`.
pub fn pac_bound_bounded(gammas: &GammaSet, b_y: f64, n: usize, x: f64) -> f64 {
    (2.0 * E * x / n as f64).sqrt() * b_y * b_y * gammas.sum()
}

/// Single-term tail spec whose threshold is the bounded-Y PAC bound.
pub fn bounded_tail_spec(gammas: &GammaSet, b_y: f64, n: usize) -> Result<TailSpec> {
    TailSpec::new(1.0, 2.0, vec![(b_y * b_y * gammas.sum() / (n as f64).sqrt(), 0.5)])
}

pub fn subgaussian_m1(gammas: &GammaSet) -> f64 {
    2.0 * (2.0 * E).sqrt() * gammas.sum()
}

pub fn subgaussian_m2(gammas: &GammaSet) -> f64 {
    16.0 * E * E * (2.0 * E).powf(1.5) * gammas.sum()
}

/// `(M₁ E[Y]² √x + M₂ v x^{3/2}) / √n`.
pub fn pac_bound_subgaussian(gammas: &GammaSet, mean_y: f64, v: f64, n: usize, x: f64) -> f64 {
    (subgaussian_m1(gammas) * mean_y * mean_y * x.sqrt() + subgaussian_m2(gammas) * v * x.powf(1.5)) / (n as f64).sqrt()
}

/// Two-term tail spec (α = 1/2 and 3/2) whose threshold is the sub-Gaussian PAC bound.
///
/// The weights are the moment-growth coefficients `2ΓΣ E[Y]²/√n` and
/// `16e²ΓΣ v/√n`; the threshold multiplies them by `(2e)^{α}`, which turns
/// them into `M₁/√n` and `M₂/√n`.
pub fn subgaussian_tail_spec(gammas: &GammaSet, mean_y: f64, v: f64, n: usize) -> Result<TailSpec> {
    let sn = (n as f64).sqrt();
    let sum = gammas.sum();
    TailSpec::new(1.0, 2.0, vec![(2.0 * sum * mean_y * mean_y / sn, 0.5), (16.0 * E * E * sum * v / sn, 1.5)])
}

/// Test statistics for the Efron–Stein check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "f", rename_all = "snake_case")]
pub enum Statistic {
    Constant,
    /// Mean of the labels.
    Mean,
    /// Maximum of the labels.
    Max,
    /// Ridge leave-one-out risk of the sample.
    RidgeLoo { lambda: f64 },
}

impl Statistic {
    pub fn name(&self) -> &'static str {
        match self {
            Statistic::Constant => "constant",
            Statistic::Mean => "mean",
            Statistic::Max => "max",
            Statistic::RidgeLoo { .. } => "ridge_loo",
        }
    }

    pub fn eval(&self, data: &Dataset) -> Result<f64> {
        match *self {
            Statistic::Constant => Ok(0.0),
            Statistic::Mean => Ok(data.ys().iter().sum::<f64>() / data.n() as f64),
            Statistic::Max => Ok(data.ys().iter().copied().fold(f64::NEG_INFINITY, f64::max)),
            Statistic::RidgeLoo { lambda } => ridge_loo_fast(data, lambda),
        }
    }

    /// Parses `constant`, `mean`, `max` or `ridge_loo:<lambda>`.
    pub fn from_tag(tag: &str) -> Result<Self> {
        match tag.split_once(':') {
            None => match tag {
                "constant" => Ok(Statistic::Constant),
                "mean" => Ok(Statistic::Mean),
                "max" => Ok(Statistic::Max),
                _ => Err(Error::invalid(format!("unknown statistic {tag:?}"))),
            },
            Some(("ridge_loo", l)) => {
                let lambda: f64 = l.parse().map_err(|_| Error::invalid(format!("bad lambda in {tag:?}")))?;
                Ok(Statistic::RidgeLoo { lambda })
            }
            Some(_) => Err(Error::invalid(format!("unknown statistic {tag:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EfronSteinCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub lhs_se: f64,
    pub rhs_se: f64,
}

impl EfronSteinCheck {
    pub fn combined_se(&self) -> f64 {
        self.lhs_se.hypot(self.rhs_se)
    }

    pub fn passes(&self) -> bool {
        self.lhs <= self.rhs + 3.0 * self.combined_se()
    }
}

/// Monte Carlo check of `‖Z − EZ‖_q ≤ √(2κq) √‖Σ_j (Z − Z_j′)²‖_{q/2}`.
///
/// Streams: replication r uses `seed.child(0).child(r)` for the sample
/// (`.child(0)`) and the n independent copies (`.child(1)`); `EZ` is estimated
/// from `2·reps` further samples on `seed.child(1)`.
pub fn efron_stein_moment_check(
    stat: Statistic,
    spec: &DataSpec,
    n: usize,
    q: f64,
    reps: usize,
    seed: SeedSpec,
) -> Result<EfronSteinCheck> {
    check_q2(q)?;
    if reps < 2 || n < 2 {
        return Err(Error::invalid("Efron–Stein check needs n >= 2 and reps >= 2"));
    }
    spec.validate()?;
    let main = seed.child(0);
    let rows = (0..reps)
        .into_par_iter()
        .map(|r| {
            let rep = main.child(r as u64);
            let data = sample_dataset(spec, n, rep.child(0))?;
            let copies = sample_dataset(spec, n, rep.child(1))?;
            let z = stat.eval(&data)?;
            let mut s = 0.0;
            for j in 0..n {
                let zj = stat.eval(&data.replace_point(j, copies.x(j), copies.y(j))?)?;
                s += (z - zj).powi(2);
            }
            Ok((z, s))
        })
        .collect::<Result<Vec<(f64, f64)>>>()?;

    let side = seed.child(1);
    let ez_draws = (0..2 * reps)
        .into_par_iter()
        .map(|r| stat.eval(&sample_dataset(spec, n, side.child(r as u64))?))
        .collect::<Result<Vec<f64>>>()?;
    let ez = mean_and_se(&ez_draws);

    let dev: Vec<f64> = rows.iter().map(|(z, _)| (z - ez.estimate).abs().powf(q)).collect();
    let (lhs, lhs_se_draws) = lq_root(mean_and_se(&dev), q);
    // |∂‖Z − c‖_q / ∂c| ≤ 1
    let lhs_se = lhs_se_draws.hypot(ez.std_error);

    let inner: Vec<f64> = rows.iter().map(|(_, s)| s.powf(q / 2.0)).collect();
    let (root, root_se) = lq_root(mean_and_se(&inner), q);
    let factor = (2.0 * KAPPA * q).sqrt();
    Ok(EfronSteinCheck { lhs, rhs: factor * root, lhs_se, rhs_se: factor * root_se })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datagen::XFamily;
    use approx::assert_relative_eq;

    fn reference() -> GammaSet {
        gamma_set(1.0, 1.0, 0.5).unwrap()
    }

    #[test]
    fn gamma_set_reference_values() {
        let g = reference();
        assert_relative_eq!(g.gamma1, 9.0191, max_relative = 1e-4);
        assert_relative_eq!(g.gamma2, 221.288, max_relative = 1e-5);
        assert_relative_eq!(g.gamma3, 20.0, max_relative = 1e-14);
        assert_eq!(g.kappa, KAPPA);
    }

    #[test]
    fn gamma_set_large_lambda_limit() {
        let g = gamma_set(1.0, 1e6, 0.5).unwrap();
        assert!(g.gamma1 <= 1e-4 && g.gamma2 <= 1e-4 && g.gamma3 <= 1e-4);
        // Γ₃ → (2/λ)(1 + 1/(1−η))
        assert_relative_eq!(g.gamma3, 2e-6 * 3.0, max_relative = 1e-5);
    }

    #[test]
    fn gamma_ratio_depends_on_kappa_only_through_gamma1() {
        let g = reference();
        let unit = GammaSet::with_kappa(1.0, 1.0, 0.5, 1.0).unwrap();
        assert_relative_eq!(unit.gamma1, 8.0, max_relative = 1e-15);
        assert_eq!(unit.gamma3, g.gamma3);
        assert_relative_eq!(unit.gamma3 / unit.gamma1, 20.0 / 8.0, max_relative = 1e-15);
    }

    #[test]
    fn gamma_set_rejects_bad_eta() {
        assert!(gamma_set(1.0, 1.0, 0.0).is_err());
        assert!(gamma_set(1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn generic_moment_bound() {
        assert_eq!(moment_bound_generic(0.0, 0.0, 0.0, 2.0, 10).unwrap(), 0.0);
        let n = 37;
        let s = 1.0 / n as f64;
        let expected = (2.0 * KAPPA * n as f64).sqrt() * (2.0_f64.sqrt() + 4.0) / n as f64;
        // √(κqn)(√2 s + 4 s) with q = 2 equals √(2κn)(√2+4)/n
        assert_relative_eq!(moment_bound_generic(s, s, 0.0, 2.0, n).unwrap(), expected, max_relative = 1e-14);
        // q=2, n=100: √254.2·(0.0141421+0.048) + (2√2.542/10)·0.5
        let pinned = (254.2_f64).sqrt() * (2.0_f64.sqrt() * 0.01 + 0.048) + 2.0 * 2.542_f64.sqrt() / 10.0 * 0.5;
        assert_relative_eq!(moment_bound_generic(0.01, 0.012, 0.5, 2.0, 100).unwrap(), pinned, max_relative = 1e-14);
        assert_relative_eq!(pinned, 1.150209016, max_relative = 1e-9);
        assert!(moment_bound_generic(0.1, 0.1, 0.1, 1.5, 10).is_err());
    }

    #[test]
    fn variance_term_examples() {
        assert_eq!(ridge_variance_term_bound(1.0, 1.0, 0.0, 0.0).unwrap(), 0.0);
        assert_eq!(ridge_variance_term_bound(1.0, 1.0, 1.0, 1.0).unwrap(), 8.0);
        assert_eq!(ridge_variance_term_bound(1.0, 2.0, 1.0, 1.0).unwrap(), 3.0);
    }

    #[test]
    fn ridge_moment_bound_examples() {
        let g = reference();
        assert_eq!(ridge_moment_bound(&g, 2.0, 100, 0.0, 0.0, true).unwrap(), 0.0);
        assert_eq!(ridge_moment_bound(&g, 2.0, 100, 0.0, 0.0, false).unwrap(), 0.0);
        let c = ridge_moment_bound(&g, 2.0, 100, 1.0, 1.0, true).unwrap();
        let u = ridge_moment_bound(&g, 2.0, 100, 1.0, 1.0, false).unwrap();
        assert_relative_eq!(u - c, g.gamma3 / 100.0, max_relative = 1e-12);
        assert_relative_eq!(u, 32.770370794, max_relative = 1e-9);
        assert!(ridge_moment_bound(&g, 1.0, 100, 1.0, 1.0, true).is_err());
        assert!(ridge_moment_bound(&g, 2.0, 2, 1.0, 1.0, true).is_err());
    }

    #[test]
    fn tail_threshold_examples() {
        let one = TailSpec::new(1.0, 2.0, vec![(0.5, 0.5)]).unwrap();
        assert_relative_eq!(tail_threshold(&one, 2.0), 0.5 * (4.0 * E).sqrt(), max_relative = 1e-15);
        assert_relative_eq!(tail_threshold(&one, 2.0), 1.64872, max_relative = 1e-5);
        assert!(tail_threshold(&one, 1e-300) < 1e-140);
        let two = TailSpec::new(1.0, 2.0, vec![(1.0, 0.5), (2.0, 1.5)]).unwrap();
        let expected = (2.0 * E).sqrt() + 2.0 * (2.0 * E).powf(1.5);
        assert_relative_eq!(tail_threshold(&two, 1.0), expected, max_relative = 1e-15);
        assert_relative_eq!(expected, 27.685, max_relative = 1e-4);
    }

    #[test]
    fn tail_probability_examples() {
        let spec = TailSpec::new(1.0, 2.0, vec![(3.0, 0.5), (1.0, 2.0)]).unwrap();
        assert_relative_eq!(tail_prob_bound(&spec, 2.0), (-1.0_f64).exp(), max_relative = 1e-15);
        let mut prev = f64::INFINITY;
        for i in 1..50 {
            let x = i as f64;
            let p = tail_prob_bound(&spec, x);
            assert!(p < prev && p > 0.0);
            assert_relative_eq!(tail_prob_bound(&spec, 2.0 * x), p * (-x).exp(), max_relative = 1e-12);
            prev = p;
        }
        assert!(TailSpec::new(1.0, 2.0, vec![]).is_err());
        assert!(TailSpec::new(1.0, 2.0, vec![(0.0, 1.0)]).is_err());
        assert!(TailSpec::new(1.0, 2.0, vec![(-1.0, 1.0), (1.0, 1.0)]).is_err());
        assert!(TailSpec::new(1.0, 0.5, vec![(1.0, 1.0)]).is_err());
    }

    #[test]
    fn pac_bounded_examples() {
        let g = reference();
        assert_eq!(pac_bound_bounded(&g, 0.0, 100, 1.0), 0.0);
        assert_relative_eq!(pac_bound_bounded(&g, 1.0, 400, 1.0) * 2.0, pac_bound_bounded(&g, 1.0, 100, 1.0), max_relative = 1e-14);
        assert_relative_eq!(pac_bound_bounded(&g, 1.0, 100, 1.0), 58.362751085, max_relative = 1e-9);
    }

    #[test]
    fn pac_subgaussian_examples() {
        let g = reference();
        assert!(pac_bound_subgaussian(&g, 0.0, 1e-300, 100, 1.0) < 1e-290);
        for &x in &[0.1, 1.0, 3.0, 10.0] {
            let r = pac_bound_subgaussian(&g, 0.7, 0.2, 50, 4.0 * x) / pac_bound_subgaussian(&g, 0.7, 0.2, 50, x);
            assert!((2.0 - 1e-12..=8.0 + 1e-12).contains(&r), "ratio {r}");
        }
        // 16e²(2e)^{3/2} per unit ΓΣ
        assert_relative_eq!(subgaussian_m2(&g) / g.sum(), 1498.6, max_relative = 1e-4);
        let pinned = (2.0 * (2.0 * E).sqrt() + 16.0 * E * E * (2.0 * E).powf(1.5)) * g.sum() / 10.0;
        assert_relative_eq!(pac_bound_subgaussian(&g, 1.0, 1.0, 100, 1.0), pinned, max_relative = 1e-14);
        assert_relative_eq!(pinned, 37_628.635_642, max_relative = 1e-9);
    }

    #[test]
    fn pac_bounds_reproduce_tail_thresholds() {
        for (b_x, lambda, eta) in [(1.0, 1.0, 0.5), (0.5, 0.2, 0.3), (2.0, 3.0, 0.9)] {
            let g = gamma_set(b_x, lambda, eta).unwrap();
            for n in [10, 100, 1000] {
                for x in [0.3, 1.0, 2.0, 5.0] {
                    let t = tail_threshold(&bounded_tail_spec(&g, 1.3, n).unwrap(), x);
                    assert_relative_eq!(pac_bound_bounded(&g, 1.3, n, x), t, max_relative = 1e-12);
                    for mean_y in [0.0, 0.4] {
                        let t = tail_threshold(&subgaussian_tail_spec(&g, mean_y, 0.7, n).unwrap(), x);
                        assert_relative_eq!(pac_bound_subgaussian(&g, mean_y, 0.7, n, x), t, max_relative = 1e-12);
                    }
                    let spec = bounded_tail_spec(&g, 1.3, n).unwrap();
                    assert_relative_eq!(tail_prob_bound(&spec, x), pac_failure_probability(x), max_relative = 1e-14);
                }
            }
        }
    }

    #[test]
    fn statistic_tags() {
        assert_eq!(Statistic::from_tag("mean").unwrap(), Statistic::Mean);
        assert_eq!(Statistic::from_tag("ridge_loo:0.5").unwrap(), Statistic::RidgeLoo { lambda: 0.5 });
        assert!(Statistic::from_tag("median").is_err());
        assert!(Statistic::from_tag("ridge_loo:x").is_err());
    }

    #[test]
    fn efron_stein_constant_is_zero() {
        let spec = DataSpec::linear_clipped(XFamily::RademacherCoords, 1.0, vec![1.0], 0.0, 1.0);
        let c = efron_stein_moment_check(Statistic::Constant, &spec, 10, 2.0, 50, SeedSpec::new(1, 0)).unwrap();
        assert_eq!((c.lhs, c.rhs), (0.0, 0.0));
        assert!(c.passes());
    }

    #[test]
    fn efron_stein_max_statistic_passes() {
        let spec = DataSpec::linear_gaussian(XFamily::UniformBall, 1.0, vec![0.3, 0.1], 1.0);
        let c = efron_stein_moment_check(Statistic::Max, &spec, 20, 4.0, 200, SeedSpec::new(2, 0)).unwrap();
        assert!(c.passes(), "{c:?}");
    }
}
