//! Synthetic samples under bounded-X, bounded-Y and sub-Gaussian-Y assumptions.
//!
//! Every X family satisfies `‖X‖₂ ≤ b_x` by construction, never by rejection,
//! so the bound holds exactly (after a final floating-point guard) and draws
//! stay reproducible from a single [`SeedSpec`].

use std::io::{Read, Write};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, norm2};
use crate::seed::SeedSpec;

/// Maximum dimension for which noise-free Rademacher moments are enumerated exactly.
pub const MAX_ENUMERATION_DIM: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum XFamily {
    /// Uniform in the Euclidean ball of radius `b_x`.
    UniformBall,
    /// Uniform in the cube of side `2 b_x / √d`.
    UniformCube,
    /// Independent coordinates `±b_x / √d`.
    RademacherCoords,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum YModel {
    /// `clip(intercept + ⟨β*, X⟩ + σ ε, ±b_y)`, with ε standard normal.
    LinearClipped,
    /// `intercept + ⟨β*, X⟩ + σ ε`, unbounded but sub-Gaussian.
    LinearGaussian,
    /// `Y ~ Bernoulli(label_rate + ⟨β*, X⟩)`.
    BernoulliLabel,
}

fn default_label_rate() -> f64 {
    0.5
}

/// A distribution P over (X, Y) with the constants of the boundedness and
/// sub-Gaussian assumptions attached.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DataSpec {
    pub d: usize,
    pub x_family: XFamily,
    pub b_x: f64,
    pub y_model: YModel,
    pub beta_star: Vec<f64>,
    pub noise_scale: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_y: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<f64>,
    #[serde(default)]
    pub intercept: f64,
    /// Marginal `P(Y = 1)` for [`YModel::BernoulliLabel`].
    #[serde(default = "default_label_rate")]
    pub label_rate: f64,
}

impl DataSpec {
    /// A linear model `Y = intercept + ⟨β*, X⟩ + σ ε` clipped at `±b_y`.
    pub fn linear_clipped(x_family: XFamily, b_x: f64, beta_star: Vec<f64>, noise_scale: f64, b_y: f64) -> Self {
        Self {
            d: beta_star.len(),
            x_family,
            b_x,
            y_model: YModel::LinearClipped,
            beta_star,
            noise_scale,
            b_y: Some(b_y),
            v: None,
            intercept: 0.0,
            label_rate: default_label_rate(),
        }
    }

    pub fn linear_gaussian(x_family: XFamily, b_x: f64, beta_star: Vec<f64>, noise_scale: f64) -> Self {
        Self {
            d: beta_star.len(),
            x_family,
            b_x,
            y_model: YModel::LinearGaussian,
            beta_star,
            noise_scale,
            b_y: None,
            v: None,
            intercept: 0.0,
            label_rate: default_label_rate(),
        }
    }

    pub fn bernoulli(x_family: XFamily, b_x: f64, beta_star: Vec<f64>, label_rate: f64) -> Self {
        Self {
            d: beta_star.len(),
            x_family,
            b_x,
            y_model: YModel::BernoulliLabel,
            beta_star,
            noise_scale: 0.0,
            b_y: Some(1.0),
            v: None,
            intercept: 0.0,
            label_rate,
        }
    }

    pub fn with_intercept(mut self, intercept: f64) -> Self {
        self.intercept = intercept;
        self
    }

    pub fn with_v(mut self, v: f64) -> Self {
        self.v = Some(v);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidSpec(m));
        if self.d == 0 {
            return bad("d must be positive".into());
        }
        if self.beta_star.len() != self.d {
            return bad(format!("beta_star has {} entries, d = {}", self.beta_star.len(), self.d));
        }
        if !self.beta_star.iter().all(|b| b.is_finite()) || !self.intercept.is_finite() {
            return bad("beta_star and intercept must be finite".into());
        }
        if !(self.b_x.is_finite() && self.b_x > 0.0) {
            return bad(format!("b_x must be positive, got {}", self.b_x));
        }
        if !(self.noise_scale.is_finite() && self.noise_scale >= 0.0) {
            return bad(format!("noise_scale must be nonnegative, got {}", self.noise_scale));
        }
        if let Some(v) = self.v {
            if !(v.is_finite() && v > 0.0) {
                return bad(format!("v must be positive, got {v}"));
            }
        }
        let signal = self.beta_norm() * self.b_x;
        match self.y_model {
            YModel::LinearClipped => {
                let Some(b_y) = self.b_y else {
                    return bad("linear_clipped requires b_y".into());
                };
                if !(b_y.is_finite() && b_y > 0.0) {
                    return bad(format!("b_y must be positive, got {b_y}"));
                }
                if b_y < self.intercept.abs() + signal {
                    return bad(format!(
                        "linear_clipped requires b_y >= |intercept| + ‖beta_star‖·b_x = {}",
                        self.intercept.abs() + signal
                    ));
                }
            }
            YModel::LinearGaussian => {
                if let Some(b_y) = self.b_y {
                    if !(b_y.is_finite() && b_y > 0.0) {
                        return bad(format!("b_y must be positive, got {b_y}"));
                    }
                }
            }
            YModel::BernoulliLabel => {
                match self.b_y {
                    Some(b_y) if b_y >= 1.0 && b_y.is_finite() => {}
                    _ => return bad("bernoulli_label requires b_y >= 1".into()),
                }
                let p = self.label_rate;
                if !(p > 0.0 && p < 1.0) {
                    return bad(format!("label_rate must lie in (0,1), got {p}"));
                }
                if signal > p.min(1.0 - p) + 1e-15 {
                    return bad(format!(
                        "bernoulli_label requires ‖beta_star‖·b_x <= min(p, 1-p) = {}",
                        p.min(1.0 - p)
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn beta_norm(&self) -> f64 {
        norm2(&self.beta_star)
    }

    /// `E[Y]`. Every X family is symmetric about the origin and no
    /// clipping is ever active, so this is exact.
    pub fn mean_y(&self) -> f64 {
        match self.y_model {
            YModel::BernoulliLabel => self.label_rate,
            _ => self.intercept,
        }
    }

    /// Whether the spec satisfies the a.s. bound on |Y|.
    pub fn is_y_bounded(&self) -> bool {
        matches!(self.y_model, YModel::LinearClipped | YModel::BernoulliLabel)
    }

    /// Whether the spec carries a sub-Gaussian proxy (explicit `v`, or the
    /// Gaussian linear model).
    pub fn is_subgaussian(&self) -> bool {
        self.v.is_some() || self.y_model == YModel::LinearGaussian
    }

    /// Sub-Gaussian proxy: explicit `v` when set, otherwise
    /// `noise_scale² + ‖β*‖² b_x²` (Gaussian noise plus the bounded signal range).
    pub fn subgaussian_v(&self) -> f64 {
        self.v.unwrap_or_else(|| {
            let signal = self.beta_norm() * self.b_x;
            self.noise_scale * self.noise_scale + signal * signal
        })
    }

    /// Trivial scale of squared-error deviations: `b_y²` when Y is bounded,
    /// `E[Y]² + v` otherwise.
    pub fn squared_scale(&self) -> f64 {
        match self.b_y {
            Some(b_y) if self.is_y_bounded() => b_y * b_y,
            _ => self.mean_y().powi(2) + self.subgaussian_v(),
        }
    }
}

/// n labelled points, X stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    d: usize,
    x: Vec<f64>,
    y: Vec<f64>,
}

impl Dataset {
    pub fn new(d: usize, x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if d == 0 {
            return Err(Error::invalid("feature dimension must be positive"));
        }
        if y.is_empty() {
            return Err(Error::invalid("dataset must contain at least one point"));
        }
        if x.len() != d * y.len() {
            return Err(Error::DimensionMismatch { expected: d * y.len(), got: x.len() });
        }
        if !x.iter().chain(&y).all(|v| v.is_finite()) {
            return Err(Error::NonFinite("dataset"));
        }
        Ok(Self { d, x, y })
    }

    pub fn from_rows(xs: &[Vec<f64>], ys: &[f64]) -> Result<Self> {
        let d = xs.first().map_or(0, Vec::len);
        if xs.len() != ys.len() {
            return Err(Error::DimensionMismatch { expected: xs.len(), got: ys.len() });
        }
        if let Some(row) = xs.iter().find(|r| r.len() != d) {
            return Err(Error::DimensionMismatch { expected: d, got: row.len() });
        }
        Self::new(d, xs.concat(), ys.to_vec())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.y.len()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn x(&self, i: usize) -> &[f64] {
        &self.x[i * self.d..(i + 1) * self.d]
    }

    #[inline]
    pub fn y(&self, i: usize) -> f64 {
        self.y[i]
    }

    pub fn ys(&self) -> &[f64] {
        &self.y
    }

    pub fn rows(&self) -> impl Iterator<Item = (&[f64], f64)> {
        self.x.chunks_exact(self.d).zip(self.y.iter().copied())
    }

    /// The sample with point `j` (0-based) removed, order of the rest preserved.
    pub fn leave_one_out(&self, j: usize) -> Result<Dataset> {
        let n = self.n();
        if n < 2 {
            return Err(Error::precondition("cannot remove a point from a one-point sample"));
        }
        if j >= n {
            return Err(Error::invalid(format!("index {j} out of range for n = {n}")));
        }
        let d = self.d;
        let mut x = Vec::with_capacity((n - 1) * d);
        x.extend_from_slice(&self.x[..j * d]);
        x.extend_from_slice(&self.x[(j + 1) * d..]);
        let mut y = Vec::with_capacity(n - 1);
        y.extend_from_slice(&self.y[..j]);
        y.extend_from_slice(&self.y[j + 1..]);
        Ok(Dataset { d, x, y })
    }

    /// The sample with point `j` (0-based) swapped for `(x_new, y_new)`.
    pub fn replace_point(&self, j: usize, x_new: &[f64], y_new: f64) -> Result<Dataset> {
        if j >= self.n() {
            return Err(Error::invalid(format!("index {j} out of range for n = {}", self.n())));
        }
        if x_new.len() != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, got: x_new.len() });
        }
        if !x_new.iter().all(|v| v.is_finite()) || !y_new.is_finite() {
            return Err(Error::NonFinite("replacement point"));
        }
        let mut out = self.clone();
        out.x[j * self.d..(j + 1) * self.d].copy_from_slice(x_new);
        out.y[j] = y_new;
        Ok(out)
    }

    /// Appends a point; used to undo [`Dataset::leave_one_out`] in tests and by callers
    /// assembling samples by hand.
    pub fn push(&mut self, x_new: &[f64], y_new: f64) -> Result<()> {
        if x_new.len() != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, got: x_new.len() });
        }
        if !x_new.iter().all(|v| v.is_finite()) || !y_new.is_finite() {
            return Err(Error::NonFinite("appended point"));
        }
        self.x.extend_from_slice(x_new);
        self.y.push(y_new);
        Ok(())
    }

    pub fn max_x_norm(&self) -> f64 {
        self.x.chunks_exact(self.d).map(norm2).fold(0.0, f64::max)
    }

    pub fn max_abs_y(&self) -> f64 {
        self.y.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        let mut header: Vec<String> = (1..=self.d).map(|i| format!("x{i}")).collect();
        header.push("y".into());
        wtr.write_record(&header)?;
        for (x, y) in self.rows() {
            let rec: Vec<String> = x.iter().chain(std::iter::once(&y)).map(|v| fmt_f64(*v)).collect();
            wtr.write_record(&rec)?;
        }
        wtr.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(r);
        let headers = rdr.headers()?.clone();
        let cols = headers.len();
        let expected: Vec<String> = (1..cols).map(|i| format!("x{i}")).chain(std::iter::once("y".into())).collect();
        if cols < 2 || headers.iter().ne(expected.iter().map(String::as_str)) {
            return Err(Error::invalid(format!("unexpected dataset header {headers:?}")));
        }
        let d = cols - 1;
        let (mut x, mut y) = (Vec::new(), Vec::new());
        for rec in rdr.records() {
            let rec = rec?;
            for (c, field) in rec.iter().enumerate() {
                let v: f64 = field
                    .trim()
                    .parse()
                    .map_err(|_| Error::invalid(format!("cannot parse {field:?} as a number")))?;
                if c < d {
                    x.push(v);
                } else {
                    y.push(v);
                }
            }
        }
        Dataset::new(d, x, y)
    }
}

/// 17 significant digits, enough for an exact `f64` round trip.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Sequential sampler over the distribution of a [`DataSpec`].
///
/// Each point consumes the stream in a fixed order (X coordinates, then the
/// label draw), so `n` calls to [`PointSampler::next_point`] reproduce
/// [`sample_dataset`] exactly.
pub struct PointSampler<'a> {
    spec: &'a DataSpec,
    rng: ChaCha8Rng,
    coord_bound: f64,
}

impl<'a> PointSampler<'a> {
    pub fn new(spec: &'a DataSpec, seed: SeedSpec) -> Result<Self> {
        spec.validate()?;
        Ok(Self { spec, rng: seed.rng(), coord_bound: coordinate_bound(spec.b_x, spec.d) })
    }

    pub fn next_point(&mut self, x: &mut [f64]) -> f64 {
        let spec = self.spec;
        let d = spec.d;
        debug_assert_eq!(x.len(), d);
        match spec.x_family {
            XFamily::UniformBall => {
                for xi in x.iter_mut() {
                    *xi = self.rng.sample(StandardNormal);
                }
                let nrm = norm2(x);
                let u: f64 = self.rng.random();
                let radius = spec.b_x * u.powf(1.0 / d as f64);
                let s = if nrm > 0.0 { radius / nrm } else { 0.0 };
                x.iter_mut().for_each(|xi| *xi *= s);
            }
            XFamily::UniformCube => {
                let a = self.coord_bound;
                for xi in x.iter_mut() {
                    *xi = self.rng.random_range(-a..=a);
                }
            }
            XFamily::RademacherCoords => {
                let a = self.coord_bound;
                for xi in x.iter_mut() {
                    *xi = if self.rng.random::<bool>() { a } else { -a };
                }
            }
        }
        enforce_norm_bound(x, spec.b_x);

        let signal = spec.intercept + dot(&spec.beta_star, x);
        match spec.y_model {
            YModel::LinearClipped => {
                let eps: f64 = self.rng.sample(StandardNormal);
                let b_y = spec.b_y.expect("validated");
                (signal + spec.noise_scale * eps).clamp(-b_y, b_y)
            }
            YModel::LinearGaussian => {
                let eps: f64 = self.rng.sample(StandardNormal);
                signal + spec.noise_scale * eps
            }
            YModel::BernoulliLabel => {
                let p = (spec.label_rate + dot(&spec.beta_star, x)).clamp(0.0, 1.0);
                let u: f64 = self.rng.random();
                if u < p {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }
}

/// Largest per-coordinate magnitude `a ≤ b_x/√d` with `√(d a²) ≤ b_x` in floating point.
fn coordinate_bound(b_x: f64, d: usize) -> f64 {
    let mut a = b_x / (d as f64).sqrt();
    while norm2(&vec![a; d]) > b_x {
        a = f64::from_bits(a.to_bits() - 1);
    }
    a
}

fn enforce_norm_bound(x: &mut [f64], b_x: f64) {
    let mut nrm = norm2(x);
    if nrm <= b_x {
        return;
    }
    let s = b_x / nrm;
    x.iter_mut().for_each(|xi| *xi *= s);
    nrm = norm2(x);
    while nrm > b_x {
        x.iter_mut().for_each(|xi| *xi *= 1.0 - f64::EPSILON);
        nrm = norm2(x);
    }
}

/// n i.i.d. draws from `spec`, deterministic in `(spec, n, seed)`.
pub fn sample_dataset(spec: &DataSpec, n: usize, seed: SeedSpec) -> Result<Dataset> {
    if n == 0 {
        return Err(Error::invalid("sample size must be positive"));
    }
    let mut sampler = PointSampler::new(spec, seed)?;
    let d = spec.d;
    let mut x = vec![0.0; n * d];
    let mut y = Vec::with_capacity(n);
    for row in x.chunks_exact_mut(d) {
        y.push(sampler.next_point(row));
    }
    Ok(Dataset { d, x, y })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AssumptionReport {
    pub n: usize,
    pub max_x_norm: f64,
    pub max_abs_y: f64,
    pub x_bound_ok: bool,
    /// `None` when the spec carries no bound on |Y|.
    pub y_bound_ok: Option<bool>,
    /// `(q, ‖Y − Ȳ‖_q / (2e√v√q))` for q ∈ {2, 4, 8}; empty unless the spec is sub-Gaussian.
    pub subg_ratios: Vec<(f64, f64)>,
}

impl AssumptionReport {
    pub fn passed(&self) -> bool {
        self.x_bound_ok && self.y_bound_ok.unwrap_or(true)
    }
}

/// Empirical check of the boundedness and sub-Gaussian assumptions on a sample.
pub fn verify_assumptions(data: &Dataset, spec: &DataSpec) -> AssumptionReport {
    let max_x_norm = data.max_x_norm();
    let max_abs_y = data.max_abs_y();
    let y_bound_ok = spec.b_y.map(|b| max_abs_y <= b);
    let subg_ratios = if spec.is_subgaussian() {
        let n = data.n() as f64;
        let mean = data.ys().iter().sum::<f64>() / n;
        let v = spec.subgaussian_v();
        [2.0, 4.0, 8.0]
            .iter()
            .map(|&q| {
                let m = data.ys().iter().map(|y| (y - mean).abs().powf(q)).sum::<f64>() / n;
                (q, m.powf(1.0 / q) / (2.0 * std::f64::consts::E * v.sqrt() * q.sqrt()))
            })
            .collect()
    } else {
        Vec::new()
    };
    AssumptionReport {
        n: data.n(),
        max_x_norm,
        max_abs_y,
        x_bound_ok: max_x_norm <= spec.b_x,
        y_bound_ok,
        subg_ratios,
    }
}
