use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::bounds::Statistic;
use crate::datagen::DataSpec;
use crate::error::{Error, Result};
use crate::learners::Learner;
use crate::seed::SeedSpec;
use crate::stability::JPolicy;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    Coverage,
    Rate,
    StabilitySweep,
    EfronStein,
    BoundsTable,
}

impl ExperimentKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ExperimentKind::Coverage => "coverage",
            ExperimentKind::Rate => "rate",
            ExperimentKind::StabilitySweep => "stability_sweep",
            ExperimentKind::EfronStein => "efron_stein",
            ExperimentKind::BoundsTable => "bounds_table",
        }
    }

    fn stream(&self) -> u64 {
        match self {
            ExperimentKind::Coverage => 1,
            ExperimentKind::Rate => 2,
            ExperimentKind::StabilitySweep => 3,
            ExperimentKind::EfronStein => 4,
            ExperimentKind::BoundsTable => 5,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgorithmConfig {
    Ridge { lambda: f64, eta: f64 },
    Knn { k: usize },
}

impl AlgorithmConfig {
    pub fn learner(&self) -> Learner {
        match *self {
            AlgorithmConfig::Ridge { lambda, .. } => Learner::Ridge { lambda },
            AlgorithmConfig::Knn { k } => Learner::Knn { k },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub spec: DataSpec,
    pub algorithm: AlgorithmConfig,
    pub n_grid: Vec<usize>,
    pub q_grid: Vec<f64>,
    pub x_grid: Vec<f64>,
    pub reps: usize,
    pub test_m: usize,
    pub base_seed: u64,
    pub out_dir: PathBuf,
    /// Ridge penalties swept by `stability_sweep` and `bounds_table`; defaults to
    /// the algorithm's own λ.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_grid: Option<Vec<f64>>,
    /// Neighbour counts swept by `stability_sweep`; defaults to the algorithm's k.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_grid: Option<Vec<usize>>,
    /// Test statistics for `efron_stein`; defaults to constant, mean and ridge LoO.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub statistics: Option<Vec<Statistic>>,
    #[serde(default)]
    pub j_policy: JPolicy,
}

fn cfg_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| cfg_err(format!("cannot parse config: {e}")))?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| cfg_err(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Root of this experiment's stream tree.
    pub fn root_seed(&self) -> SeedSpec {
        SeedSpec::new(self.base_seed, self.kind.stream())
    }

    pub fn lambdas(&self) -> Vec<f64> {
        match (&self.lambda_grid, self.algorithm) {
            (Some(grid), _) => grid.clone(),
            (None, AlgorithmConfig::Ridge { lambda, .. }) => vec![lambda],
            (None, AlgorithmConfig::Knn { .. }) => Vec::new(),
        }
    }

    pub fn ks(&self) -> Vec<usize> {
        match (&self.k_grid, self.algorithm) {
            (Some(grid), _) => grid.clone(),
            (None, AlgorithmConfig::Knn { k }) => vec![k],
            (None, AlgorithmConfig::Ridge { .. }) => Vec::new(),
        }
    }

    pub fn eta(&self) -> Option<f64> {
        match self.algorithm {
            AlgorithmConfig::Ridge { eta, .. } => Some(eta),
            AlgorithmConfig::Knn { .. } => None,
        }
    }

    pub fn statistics(&self) -> Vec<Statistic> {
        self.statistics.clone().unwrap_or_else(|| {
            let lambda = match self.algorithm {
                AlgorithmConfig::Ridge { lambda, .. } => lambda,
                AlgorithmConfig::Knn { .. } => 1.0,
            };
            vec![Statistic::Constant, Statistic::Mean, Statistic::RidgeLoo { lambda }]
        })
    }

    /// Structural checks; statistical preconditions are checked by the runners.
    pub fn validate(&self) -> Result<()> {
        self.spec.validate().map_err(|e| cfg_err(e.to_string()))?;
        if self.n_grid.is_empty() {
            return Err(cfg_err("n_grid must be nonempty"));
        }
        if self.n_grid.iter().any(|&n| n < 2) {
            return Err(cfg_err("every n in n_grid must be at least 2"));
        }
        if self.reps < 2 {
            return Err(cfg_err("reps must be at least 2"));
        }
        if let AlgorithmConfig::Ridge { lambda, eta } = self.algorithm {
            if !(lambda.is_finite() && lambda > 0.0) || !(eta > 0.0 && eta < 1.0) {
                return Err(cfg_err(format!("ridge needs lambda > 0 and eta in (0,1), got ({lambda}, {eta})")));
            }
        }
        if let Some(grid) = &self.lambda_grid {
            if grid.is_empty() || grid.iter().any(|l| !(l.is_finite() && *l > 0.0)) {
                return Err(cfg_err("lambda_grid must be nonempty and positive"));
            }
        }
        if let Some(grid) = &self.k_grid {
            if grid.is_empty() || grid.contains(&0) {
                return Err(cfg_err("k_grid must be nonempty and positive"));
            }
        }
        let ridge_only = |what: &str| match self.algorithm {
            AlgorithmConfig::Ridge { .. } => Ok(()),
            AlgorithmConfig::Knn { .. } => Err(cfg_err(format!("{what} is defined for ridge only"))),
        };
        let x_grid_ok = || {
            if self.x_grid.is_empty() || self.x_grid.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
                Err(cfg_err("x_grid must be nonempty and positive"))
            } else {
                Ok(())
            }
        };
        match self.kind {
            ExperimentKind::Coverage => {
                ridge_only("coverage")?;
                x_grid_ok()?;
                if self.reps < 50 {
                    return Err(cfg_err("coverage needs reps >= 50"));
                }
                if self.test_m < 2 {
                    return Err(cfg_err("test_m must be at least 2"));
                }
                if !self.spec.is_y_bounded() && !self.spec.is_subgaussian() {
                    return Err(cfg_err("coverage needs a bounded or sub-Gaussian label model"));
                }
            }
            ExperimentKind::Rate => {
                ridge_only("rate")?;
                if self.test_m < 2 {
                    return Err(cfg_err("test_m must be at least 2"));
                }
            }
            ExperimentKind::StabilitySweep => {
                if self.q_grid.is_empty() || self.q_grid.iter().any(|q| !(1.0..=8.0).contains(q)) {
                    return Err(cfg_err("stability_sweep needs a nonempty q_grid within [1, 8]"));
                }
            }
            ExperimentKind::EfronStein => {
                if self.q_grid.is_empty() || self.q_grid.iter().any(|q| !(2.0..=8.0).contains(q)) {
                    return Err(cfg_err("efron_stein needs a nonempty q_grid within [2, 8]"));
                }
            }
            ExperimentKind::BoundsTable => {
                ridge_only("bounds_table")?;
                x_grid_ok()?;
                if self.q_grid.iter().any(|q| !(q.is_finite() && *q >= 1.0)) {
                    return Err(cfg_err("q_grid entries must be >= 1"));
                }
            }
        }
        Ok(())
    }
}
