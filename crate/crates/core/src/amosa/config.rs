use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Acceptance-probability form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AcceptanceRule {
    /// `1 / (1 + exp(delta / temp))`: accepts worse moves more readily while hot.
    #[default]
    Enhanced,
    /// `1 / (1 + exp(delta * temp))`, as in the original annealer.
    Original,
}

/// Annealing schedule, bounds and post-selection weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SaConfig {
    pub t_max: f64,
    pub t_min: f64,
    pub alpha: f64,
    pub iters_per_temp: u32,
    /// Upper bound on diffusion breaks; `None` takes the initial placement's count.
    pub db_max: Option<u32>,
    /// Upper bound on dummies; `None` takes the initial placement's count.
    pub dummy_max: Option<u32>,
    pub seed: u64,
    /// Weights for (dispersion, LDE, routing, breaks, dummies).
    pub selection_weights: [f64; 5],
    pub acceptance: AcceptanceRule,
}

impl Default for SaConfig {
    fn default() -> Self {
        SaConfig {
            t_max: 100.0,
            t_min: 1e-7,
            alpha: 0.37,
            iters_per_temp: 100,
            db_max: None,
            dummy_max: None,
            seed: 0,
            selection_weights: [1.0, 3.0, 3.0, 5.0, 5.0],
            acceptance: AcceptanceRule::Enhanced,
        }
    }
}

impl SaConfig {
    pub fn with_seed(seed: u64) -> Self {
        SaConfig {
            seed,
            ..SaConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_min.is_finite() && self.t_min > 0.0) {
            return Err(Error::Config(format!("t_min must be positive, got {}", self.t_min)));
        }
        if !(self.t_max.is_finite() && self.t_max > self.t_min) {
            return Err(Error::Config(format!(
                "t_max ({}) must exceed t_min ({})",
                self.t_max, self.t_min
            )));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::Config(format!("alpha must lie in (0, 1), got {}", self.alpha)));
        }
        if self.iters_per_temp == 0 {
            return Err(Error::Config("iters_per_temp must be positive".into()));
        }
        if let Some(w) = self.selection_weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(Error::Config(format!("selection weight {w} is not a non-negative number")));
        }
        Ok(())
    }

    /// Temperatures visited, hottest first.
    pub fn temperatures(&self) -> impl Iterator<Item = f64> + '_ {
        std::iter::successors(Some(self.t_max), |t| Some(t * self.alpha))
            .take_while(|t| *t > self.t_min)
    }
}
