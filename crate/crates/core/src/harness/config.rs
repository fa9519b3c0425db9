use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::spectral::tau;
use crate::tree::TreeParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::Config(format!("unknown output format {s:?}"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        })
    }
}

/// Parameters shared by every suite. `None` grids fall back to per-suite defaults.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub q: u32,
    pub depth: usize,
    /// Level `m` of the random boundary data.
    pub level: usize,
    pub z_grid: Option<Vec<Complex64>>,
    pub p_grid: Option<Vec<f64>>,
    pub r_grid: Option<Vec<Exponent>>,
    pub trials: usize,
    pub seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig { q: 2, depth: 12, level: 2, z_grid: None, p_grid: None, r_grid: None, trials: 5, seed: 42 }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let cfg = |m: String| Err(Error::Config(m));
        if self.q < 2 {
            return cfg(format!("q must be at least 2, got {}", self.q));
        }
        if self.depth < 1 {
            return cfg("depth must be at least 1".into());
        }
        if self.level > self.depth {
            return cfg(format!("boundary level {} exceeds depth {}", self.level, self.depth));
        }
        if self.trials < 1 {
            return cfg("trials must be at least 1".into());
        }
        if self.z_grid.as_ref().is_some_and(Vec::is_empty)
            || self.p_grid.as_ref().is_some_and(Vec::is_empty)
            || self.r_grid.as_ref().is_some_and(Vec::is_empty)
        {
            return cfg("parameter grids must be non-empty".into());
        }
        TreeParams::new(self.q, self.depth).map_err(|e| Error::Config(e.to_string()))?;
        Ok(())
    }

    pub fn params(&self) -> Result<TreeParams> {
        TreeParams::new(self.q, self.depth).map_err(|e| Error::Config(e.to_string()))
    }

    /// `{τ/8, τ/6, τ/5, 3τ/8}`.
    pub fn default_real_grid(q: u32) -> Vec<Complex64> {
        let t = tau(q);
        [t / 8.0, t / 6.0, t / 5.0, 3.0 * t / 8.0].into_iter().map(|x| Complex64::new(x, 0.0)).collect()
    }

    pub fn real_grid(&self) -> Vec<Complex64> {
        self.z_grid.clone().unwrap_or_else(|| Self::default_real_grid(self.q))
    }

    pub fn p_values(&self) -> Vec<f64> {
        self.p_grid.clone().unwrap_or_else(|| vec![1.0, 4.0 / 3.0, 2.0])
    }

    pub fn r_values(&self) -> Vec<Exponent> {
        self.r_grid
            .clone()
            .unwrap_or_else(|| vec![Exponent::Finite(1.5), Exponent::Finite(2.0), Exponent::Finite(4.0)])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        let c = ExperimentConfig::default();
        c.validate().unwrap();
        assert_eq!(c.real_grid().len(), 4);
        assert_eq!(c.p_values(), vec![1.0, 4.0 / 3.0, 2.0]);
    }

    #[test]
    fn rejects_bad_configs() {
        let mut c = ExperimentConfig { level: 13, ..Default::default() };
        assert!(matches!(c.validate(), Err(Error::Config(_))));
        c.level = 2;
        c.trials = 0;
        assert!(c.validate().is_err());
        c.trials = 1;
        c.r_grid = Some(vec![]);
        assert!(c.validate().is_err());
        assert!("xml".parse::<OutputFormat>().is_err());
    }
}
