//! Experiment configuration: one TOML file, unknown keys are hard errors.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use sdwave_core::harness::{log_grid, QuadSettings};
use sdwave_core::{make_gaussian, InitialDatum, ModelParams};

/// Check names the runner accepts, in canonical listing order.
pub const CHECK_REGISTRY: [&str; 17] = [
    "lemma21",
    "lemma22",
    "lemma23",
    "lemma24",
    "lemma31",
    "lemma32",
    "formula217",
    "formula222",
    "highfreqsup",
    "thm11",
    "thm12",
    "thm13",
    "lemma41",
    "lemma42",
    "thm43",
    "thm44",
    "thm45",
];

/// One-line description per registry entry, aligned with [`CHECK_REGISTRY`].
pub const CHECK_DESCRIPTIONS: [&str; 17] = [
    "weighted-energy production bound over random mode states (adds rows ineq212, ineq215)",
    "frequency-function ceilings over the mode family",
    "damping drift bound against the weighted energy",
    "constructive exponential decay of the mode energy along the flow",
    "low-frequency profile error against its envelope on a log-time grid",
    "Fourier continuity bound |u_hat(r) - P| <= L r ||u||_{1,1}",
    "smooth low-frequency scaling integrals, slopes -(k+n)/(2 theta)",
    "singular low-frequency scaling integrals, slopes -(n-k)/(2 theta)",
    "high-frequency supremum: closed form vs grid max, slope -ell/(theta-1)",
    "total-energy decay rate against its three-term envelope",
    "solution decay rate against its three-term envelope",
    "profile-convergence error bounded by its envelope",
    "profile moment integrals J_sin, J_cos with exact-identity residuals (n >= 3)",
    "low-dimension growth of J_sin: linear for n = 1, logarithmic for n = 2",
    "two-sided solution-norm band, rate t^{-(n-2)/8} (n >= 3)",
    "two-sided solution-norm band, sqrt(log t) growth (n = 2)",
    "two-sided solution-norm band, sqrt(t) growth (n = 1)",
];

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("config parse error: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("invalid config: {0}")]
    Invalid(String),
    #[error("unknown check name {0:?}; run `sdwave list-checks` for the registry")]
    UnknownCheck(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub beta: f64,
    pub ell: f64,
    pub delta0: f64,
    pub checks: Vec<String>,
    pub output_dir: PathBuf,
    pub model: ModelSection,
    pub datum0: DatumSection,
    pub datum1: DatumSection,
    pub t_grid: GridSection,
    pub quadrature: QuadratureSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    pub theta: f64,
    pub n: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumSection {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitude: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decay: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub t_min: f64,
    pub t_max: f64,
    pub points_per_decade: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureSection {
    pub tolerance: f64,
    pub points_per_panel: usize,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        let config: ExperimentConfig = toml::from_str(&text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let invalid = |msg: String| Err(ConfigError::Invalid(msg));
        if !self.model.theta.is_finite() || self.model.theta <= 1.0 {
            return invalid(format!("model.theta must exceed 1, got {}", self.model.theta));
        }
        if self.model.n < 1 {
            return invalid("model.n must be at least 1".into());
        }
        if !(self.beta > 0.0 && self.beta < 1.0) {
            return invalid(format!("beta must lie in (0, 1), got {}", self.beta));
        }
        if !self.ell.is_finite() || self.ell < 0.0 {
            return invalid(format!("ell must be nonnegative, got {}", self.ell));
        }
        let band_end = 4f64.powf(1.0 / (4.0 * self.model.theta - 2.0));
        if !(self.delta0 > 0.0 && self.delta0 < band_end) {
            return invalid(format!(
                "delta0 must lie in (0, {band_end:.6}) for theta = {}, got {}",
                self.model.theta, self.delta0
            ));
        }
        if !(self.t_grid.t_min > 0.0) || !self.t_grid.t_min.is_finite() {
            return invalid(format!("t_grid.t_min must be positive, got {}", self.t_grid.t_min));
        }
        if !(self.t_grid.t_max > self.t_grid.t_min) || !self.t_grid.t_max.is_finite() {
            return invalid(format!(
                "t_grid.t_max must exceed t_min = {}, got {}",
                self.t_grid.t_min, self.t_grid.t_max
            ));
        }
        if self.t_grid.points_per_decade < 1 {
            return invalid("t_grid.points_per_decade must be at least 1".into());
        }
        validate_quad_tolerance(self.quadrature.tolerance)?;
        if !(2..=64).contains(&self.quadrature.points_per_panel) {
            return invalid(format!(
                "quadrature.points_per_panel must lie in [2, 64], got {}",
                self.quadrature.points_per_panel
            ));
        }
        self.datum0.validate("datum0")?;
        self.datum1.validate("datum1")?;
        for check in &self.checks {
            if !CHECK_REGISTRY.contains(&check.as_str()) {
                return Err(ConfigError::UnknownCheck(check.clone()));
            }
        }
        Ok(())
    }

    pub fn model_params(&self) -> Result<ModelParams, ConfigError> {
        ModelParams::new(self.model.theta, self.model.n)
            .map_err(|e| ConfigError::Invalid(e.to_string()))
    }

    pub fn times(&self) -> Vec<f64> {
        log_grid(self.t_grid.t_min, self.t_grid.t_max, self.t_grid.points_per_decade)
    }

    pub fn quad_settings(&self) -> QuadSettings {
        QuadSettings {
            tolerance: self.quadrature.tolerance,
            points_per_panel: self.quadrature.points_per_panel,
            ..QuadSettings::default()
        }
    }
}

pub fn validate_quad_tolerance(tolerance: f64) -> Result<(), ConfigError> {
    if !(tolerance > 0.0 && tolerance < 1.0) {
        return Err(ConfigError::Invalid(format!(
            "quadrature tolerance must lie in (0, 1), got {tolerance}"
        )));
    }
    Ok(())
}

impl DatumSection {
    fn validate(&self, which: &str) -> Result<(), ConfigError> {
        match self.family.as_str() {
            "zero" => {
                if self.amplitude.is_some() || self.decay.is_some() {
                    return Err(ConfigError::Invalid(format!(
                        "{which}: the zero family takes no parameters"
                    )));
                }
            }
            "gaussian" => {
                if self.amplitude.is_none() || self.decay.is_none() {
                    return Err(ConfigError::Invalid(format!(
                        "{which}: the gaussian family needs amplitude and decay"
                    )));
                }
            }
            other => {
                return Err(ConfigError::Invalid(format!(
                    "{which}: family must be \"zero\" or \"gaussian\", got {other:?}"
                )));
            }
        }
        Ok(())
    }

    pub fn build(&self, n: u32) -> Result<InitialDatum, ConfigError> {
        match self.family.as_str() {
            "zero" => Ok(InitialDatum::zero(n as usize)),
            "gaussian" => {
                let amplitude = self.amplitude.ok_or_else(|| {
                    ConfigError::Invalid("gaussian datum needs amplitude".into())
                })?;
                let decay = self
                    .decay
                    .ok_or_else(|| ConfigError::Invalid("gaussian datum needs decay".into()))?;
                make_gaussian(amplitude, decay, n as usize)
                    .map_err(|e| ConfigError::Invalid(e.to_string()))
            }
            other => Err(ConfigError::Invalid(format!(
                "unknown datum family {other:?}"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub const EXAMPLE: &str = r#"
beta = 0.1
ell = 2.0
delta0 = 0.5
checks = ["lemma21", "thm12"]
output_dir = "out"

[model]
theta = 2.0
n = 3

[datum0]
family = "zero"

[datum1]
family = "gaussian"
amplitude = 1.0
decay = 0.5

[t_grid]
t_min = 100.0
t_max = 1000000.0
points_per_decade = 8

[quadrature]
tolerance = 1e-9
points_per_panel = 12
"#;

    #[test]
    fn example_parses_and_round_trips() {
        let config: ExperimentConfig = toml::from_str(EXAMPLE).unwrap();
        config.validate().unwrap();
        let serialized = toml::to_string(&config).unwrap();
        let reparsed: ExperimentConfig = toml::from_str(&serialized).unwrap();
        assert_eq!(config, reparsed);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = EXAMPLE.replace("beta = 0.1", "beta = 0.1\nbetaa = 0.2");
        let err = toml::from_str::<ExperimentConfig>(&text).unwrap_err();
        assert!(err.to_string().contains("betaa"), "{err}");

        let nested = EXAMPLE.replace("theta = 2.0", "theta = 2.0\nthetaa = 3.0");
        assert!(toml::from_str::<ExperimentConfig>(&nested).is_err());
    }

    #[test]
    fn invariants_are_enforced_with_named_messages() {
        let mut config: ExperimentConfig = toml::from_str(EXAMPLE).unwrap();
        config.beta = 1.5;
        let err = config.validate().unwrap_err();
        assert!(err.to_string().contains("beta"), "{err}");

        let mut config: ExperimentConfig = toml::from_str(EXAMPLE).unwrap();
        config.delta0 = 2.0;
        let err = config.validate().unwrap_err();
        assert!(err.to_string().contains("delta0"), "{err}");

        let mut config: ExperimentConfig = toml::from_str(EXAMPLE).unwrap();
        config.checks.push("lemma99".into());
        let err = config.validate().unwrap_err();
        assert!(matches!(err, ConfigError::UnknownCheck(ref name) if name == "lemma99"), "{err}");
    }

    #[test]
    fn datum_families_validate_their_parameters() {
        let mut config: ExperimentConfig = toml::from_str(EXAMPLE).unwrap();
        config.datum0.amplitude = Some(1.0);
        assert!(config.validate().is_err());

        let mut config: ExperimentConfig = toml::from_str(EXAMPLE).unwrap();
        config.datum1.decay = None;
        assert!(config.validate().is_err());

        let mut config: ExperimentConfig = toml::from_str(EXAMPLE).unwrap();
        config.datum1.family = "bessel".into();
        let err = config.validate().unwrap_err();
        assert!(err.to_string().contains("bessel"), "{err}");

        let config: ExperimentConfig = toml::from_str(EXAMPLE).unwrap();
        let u1 = config.datum1.build(config.model.n).unwrap();
        assert!(u1.mass != 0.0);
        assert!(config.datum0.build(config.model.n).unwrap().is_zero());
    }

    #[test]
    fn registry_and_descriptions_stay_aligned() {
        assert_eq!(CHECK_REGISTRY.len(), CHECK_DESCRIPTIONS.len());
        let config: ExperimentConfig = toml::from_str(EXAMPLE).unwrap();
        for check in &config.checks {
            assert!(CHECK_REGISTRY.contains(&check.as_str()));
        }
    }
}
