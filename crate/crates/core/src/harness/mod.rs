//! Executable checks for the decay estimates.
//!
//! Every inequality and rate claim of the model becomes a measurement.
//! Pointwise sweeps over (state, r, t) grids produce [`InequalityReport`]s
//! whose worst margin must stay nonpositive. Norm curves on log-spaced time
//! grids produce [`DecayReport`]s carrying a least-squares slope and the
//! spread of the normalized samples. Constants the estimates only assert to
//! exist are reported from the data, never assumed.

pub mod fit;
pub mod formulas;
pub mod lemmas;
pub mod norms;
pub mod optimality;
pub mod theorems;

pub use fit::{fit_decay_rate, fit_powerlaw, log_grid, SlopeFit};
pub use formulas::{
    check_formula_217_222, check_high_freq_sup, high_freq_sup, scaling_integral, HighFreqSup,
    ScalingFormula,
};
pub use lemmas::{check_lemma24, check_lemma32, check_pointwise_lemmas};
pub use norms::{
    banded_solution_plan, energy_l2_sq, profile_error_l2_sq, solution_l2_sq, QuadSettings,
};
pub use optimality::{check_lemma41, check_lemma42, optimality_suite, OptimalityConstants};
pub use theorems::{check_lemma31, run_theorem_decay, two_sided_l2, Theorem, TwoSidedReport};

use crate::data::DataError;
use crate::quadrature::QuadratureError;
use crate::spectral::SpectralError;

/// Minimum sample count for a meaningful slope fit.
pub const MIN_SAMPLES: usize = 8;

/// Relative slack granted to pointwise inequalities, absorbing rounding.
pub const RELATIVE_SLACK: f64 = 1e-12;

/// Spread cap that accompanies slope checks on clean power laws.
pub const DEFAULT_SPREAD_CAP: f64 = 3.0;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("need at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },
    #[error("sample at t = {t} must be positive, got {value}")]
    NonpositiveSample { t: f64, value: f64 },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Data(#[from] DataError),
}

/// Outcome of one check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

/// How a [`DecayReport`] decides its verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictMode {
    /// |fitted − predicted| ≤ tolerance.
    Slope,
    /// Slope agreement as in [`VerdictMode::Slope`], and the normalized
    /// samples spread by at most [`DEFAULT_SPREAD_CAP`].
    SlopeAndSpread,
    /// max/min of the normalized samples ≤ tolerance (two-sided bounds).
    RatioSpread,
    /// Normalized samples never exceed tolerance times the first one. Used
    /// for one-sided bounds whose reference rate need not be attained.
    UpperBound,
    /// Samples are normalized by log t instead of a power; their spread must
    /// stay ≤ tolerance. For targets that are not power laws.
    LogRatio,
}

impl std::fmt::Display for VerdictMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            VerdictMode::Slope => "slope",
            VerdictMode::SlopeAndSpread => "slope+spread",
            VerdictMode::RatioSpread => "ratio-spread",
            VerdictMode::UpperBound => "upper-bound",
            VerdictMode::LogRatio => "log-ratio",
        })
    }
}

/// One measured point of a decay curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub value: f64,
    /// Value divided by its reference envelope at this t.
    pub normalized: f64,
}

/// A decay-rate measurement with its verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayReport {
    pub check: String,
    pub samples: Vec<Sample>,
    pub predicted_slope: f64,
    pub fitted_slope: f64,
    pub slope_stderr: f64,
    /// max/min of the normalized samples.
    pub ratio_spread: f64,
    pub tolerance: f64,
    pub mode: VerdictMode,
    pub verdict: Verdict,
}

impl DecayReport {
    /// Fits and judges a curve whose samples already carry their normalized
    /// values. Samples must be positive and in increasing t order.
    pub fn from_samples(
        check: &str,
        samples: Vec<Sample>,
        predicted_slope: f64,
        tolerance: f64,
        mode: VerdictMode,
    ) -> Result<Self, HarnessError> {
        let pairs: Vec<(f64, f64)> = samples.iter().map(|s| (s.t, s.value)).collect();
        let fit = fit_powerlaw(&pairs)?;
        let mut spread_lo = f64::INFINITY;
        let mut spread_hi = f64::NEG_INFINITY;
        for s in &samples {
            if !(s.normalized > 0.0) || !s.normalized.is_finite() {
                return Err(HarnessError::NonpositiveSample {
                    t: s.t,
                    value: s.normalized,
                });
            }
            spread_lo = spread_lo.min(s.normalized);
            spread_hi = spread_hi.max(s.normalized);
        }
        let ratio_spread = spread_hi / spread_lo;
        let slope_ok = (fit.slope - predicted_slope).abs() <= tolerance;
        let ok = match mode {
            VerdictMode::Slope => slope_ok,
            VerdictMode::SlopeAndSpread => slope_ok && ratio_spread <= DEFAULT_SPREAD_CAP,
            VerdictMode::RatioSpread | VerdictMode::LogRatio => ratio_spread <= tolerance,
            VerdictMode::UpperBound => {
                let anchor = samples[0].normalized;
                samples.iter().all(|s| s.normalized <= tolerance * anchor)
            }
        };
        Ok(DecayReport {
            check: check.to_string(),
            samples,
            predicted_slope,
            fitted_slope: fit.slope,
            slope_stderr: fit.stderr,
            ratio_spread,
            tolerance,
            mode,
            verdict: Verdict::from_bool(ok),
        })
    }

    /// Marks the report failed regardless of its metrics.
    pub(crate) fn demote(mut self) -> Self {
        self.verdict = Verdict::Fail;
        self
    }
}

/// A pointwise inequality sweep with its worst margin.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityReport {
    pub check: String,
    /// Human-readable description of the swept grid.
    pub grid: String,
    /// Largest slack-adjusted lhs − rhs seen; nonpositive means the
    /// inequality held everywhere.
    pub max_violation: f64,
    pub worst_t: f64,
    pub worst_r: f64,
    pub samples: usize,
    pub verdict: Verdict,
}

/// Running maximum of lhs − rhs over a sweep, with 1e−12 relative slack.
pub(crate) struct ViolationTracker {
    max_violation: f64,
    worst_t: f64,
    worst_r: f64,
    samples: usize,
}

impl ViolationTracker {
    pub(crate) fn new() -> Self {
        ViolationTracker {
            max_violation: f64::NEG_INFINITY,
            worst_t: 0.0,
            worst_r: 0.0,
            samples: 0,
        }
    }

    /// Records one instance of the inequality lhs ≤ rhs at the point (t, r).
    pub(crate) fn record(&mut self, t: f64, r: f64, lhs: f64, rhs: f64) {
        let scale = lhs.abs().max(rhs.abs());
        let violation = lhs - rhs - RELATIVE_SLACK * scale;
        self.samples += 1;
        if violation > self.max_violation {
            self.max_violation = violation;
            self.worst_t = t;
            self.worst_r = r;
        }
    }

    pub(crate) fn finish(self, check: &str, grid: String) -> InequalityReport {
        InequalityReport {
            check: check.to_string(),
            grid,
            max_violation: self.max_violation,
            worst_t: self.worst_t,
            worst_r: self.worst_r,
            samples: self.samples,
            verdict: Verdict::from_bool(self.max_violation <= 0.0),
        }
    }
}
