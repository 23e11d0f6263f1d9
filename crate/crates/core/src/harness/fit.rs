//! Log-log least squares and log-spaced time grids.

use super::{DecayReport, HarnessError, Sample, VerdictMode, MIN_SAMPLES};

/// Geometric grid from t_min to t_max, both included.
///
/// The step realizes `points_per_decade` samples per factor of ten; the
/// endpoints are pinned exactly so repeated runs share their anchors.
pub fn log_grid(t_min: f64, t_max: f64, points_per_decade: usize) -> Vec<f64> {
    assert!(
        t_min > 0.0 && t_min.is_finite() && t_max > t_min && t_max.is_finite(),
        "log grid needs 0 < t_min < t_max"
    );
    assert!(points_per_decade >= 1, "log grid needs at least one point per decade");
    let decades = (t_max / t_min).log10();
    let intervals = ((decades * points_per_decade as f64).round() as usize).max(1);
    let mut grid: Vec<f64> = (0..=intervals)
        .map(|i| t_min * 10f64.powf(decades * i as f64 / intervals as f64))
        .collect();
    grid[0] = t_min;
    grid[intervals] = t_max;
    grid
}

/// Least-squares line through (log t, log value).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    /// Standard error of the slope from the fit residuals.
    pub stderr: f64,
}

/// Fits a power law to positive samples; needs [`MIN_SAMPLES`] of them.
pub fn fit_powerlaw(samples: &[(f64, f64)]) -> Result<SlopeFit, HarnessError> {
    if samples.len() < MIN_SAMPLES {
        return Err(HarnessError::TooFewSamples {
            min: MIN_SAMPLES,
            got: samples.len(),
        });
    }
    for &(t, value) in samples {
        if !(t > 0.0) || !t.is_finite() || !(value > 0.0) || !value.is_finite() {
            return Err(HarnessError::NonpositiveSample { t, value });
        }
    }
    let n = samples.len() as f64;
    let logs: Vec<(f64, f64)> = samples.iter().map(|&(t, v)| (t.ln(), v.ln())).collect();
    let x_mean = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let y_mean = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for &(x, y) in &logs {
        sxx += (x - x_mean) * (x - x_mean);
        sxy += (x - x_mean) * (y - y_mean);
    }
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let mut residual_sq = 0.0;
    for &(x, y) in &logs {
        let d = y - (intercept + slope * x);
        residual_sq += d * d;
    }
    let stderr = (residual_sq / (n - 2.0) / sxx).sqrt();
    Ok(SlopeFit {
        slope,
        intercept,
        stderr,
    })
}

/// Fits (t, value) samples and judges them against a predicted slope.
///
/// Normalization follows the mode: [`VerdictMode::LogRatio`] divides each
/// value by log t (so every t must exceed 1), every other mode divides by
/// t^{predicted_slope}.
pub fn fit_decay_rate(
    check: &str,
    samples: &[(f64, f64)],
    predicted_slope: f64,
    tolerance: f64,
    mode: VerdictMode,
) -> Result<DecayReport, HarnessError> {
    let enriched: Vec<Sample> = match mode {
        VerdictMode::LogRatio => {
            for &(t, _) in samples {
                if t <= 1.0 {
                    return Err(HarnessError::HypothesisViolated(format!(
                        "log-normalized check needs t > 1, got t = {t}"
                    )));
                }
            }
            samples
                .iter()
                .map(|&(t, value)| Sample {
                    t,
                    value,
                    normalized: value / t.ln(),
                })
                .collect()
        }
        _ => samples
            .iter()
            .map(|&(t, value)| Sample {
                t,
                value,
                normalized: value * t.powf(-predicted_slope),
            })
            .collect(),
    };
    DecayReport::from_samples(check, enriched, predicted_slope, tolerance, mode)
}
