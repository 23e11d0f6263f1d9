//! Decay theorems as measured norm curves against their stated envelopes.
//!
//! Each check evolves the data exactly, integrates the relevant norm on a
//! log-spaced time grid, and compares the curve with the right-hand side
//! assembled verbatim from the statement: explicit norm coefficients,
//! explicit exponents, and constant 1 in place of the unspecified C. The
//! verdict then asks either that the fitted rate match the envelope's
//! dominant exponent (two-sided regimes) or that the normalized curve stay
//! bounded relative to its first sample (one-sided regimes, where the data
//! may decay strictly faster than the envelope).

use crate::data::InitialDatum;
use crate::spectral::{
    oscillatory_band_end, require_theta_two, EnergyConstants, ModelParams, ProfileParams,
};

use super::norms::{
    energy_l2_sq, matching_dimension, profile_error_l2_sq, solution_l2_sq, QuadSettings,
};
use super::{DecayReport, HarnessError, Sample, Verdict, VerdictMode};

/// β used to realize the unspecified exponential rate in the profile
/// statement's middle-frequency term through the constructive chain.
const MIDDLE_BAND_BETA: f64 = 0.1;

/// The three whole-space decay statements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    /// ‖u_t‖² + ‖∇u‖² against L¹ and high-frequency envelopes.
    EnergyDecay,
    /// ‖u‖² against L¹ and high-frequency envelopes, n ≥ 3.
    SolutionDecay,
    /// Frequency-side distance to the diffusion-wave profile, θ = 2.
    ProfileConvergence,
}

impl Theorem {
    pub fn check_name(self) -> &'static str {
        match self {
            Theorem::EnergyDecay => "thm11",
            Theorem::SolutionDecay => "thm12",
            Theorem::ProfileConvergence => "thm13",
        }
    }
}

/// Envelope curve c₁·s^{e₁} + … + c_m·s^{e_m} (+ c·e^{−rate·t}), with
/// s = 1 + t for the energy statements and s = t for the profile ones.
struct RhsCurve {
    power_terms: Vec<(f64, f64)>,
    exp_term: Option<(f64, f64)>,
    shifted: bool,
}

impl RhsCurve {
    fn eval(&self, t: f64) -> f64 {
        let s = if self.shifted { 1.0 + t } else { t };
        let mut total = 0.0;
        for &(coeff, exponent) in &self.power_terms {
            total += coeff * s.powf(exponent);
        }
        if let Some((coeff, rate)) = self.exp_term {
            total += coeff * (-rate * t).exp();
        }
        total
    }

    /// Slowest-decaying power with a nonzero coefficient; it predicts the
    /// observed rate when the data load that term.
    fn dominant_exponent(&self) -> f64 {
        self.power_terms
            .iter()
            .filter(|&&(coeff, _)| coeff > 0.0)
            .map(|&(_, exponent)| exponent)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

fn sq(x: f64) -> f64 {
    x * x
}

fn energy_rhs(u0: &InitialDatum, u1: &InitialDatum, ell: f64, theta: f64, n: f64) -> RhsCurve {
    RhsCurve {
        power_terms: vec![
            (sq(u1.norm_l1), -n / (2.0 * theta)),
            (sq(u0.norm_l1), -(n + 2.0) / (2.0 * theta)),
            (
                sq(u1.sobolev_norm(ell)) + sq(u0.sobolev_norm(ell + 1.0)),
                -ell / (theta - 1.0),
            ),
        ],
        exp_term: None,
        shifted: true,
    }
}

fn solution_rhs(u0: &InitialDatum, u1: &InitialDatum, ell: f64, theta: f64, n: f64) -> RhsCurve {
    RhsCurve {
        power_terms: vec![
            (sq(u1.norm_l1), -(n - 2.0) / (2.0 * theta)),
            (sq(u0.norm_l1), -n / (2.0 * theta)),
            (
                sq(u1.sobolev_norm(ell - 1.0)) + sq(u0.sobolev_norm(ell)),
                -ell / (theta - 1.0),
            ),
        ],
        exp_term: None,
        shifted: true,
    }
}

fn profile_rhs(u0: &InitialDatum, u1: &InitialDatum, ell: f64, n: f64) -> RhsCurve {
    // The statement leaves the exponential rate unnamed; realize it with the
    // constructive energy-chain rate at the reference β. Any positive rate
    // gives a valid envelope, this one keeps the term subdominant on the
    // usual grids.
    let alpha = EnergyConstants::new(MIDDLE_BAND_BETA)
        .expect("reference beta is valid")
        .alpha;
    RhsCurve {
        power_terms: vec![
            (sq(u1.norm_l11), -n / 4.0),
            (sq(u0.norm_l11), -(n + 2.0) / 4.0),
            (
                sq(u1.sobolev_norm(ell - 1.0)) + sq(u0.sobolev_norm(ell)),
                -ell,
            ),
        ],
        exp_term: Some((
            sq(u1.norm_l1) + sq(u0.norm_l1) + sq(u1.sobolev_norm(0.0)) + sq(u0.sobolev_norm(0.0)),
            alpha,
        )),
        shifted: false,
    }
}

fn zero_data_report(
    check: &str,
    predicted_slope: f64,
    tolerance: f64,
    mode: VerdictMode,
) -> DecayReport {
    DecayReport {
        check: check.to_string(),
        samples: Vec::new(),
        predicted_slope,
        fitted_slope: predicted_slope,
        slope_stderr: 0.0,
        ratio_spread: 1.0,
        tolerance,
        mode,
        verdict: Verdict::Pass,
    }
}

fn validate_times(check: &str, t_grid: &[f64], t_min: f64) -> Result<(), HarnessError> {
    for &t in t_grid {
        if !t.is_finite() || t < t_min {
            return Err(HarnessError::HypothesisViolated(format!(
                "{check} requires times >= {t_min}, got {t}"
            )));
        }
    }
    Ok(())
}

fn require_profile_regularity(check: &str, ell: f64, n: usize) -> Result<(), HarnessError> {
    let floor = if n >= 6 { n as f64 / 4.0 - 0.5 } else { 1.0 };
    let ok = if n >= 6 { ell > floor } else { ell >= floor };
    if !ok {
        return Err(HarnessError::HypothesisViolated(format!(
            "{check} requires ell > n/4 - 1/2 for n >= 6 and ell >= 1 otherwise, \
             got ell = {ell} with n = {n}"
        )));
    }
    Ok(())
}

/// Measures one decay statement on a time grid.
///
/// The right-hand side is assembled from the statement's norm combination
/// with constant 1, so `normalized = lhs/rhs` absorbs only the unspecified
/// C. The predicted slope is the slowest rhs power carried by a nonzero
/// norm; the energy and solution statements check the fitted rate against
/// it, the profile statement only checks anchored boundedness because smooth
/// radial data converge to the profile strictly faster than the envelope.
pub fn run_theorem_decay(
    which: Theorem,
    params: &ModelParams,
    u0: &InitialDatum,
    u1: &InitialDatum,
    ell: f64,
    t_grid: &[f64],
    settings: &QuadSettings,
) -> Result<DecayReport, HarnessError> {
    let n = matching_dimension(params, u0, u1)?;
    let check = which.check_name();
    if !ell.is_finite() {
        return Err(HarnessError::HypothesisViolated(format!(
            "{check} requires finite ell, got {ell}"
        )));
    }
    match which {
        Theorem::EnergyDecay => {
            if ell < 0.0 {
                return Err(HarnessError::HypothesisViolated(format!(
                    "thm11 requires ell >= 0, got {ell}"
                )));
            }
            validate_times(check, t_grid, f64::MIN_POSITIVE)?;
        }
        Theorem::SolutionDecay => {
            if n < 3 {
                return Err(HarnessError::HypothesisViolated(format!(
                    "thm12 requires n >= 3, got {n}"
                )));
            }
            if ell < 1.0 {
                return Err(HarnessError::HypothesisViolated(format!(
                    "thm12 requires ell >= 1, got {ell}"
                )));
            }
            validate_times(check, t_grid, f64::MIN_POSITIVE)?;
        }
        Theorem::ProfileConvergence => {
            require_theta_two(params)?;
            require_profile_regularity(check, ell, n)?;
            validate_times(check, t_grid, 1.0)?;
        }
    }

    let rhs = match which {
        Theorem::EnergyDecay => energy_rhs(u0, u1, ell, params.theta(), n as f64),
        Theorem::SolutionDecay => solution_rhs(u0, u1, ell, params.theta(), n as f64),
        Theorem::ProfileConvergence => profile_rhs(u0, u1, ell, n as f64),
    };
    let (tolerance, mode) = match which {
        Theorem::EnergyDecay => (0.08, VerdictMode::SlopeAndSpread),
        Theorem::SolutionDecay => (0.05, VerdictMode::SlopeAndSpread),
        Theorem::ProfileConvergence => (3.0, VerdictMode::UpperBound),
    };
    let predicted = rhs.dominant_exponent();
    if u0.is_zero() && u1.is_zero() {
        return Ok(zero_data_report(check, predicted, tolerance, mode));
    }

    let profile = ProfileParams::new(u0.mass, u1.mass);
    let mut samples = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let value = match which {
            Theorem::EnergyDecay => energy_l2_sq(t, params, u0, u1, settings)?.value,
            Theorem::SolutionDecay => solution_l2_sq(t, params, u0, u1, settings)?.value,
            Theorem::ProfileConvergence => {
                profile_error_l2_sq(t, params, u0, u1, &profile, settings.r_max, settings)?.value
            }
        };
        samples.push(Sample {
            t,
            value,
            normalized: value / rhs.eval(t),
        });
    }
    DecayReport::from_samples(check, samples, predicted, tolerance, mode)
}

/// Low-band profile error over |ξ| ≤ δ₀ against its two-moment envelope.
pub fn check_lemma31(
    params: &ModelParams,
    u0: &InitialDatum,
    u1: &InitialDatum,
    delta0: f64,
    t_grid: &[f64],
    settings: &QuadSettings,
) -> Result<DecayReport, HarnessError> {
    require_theta_two(params)?;
    let n = matching_dimension(params, u0, u1)? as f64;
    if !(delta0 > 0.0 && delta0 < oscillatory_band_end()) {
        return Err(HarnessError::HypothesisViolated(format!(
            "lemma31 requires 0 < delta0 < 4^(1/6), got {delta0}"
        )));
    }
    validate_times("lemma31", t_grid, 1.0)?;
    let rhs = RhsCurve {
        power_terms: vec![
            (sq(u1.norm_l11), -n / 4.0),
            (sq(u0.norm_l11), -(n + 2.0) / 4.0),
        ],
        exp_term: None,
        shifted: false,
    };
    let predicted = rhs.dominant_exponent();
    if u0.is_zero() && u1.is_zero() {
        return Ok(zero_data_report(
            "lemma31",
            predicted,
            3.0,
            VerdictMode::UpperBound,
        ));
    }
    let profile = ProfileParams::new(u0.mass, u1.mass);
    let mut samples = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let value = profile_error_l2_sq(t, params, u0, u1, &profile, delta0, settings)?.value;
        samples.push(Sample {
            t,
            value,
            normalized: value / rhs.eval(t),
        });
    }
    DecayReport::from_samples("lemma31", samples, predicted, 3.0, VerdictMode::UpperBound)
}

/// A two-sided band with its realized constants.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoSidedReport {
    pub report: DecayReport,
    /// Realized lower constant: min normalized value over |P₁|.
    pub c1: f64,
    /// Realized upper constant: max normalized value over I₀.
    pub c2: f64,
    /// The combined data norm I₀ entering the upper bound.
    pub i0: f64,
}

/// Measures ‖u(t)‖ against its sharp two-sided envelope: t^{−(n−2)/8} for
/// n ≥ 3 (thm43), √(log t) for n = 2 (thm44), √t for n = 1 (thm45).
///
/// Requires θ = 2 and a nonzero velocity mass, which drives the leading
/// profile term. The reported constants realize
/// c₁|P₁| ≤ normalized ≤ c₂I₀ on the grid.
pub fn two_sided_l2(
    params: &ModelParams,
    u0: &InitialDatum,
    u1: &InitialDatum,
    ell: f64,
    t_grid: &[f64],
    settings: &QuadSettings,
) -> Result<TwoSidedReport, HarnessError> {
    require_theta_two(params)?;
    let n = matching_dimension(params, u0, u1)?;
    let (check, predicted) = match n {
        1 => ("thm45", 0.5),
        2 => ("thm44", 0.0),
        _ => ("thm43", -(n as f64 - 2.0) / 8.0),
    };
    require_profile_regularity(check, ell, n)?;
    if u1.mass == 0.0 {
        return Err(HarnessError::HypothesisViolated(format!(
            "{check} requires a nonzero velocity mass P1 = ∫u1"
        )));
    }
    let t_min = if n == 2 { 1.0 + f64::EPSILON } else { 1.0 };
    validate_times(check, t_grid, t_min)?;

    let mode = if n == 2 {
        VerdictMode::LogRatio
    } else {
        VerdictMode::RatioSpread
    };
    let mut samples = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let value = solution_l2_sq(t, params, u0, u1, settings)?.value.sqrt();
        let envelope = match n {
            1 => t.sqrt(),
            2 => t.ln().sqrt(),
            _ => t.powf(-(n as f64 - 2.0) / 8.0),
        };
        samples.push(Sample {
            t,
            value,
            normalized: value / envelope,
        });
    }
    let report = DecayReport::from_samples(check, samples, predicted, 4.0, mode)?;
    let i0 = u0.sobolev_norm(0.0)
        + u0.norm_l1
        + u0.norm_l11
        + u0.sobolev_norm(ell)
        + u1.sobolev_norm(0.0)
        + u1.norm_l1
        + u1.norm_l11
        + u1.sobolev_norm(ell - 1.0);
    let normalized = report.samples.iter().map(|s| s.normalized);
    let low = normalized.clone().fold(f64::INFINITY, f64::min);
    let high = normalized.fold(f64::NEG_INFINITY, f64::max);
    Ok(TwoSidedReport {
        report,
        c1: low / u1.mass.abs(),
        c2: high / i0,
        i0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::make_gaussian;
    use crate::harness::log_grid;
    use crate::InitialDatum;

    fn violation_message(result: Result<DecayReport, HarnessError>) -> String {
        match result {
            Err(HarnessError::HypothesisViolated(msg)) => msg,
            other => panic!("expected a hypothesis violation, got {other:?}"),
        }
    }

    #[test]
    fn hypothesis_violations_name_the_failing_condition() {
        let settings = QuadSettings::default();
        let grid = log_grid(1e2, 1e3, 8);
        let plane = ModelParams::new(2.0, 2).unwrap();
        let g2 = make_gaussian(1.0, 0.5, 2).unwrap();
        let msg = violation_message(run_theorem_decay(
            Theorem::SolutionDecay,
            &plane,
            &InitialDatum::zero(2),
            &g2,
            1.0,
            &grid,
            &settings,
        ));
        assert!(msg.contains("n >= 3"), "{msg}");

        let space = ModelParams::new(2.0, 3).unwrap();
        let g3 = make_gaussian(1.0, 0.5, 3).unwrap();
        let msg = violation_message(run_theorem_decay(
            Theorem::EnergyDecay,
            &space,
            &InitialDatum::zero(3),
            &g3,
            -0.5,
            &grid,
            &settings,
        ));
        assert!(msg.contains("ell >= 0"), "{msg}");

        let fractional = ModelParams::new(1.5, 3).unwrap();
        assert!(matches!(
            run_theorem_decay(
                Theorem::ProfileConvergence,
                &fractional,
                &InitialDatum::zero(3),
                &g3,
                1.0,
                &grid,
                &settings
            ),
            Err(HarnessError::Spectral(_))
        ));

        let msg = violation_message(check_lemma31(
            &space,
            &InitialDatum::zero(3),
            &g3,
            1.5,
            &grid,
            &settings,
        ));
        assert!(msg.contains("delta0"), "{msg}");

        match two_sided_l2(
            &space,
            &InitialDatum::zero(3),
            &InitialDatum::zero(3),
            1.0,
            &grid,
            &settings,
        ) {
            Err(HarnessError::HypothesisViolated(msg)) => {
                assert!(msg.contains("mass"), "{msg}")
            }
            other => panic!("expected a hypothesis violation, got {other:?}"),
        }
    }

    #[test]
    fn zero_data_short_circuits_to_a_pass() {
        let params = ModelParams::new(2.0, 3).unwrap();
        let zero = InitialDatum::zero(3);
        let grid = log_grid(1e2, 1e3, 8);
        let report = run_theorem_decay(
            Theorem::EnergyDecay,
            &params,
            &zero,
            &zero,
            2.0,
            &grid,
            &QuadSettings::default(),
        )
        .unwrap();
        assert!(report.verdict.passed());
        assert!(report.samples.is_empty());
        assert_eq!(report.ratio_spread, 1.0);
    }

    #[test]
    fn solution_decay_tracks_its_envelope_on_a_short_grid() {
        let params = ModelParams::new(2.0, 3).unwrap();
        let u0 = InitialDatum::zero(3);
        let u1 = make_gaussian(1.0, 0.5, 3).unwrap();
        let report = run_theorem_decay(
            Theorem::SolutionDecay,
            &params,
            &u0,
            &u1,
            1.0,
            &log_grid(1e2, 1e3, 8),
            &QuadSettings::default(),
        )
        .unwrap();
        assert_eq!(report.check, "thm12");
        assert_eq!(report.predicted_slope, -0.25);
        assert!(report.verdict.passed(), "fitted {}", report.fitted_slope);
        assert!((report.fitted_slope + 0.25).abs() < 0.05);
    }

    #[test]
    fn profile_convergence_is_bounded_by_its_envelope() {
        let params = ModelParams::new(2.0, 3).unwrap();
        let u0 = InitialDatum::zero(3);
        let u1 = make_gaussian(1.0, 0.5, 3).unwrap();
        let settings = QuadSettings::default();
        let grid = log_grid(1e3, 1e4, 8);
        let report = run_theorem_decay(
            Theorem::ProfileConvergence,
            &params,
            &u0,
            &u1,
            1.0,
            &grid,
            &settings,
        )
        .unwrap();
        assert_eq!(report.check, "thm13");
        assert!(report.verdict.passed());
        // Radial data beat the envelope, so the normalized curve falls.
        let first = report.samples.first().unwrap().normalized;
        let last = report.samples.last().unwrap().normalized;
        assert!(last < first);

        let restricted = check_lemma31(&params, &u0, &u1, 0.5, &grid, &settings).unwrap();
        assert!(restricted.verdict.passed());
        // The low band carries almost the whole error at these times.
        let full = report.samples.first().unwrap().value;
        let low = restricted.samples.first().unwrap().value;
        assert!(low <= full * (1.0 + 1e-9));
        assert!(low > 0.5 * full);
    }

    #[test]
    fn two_sided_band_reports_positive_constants() {
        let params = ModelParams::new(2.0, 1).unwrap();
        let u0 = InitialDatum::zero(1);
        let u1 = make_gaussian(1.0, 0.5, 1).unwrap();
        let band = two_sided_l2(
            &params,
            &u0,
            &u1,
            1.0,
            &log_grid(1e2, 1e3, 8),
            &QuadSettings::default(),
        )
        .unwrap();
        assert_eq!(band.report.check, "thm45");
        assert!(band.report.verdict.passed());
        assert!(band.c1 > 0.0 && band.c2 > 0.0);
        assert!(band.i0 > u1.norm_l11);
        // ‖u‖/√t approaches |P₁|/√2 from the leading profile term.
        let target = u1.mass / 2f64.sqrt();
        let last = band.report.samples.last().unwrap().normalized;
        assert!((last - target).abs() < 0.05 * target, "{last} vs {target}");
    }

    #[test]
    fn high_frequency_term_is_negligible_in_low_dimensions() {
        let u0 = make_gaussian(0.7, 0.4, 3).unwrap();
        let u1 = make_gaussian(1.0, 0.5, 3).unwrap();
        let rhs = energy_rhs(&u0, &u1, 2.0, 2.0, 3.0);
        assert_eq!(rhs.power_terms.len(), 3);
        assert_eq!(rhs.dominant_exponent(), -0.75);
        let t = 1e4f64;
        let leading = rhs.power_terms[0].0 * (1.0 + t).powf(rhs.power_terms[0].1);
        let high = rhs.power_terms[2].0 * (1.0 + t).powf(rhs.power_terms[2].1);
        assert!(high < 1e-2 * leading);
        // The full curve is the plain sum of its terms.
        let by_hand: f64 = rhs
            .power_terms
            .iter()
            .map(|&(c, e)| c * (1.0 + t).powf(e))
            .sum();
        assert_eq!(rhs.eval(t), by_hand);

        let profile = profile_rhs(&u0, &u1, 1.0, 3.0);
        let (coeff, rate) = profile.exp_term.unwrap();
        assert!(coeff > 0.0 && rate > 0.1 && rate < 0.2);
        let t = 1e3f64;
        let by_hand = sq(u1.norm_l11) * t.powf(-0.75)
            + sq(u0.norm_l11) * t.powf(-1.25)
            + (sq(u1.sobolev_norm(0.0)) + sq(u0.sobolev_norm(1.0))) / t
            + coeff * (-rate * t).exp();
        assert!((profile.eval(t) - by_hand).abs() <= 1e-12 * by_hand);
    }
}
