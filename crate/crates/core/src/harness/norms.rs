//! Whole-space norms of evolved solutions by banded radial quadrature.
//!
//! The solution oscillates like e^{iωt} with ω ≈ r at low frequencies, so a
//! fixed plan cannot serve every t. The banded plan resolves the oscillation
//! with panels of width π/(2t) up to the live radius where the dissipative
//! envelope has already fallen to e^{−160}, then crosses the rest of the
//! oscillatory band and the overdamped range with coarse panels. Truncation
//! relies on the data: spectra must be negligible beyond `QuadSettings::r_max`.

use std::f64::consts::PI;

use crate::data::InitialDatum;
use crate::quadrature::{
    integrate_radial, Quadrature, QuadraturePlan, RadialIntegrand, Segment,
};
use crate::spectral::{
    characteristic_roots, evolve_exact, profile_hat, ModelParams, ProfileParams, SpectralState,
};
use crate::Complex;

use super::HarnessError;

/// Quadrature knobs shared by the norm-curve checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSettings {
    /// Relative tolerance handed to the refinement ladder.
    pub tolerance: f64,
    /// Gauss-Legendre points per panel.
    pub points_per_panel: usize,
    /// Truncation radius; the data spectra must be negligible beyond it.
    pub r_max: f64,
}

impl Default for QuadSettings {
    fn default() -> Self {
        QuadSettings {
            tolerance: 1e-9,
            points_per_panel: 12,
            r_max: 16.0,
        }
    }
}

pub(super) fn matching_dimension(
    params: &ModelParams,
    u0: &InitialDatum,
    u1: &InitialDatum,
) -> Result<usize, HarnessError> {
    let n = params.dim() as usize;
    if u0.n != n || u1.n != n {
        return Err(HarnessError::HypothesisViolated(format!(
            "data dimensions ({}, {}) must match the model dimension {n}",
            u0.n, u1.n
        )));
    }
    Ok(n)
}

/// Builds the banded plan on [0, r_upper], optionally pinning one extra
/// breakpoint (used to split integrands exactly at a band edge).
fn banded_plan_to(
    t: f64,
    params: &ModelParams,
    settings: &QuadSettings,
    r_upper: f64,
    pin: Option<f64>,
) -> Result<QuadraturePlan, HarnessError> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(HarnessError::HypothesisViolated(format!(
            "time must be nonnegative and finite, got {t}"
        )));
    }
    if !(r_upper > 0.0) || !r_upper.is_finite() {
        return Err(HarnessError::HypothesisViolated(format!(
            "truncation radius must be positive and finite, got {r_upper}"
        )));
    }
    let theta = params.theta();
    let band_end = 4f64.powf(1.0 / (4.0 * theta - 2.0));
    let live = if t > 0.0 {
        (160.0 / t).powf(0.5 / theta)
    } else {
        f64::INFINITY
    };
    let fine_end = band_end.min(live).min(r_upper);
    let fine_width = 0.5 * PI / t.max(1.0);
    let mut cuts = vec![fine_end, r_upper];
    if let Some(p) = pin {
        cuts.push(p);
    }
    if r_upper > 2.0 {
        cuts.push(2.0);
    }
    cuts.retain(|&x| x > 0.0 && x <= r_upper);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut segments = Vec::new();
    let mut cursor = 0.0;
    for &hi in &cuts {
        if hi <= cursor {
            continue;
        }
        let panels = if cursor < fine_end {
            (((hi - cursor) / fine_width).ceil() as usize).max(8)
        } else if cursor < 2.0 {
            24
        } else {
            48
        };
        segments.push(Segment::new(cursor, hi, panels));
        cursor = hi;
    }
    Ok(QuadraturePlan::from_segments(
        segments,
        settings.points_per_panel,
        None,
    )?)
}

/// The banded plan used for solution norms at time t.
pub fn banded_solution_plan(
    t: f64,
    params: &ModelParams,
    settings: &QuadSettings,
) -> Result<QuadraturePlan, HarnessError> {
    banded_plan_to(t, params, settings, settings.r_max, None)
}

fn evolved_state(
    params: &ModelParams,
    u0: &InitialDatum,
    u1: &InitialDatum,
    t: f64,
    r: f64,
) -> SpectralState {
    let roots = characteristic_roots(params, r).expect("plan radii are valid frequencies");
    evolve_exact(
        &roots,
        Complex::new(u0.u_hat(r), 0.0),
        Complex::new(u1.u_hat(r), 0.0),
        t,
    )
}

fn scaled(q: Quadrature, factor: f64) -> Quadrature {
    Quadrature {
        value: q.value * factor,
        error: q.error * factor,
        ..q
    }
}

/// ‖u(t)‖² = (2π)^{−n} ∫ |û|² dξ from the exact evolution.
pub fn solution_l2_sq(
    t: f64,
    params: &ModelParams,
    u0: &InitialDatum,
    u1: &InitialDatum,
    settings: &QuadSettings,
) -> Result<Quadrature, HarnessError> {
    let n = matching_dimension(params, u0, u1)?;
    let f = RadialIntegrand::smooth(
        move |r| evolved_state(params, u0, u1, t, r).u_hat.norm_sqr(),
        n,
    )?;
    let plan = banded_solution_plan(t, params, settings)?;
    let q = integrate_radial(&f, &plan, settings.tolerance)?;
    Ok(scaled(q, (2.0 * PI).powi(-(n as i32))))
}

/// ‖u_t(t)‖² + ‖∇u(t)‖² = (2π)^{−n} ∫ (|û_t|² + r²|û|²) dξ.
pub fn energy_l2_sq(
    t: f64,
    params: &ModelParams,
    u0: &InitialDatum,
    u1: &InitialDatum,
    settings: &QuadSettings,
) -> Result<Quadrature, HarnessError> {
    let n = matching_dimension(params, u0, u1)?;
    let f = RadialIntegrand::smooth(
        move |r| {
            let state = evolved_state(params, u0, u1, t, r);
            state.v_hat.norm_sqr() + r * r * state.u_hat.norm_sqr()
        },
        n,
    )?;
    let plan = banded_solution_plan(t, params, settings)?;
    let q = integrate_radial(&f, &plan, settings.tolerance)?;
    Ok(scaled(q, (2.0 * PI).powi(-(n as i32))))
}

/// ∫_{|ξ|≤r_upper} |û − profile|² dξ against the diffusion-wave profile.
///
/// No Plancherel factor: the profile convergence statements bound the
/// frequency-side integral itself.
pub fn profile_error_l2_sq(
    t: f64,
    params: &ModelParams,
    u0: &InitialDatum,
    u1: &InitialDatum,
    profile: &ProfileParams,
    r_upper: f64,
    settings: &QuadSettings,
) -> Result<Quadrature, HarnessError> {
    let n = matching_dimension(params, u0, u1)?;
    let f = RadialIntegrand::smooth(
        move |r| {
            let state = evolved_state(params, u0, u1, t, r);
            (state.u_hat - Complex::new(profile_hat(t, r, profile), 0.0)).norm_sqr()
        },
        n,
    )?;
    let plan = banded_plan_to(t, params, settings, r_upper, None)?;
    Ok(integrate_radial(&f, &plan, settings.tolerance)?)
}

/// Splits the profile error at |ξ| = 1 into its low and high parts.
///
/// The split point is pinned as a panel boundary, so the masked high-band
/// integrand stays smooth inside every panel. The two parts must sum to the
/// full-range error; the harness checks that consistency in its tests.
pub fn low_high_split(
    t: f64,
    params: &ModelParams,
    u0: &InitialDatum,
    u1: &InitialDatum,
    profile: &ProfileParams,
    settings: &QuadSettings,
) -> Result<(f64, f64), HarnessError> {
    let n = matching_dimension(params, u0, u1)?;
    let err_sq = move |r: f64| {
        let state = evolved_state(params, u0, u1, t, r);
        (state.u_hat - Complex::new(profile_hat(t, r, profile), 0.0)).norm_sqr()
    };
    let low_plan = banded_plan_to(t, params, settings, 1.0, None)?;
    let low_f = RadialIntegrand::smooth(&err_sq, n)?;
    let low = integrate_radial(&low_f, &low_plan, settings.tolerance)?.value;
    let high_plan = banded_plan_to(t, params, settings, settings.r_max, Some(1.0))?;
    let high_f = RadialIntegrand::smooth(|r| if r < 1.0 { 0.0 } else { err_sq(r) }, n)?;
    let high = integrate_radial(&high_f, &high_plan, settings.tolerance)?.value;
    Ok((low, high))
}
