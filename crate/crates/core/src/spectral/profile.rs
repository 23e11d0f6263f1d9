//! Diffusion-wave profile and remainder decomposition for θ = 2.
//!
//! In the oscillatory band 0 < r < 4^{1/6} the exact mode solution splits as
//!
//! û = profile + k1 + k2 + k3 + (p1·k4 − p0·k5 + k6)
//!
//! where profile(t, r) = e^{−tr⁴/2}(p1·t·sinc(tr) + p0·cos(tr)) carries only
//! the data masses p0 = û₀(0), p1 = û₁(0), the terms k1..k3 are computable
//! corrections, and the last three terms are controlled pointwise by the
//! envelopes env4..env6. The residual bound
//!
//! |û − profile − k1 − k2 − k3| ≤ |p1|·env4 + |p0|·env5 + env6
//!
//! holds everywhere in the band.

use crate::Complex;

use super::{ModelParams, SpectralError, SpectralState};

/// Data masses entering the diffusion-wave profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileParams {
    /// Mass of the initial displacement, û₀(0).
    pub p0: f64,
    /// Mass of the initial velocity, û₁(0).
    pub p1: f64,
}

impl ProfileParams {
    pub fn new(p0: f64, p1: f64) -> Self {
        ProfileParams { p0, p1 }
    }
}

/// Upper end 4^{1/6} of the θ = 2 oscillatory band.
pub fn oscillatory_band_end() -> f64 {
    2f64.cbrt()
}

/// Evaluates the diffusion-wave profile e^{−tr⁴/2}(p1 t sinc(tr) + p0 cos(tr)).
pub fn profile_hat(t: f64, r: f64, profile: &ProfileParams) -> f64 {
    assert!(t.is_finite() && t >= 0.0, "time must be finite and nonnegative");
    assert!(r.is_finite() && r >= 0.0, "frequency must be finite and nonnegative");
    let g = (-0.5 * t * (r * r) * (r * r)).exp();
    g * (profile.p1 * t * crate::special::sinc(t * r) + profile.p0 * (t * r).cos())
}

/// Computable remainder terms and envelope bounds at one point (t, r).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RemainderTerms {
    /// Phase-tilt correction p0·g·(r³/w)·sin φ.
    pub k1: Complex,
    /// Moment correction (û₁(r) − p1)·g·t·sinc φ.
    pub k2: Complex,
    /// Moment correction (û₀(r) − p0)·g·(cos φ + (r³/w)·sin φ).
    pub k3: Complex,
    /// Envelope for the p1-weighted frequency-shift term k4.
    pub env4: f64,
    /// Envelope for the p0-weighted phase-shift term k5.
    pub env5: f64,
    /// Envelope for the sinc phase-shift term k6.
    pub env6: f64,
}

impl RemainderTerms {
    /// Pointwise bound on |û − profile − k1 − k2 − k3|.
    pub fn residual_bound(&self, profile: &ProfileParams) -> f64 {
        profile.p1.abs() * self.env4 + profile.p0.abs() * self.env5 + self.env6
    }

    /// Profile plus the computable corrections k1 + k2 + k3.
    pub fn corrected(&self, t: f64, r: f64, profile: &ProfileParams) -> Complex {
        Complex::new(profile_hat(t, r, profile), 0.0) + self.k1 + self.k2 + self.k3
    }
}

/// Computes the remainder terms from the spectral data values at frequency r.
///
/// `u0_hat` and `u1_hat` are û₀(r) and û₁(r). Only valid in the open
/// oscillatory band 0 < r < 4^{1/6}; θ is fixed to 2 by the decomposition.
pub fn remainder_terms_at(
    t: f64,
    r: f64,
    u0_hat: Complex,
    u1_hat: Complex,
    profile: &ProfileParams,
) -> Result<RemainderTerms, SpectralError> {
    assert!(t.is_finite() && t >= 0.0, "time must be finite and nonnegative");
    let r6 = r * r * r * r * r * r;
    if !(r > 0.0 && r6 < 4.0) || !r.is_finite() {
        return Err(SpectralError::OutsideOscillatoryBand(r));
    }
    let w = (4.0 - r6).sqrt();
    let phi = 0.5 * t * r * w;
    let g = (-0.5 * t * (r * r) * (r * r)).exp();
    let a0 = u0_hat - Complex::new(profile.p0, 0.0);
    let a1 = u1_hat - Complex::new(profile.p1, 0.0);
    let tilt = r * r * r / w * phi.sin();
    let k1 = Complex::new(profile.p0 * g * tilt, 0.0);
    let k2 = a1 * g * t * crate::special::sinc(phi);
    let k3 = a0 * g * (phi.cos() + tilt);
    let env4 = t * g * r6 / w;
    let env5 = 0.5 * t * r * g * r6;
    let env6 = profile.p1.abs() * g * t * 6.0 * r6 / (4.0 - r6).powf(1.5);
    Ok(RemainderTerms {
        k1,
        k2,
        k3,
        env4,
        env5,
        env6,
    })
}

/// Remainder terms for a pair of initial data, sampled at frequency r.
pub fn remainder_terms(
    t: f64,
    r: f64,
    u0: &crate::data::InitialDatum,
    u1: &crate::data::InitialDatum,
    profile: &ProfileParams,
) -> Result<RemainderTerms, SpectralError> {
    remainder_terms_at(
        t,
        r,
        Complex::new(u0.u_hat(r), 0.0),
        Complex::new(u1.u_hat(r), 0.0),
        profile,
    )
}

/// Absolute distance between an evolved mode and the bare profile.
///
/// The state carries its own (r, t). Valid only for θ = 2 states inside the
/// oscillatory band; the caller is responsible for the θ of the evolution.
pub fn profile_error(state: &SpectralState, profile: &ProfileParams) -> f64 {
    (state.u_hat - Complex::new(profile_hat(state.t, state.r, profile), 0.0)).norm()
}

/// Verifies θ = 2 before profile work; the decomposition is specific to it.
pub fn require_theta_two(params: &ModelParams) -> Result<(), SpectralError> {
    if params.theta() != 2.0 {
        return Err(SpectralError::InvalidTheta(params.theta()));
    }
    Ok(())
}
