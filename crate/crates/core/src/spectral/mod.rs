//! Exact per-frequency dynamics of û_tt + r^{2θ} û_t + r² û = 0.
//!
//! The characteristic polynomial λ² + r^{2θ} λ + r² splits the frequency
//! axis into an oscillatory band (discriminant negative), an overdamped
//! range (positive) and a thin confluent transition between them. All
//! downstream quantities (evolution, energies, profile remainders) are
//! built from the root pair computed here.

mod energy;
mod evolve;
mod profile;
mod roots;

pub use energy::{energy_snapshot, EnergyConstants, EnergySnapshot};
pub use evolve::evolve_exact;
pub use profile::{
    oscillatory_band_end, profile_error, profile_hat, remainder_terms, remainder_terms_at,
    require_theta_two, ProfileParams, RemainderTerms,
};
pub use roots::{characteristic_roots, rho, Regime, RootPair};

use crate::Complex;

/// Width of the band around the double-root frequency that is tagged
/// [`Regime::Critical`], measured on r^{4θ−2} − 4.
pub const CONFLUENCE_BAND: f64 = 1e-6;

/// Model parameters: damping exponent θ > 1 and spatial dimension n ≥ 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    theta: f64,
    dim: u32,
}

impl ModelParams {
    pub fn new(theta: f64, dim: u32) -> Result<Self, SpectralError> {
        if !(theta > 1.0) || !theta.is_finite() {
            return Err(SpectralError::InvalidTheta(theta));
        }
        if dim < 1 {
            return Err(SpectralError::InvalidDimension(dim));
        }
        Ok(Self { theta, dim })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// r^{2θ}, with a fast path for the θ = 2 profile case.
    pub(crate) fn pow_2theta(&self, r: f64) -> f64 {
        if self.theta == 2.0 {
            let r2 = r * r;
            r2 * r2
        } else {
            r.powf(2.0 * self.theta)
        }
    }

    /// r^{4θ−2}, the quantity whose comparison with 4 decides the regime.
    pub(crate) fn pow_4theta_minus_2(&self, r: f64) -> f64 {
        if self.theta == 2.0 {
            let r2 = r * r;
            r2 * r2 * r2
        } else {
            r.powf(4.0 * self.theta - 2.0)
        }
    }
}

/// State of one Fourier mode: û and û_t at frequency `r` and time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralState {
    pub u_hat: Complex,
    pub v_hat: Complex,
    pub r: f64,
    pub t: f64,
}

impl SpectralState {
    pub fn new(u_hat: Complex, v_hat: Complex, r: f64, t: f64) -> Self {
        Self { u_hat, v_hat, r, t }
    }

    pub fn from_real(u_hat: f64, v_hat: f64, r: f64, t: f64) -> Self {
        Self {
            u_hat: Complex::new(u_hat, 0.0),
            v_hat: Complex::new(v_hat, 0.0),
            r,
            t,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpectralError {
    #[error("damping exponent must satisfy theta > 1 and be finite, got {0}")]
    InvalidTheta(f64),
    #[error("spatial dimension must be at least 1, got {0}")]
    InvalidDimension(u32),
    #[error("frequency must be finite and nonnegative, got {0}")]
    InvalidFrequency(f64),
    #[error("coupling beta must lie strictly between 0 and 1, got {0}")]
    InvalidBeta(f64),
    #[error("remainder decomposition requires 0 < r < 4^(1/6), got r = {0}")]
    OutsideOscillatoryBand(f64),
}
