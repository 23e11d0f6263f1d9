//! Energy functionals for a single Fourier mode.
//!
//! For a mode at frequency `r` with state (û, v̂ = û_t):
//!
//! * `e0` is the free energy ½|v̂|² + ½r²|û|².
//! * `e` is the modified energy e0 + βρℜ(v̂ū) + ½βρr^{2θ}|û|², built with the
//!   weight ρ(r) = r^{2θ}/(1 + r^{4θ−2}).
//! * `f` is the production functional r^{2θ}|v̂|² + βρr²|û|², which controls
//!   −de/dt up to the cross term r = βρ|v̂|².
//!
//! `EnergyConstants` packages the β-explicit comparison constants used by the
//! exponential mode-decay bound: e ≤ decay_c · e^{−α ρ(r) t} · e(0) follows
//! from the sandwich (1−β)e0 ≤ e ≤ (1+2β)e0 together with ρe ≤ m2 · f.

use super::roots::rho;
use super::{ModelParams, SpectralError, SpectralState};

/// Energy functionals of one spectral mode at its stored frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergySnapshot {
    /// Free energy ½|v̂|² + ½r²|û|².
    pub e0: f64,
    /// Modified energy with the βρ cross and potential terms.
    pub e: f64,
    /// Production functional r^{2θ}|v̂|² + βρr²|û|².
    pub f: f64,
    /// Cross production βρ|v̂|², the right side of de/dt + f = rr.
    pub rr: f64,
    /// Mixing parameter the snapshot was built with.
    pub beta: f64,
}

/// Constants for the β-family of modified energies.
///
/// All fields are explicit functions of β, valid for every θ > 1 and every
/// frequency r ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyConstants {
    /// Mixing parameter β ∈ (0, 1).
    pub beta: f64,
    /// Bound on the two frequency functions (ρ + βρ²/r)/(2r^{2θ}) and
    /// 1/(2β) + ρ/(2r) + ρr^{2θ−2}/2.
    pub m1: f64,
    /// Modified-energy production bound ρ e ≤ m2 f; equals m1.
    pub m2: f64,
    /// Lower sandwich constant: (1−β) e0 ≤ e.
    pub equivalence_lower: f64,
    /// Upper sandwich constant: e ≤ (1+2β) e0.
    pub equivalence_upper: f64,
    /// Exponential rate: de/dt ≤ −α ρ e with α = (1−β)/m2.
    pub alpha: f64,
    /// Prefactor in e0(t) ≤ decay_c · e^{−αρt} · e0(0).
    pub decay_c: f64,
}

impl EnergyConstants {
    /// Builds the constant family for a mixing parameter β ∈ (0, 1).
    pub fn new(beta: f64) -> Result<Self, SpectralError> {
        if !(beta > 0.0 && beta < 1.0) || !beta.is_finite() {
            return Err(SpectralError::InvalidBeta(beta));
        }
        // ρ e0 ≤ max(½ + β/4, 1/(2β) + ¾) f: the kinetic part of ρe0 costs
        // ½ + β/4 per unit of r^{2θ}|v̂|², the potential part 1/(2β) + ¾ per
        // unit of βρr²|û|², using ρ ≤ r^{2−2θ} and ρ ≤ 1 respectively.
        let m1 = (0.5 + 0.25 * beta).max(0.5 / beta + 0.75);
        let m2 = m1;
        let equivalence_lower = 1.0 - beta;
        let equivalence_upper = 1.0 + 2.0 * beta;
        let alpha = (1.0 - beta) / m2;
        let decay_c = equivalence_upper / equivalence_lower;
        Ok(EnergyConstants {
            beta,
            m1,
            m2,
            equivalence_lower,
            equivalence_upper,
            alpha,
            decay_c,
        })
    }

    /// Pointwise decay envelope: e0(t)/e0(0) ≤ decay_c · e^{−α ρ(r) t}.
    pub fn decay_bound(&self, rho_r: f64, t: f64) -> f64 {
        self.decay_c * (-self.alpha * rho_r * t).exp()
    }
}

/// Evaluates the energy functionals of a mode state.
///
/// The state carries its own frequency; β is the mixing parameter of the
/// modified energy and must lie in (0, 1).
pub fn energy_snapshot(
    state: &SpectralState,
    params: &ModelParams,
    beta: f64,
) -> Result<EnergySnapshot, SpectralError> {
    if !(beta > 0.0 && beta < 1.0) || !beta.is_finite() {
        return Err(SpectralError::InvalidBeta(beta));
    }
    let r = state.r;
    if !r.is_finite() || r < 0.0 {
        return Err(SpectralError::InvalidFrequency(r));
    }
    let rho_r = rho(params, r);
    let u2 = state.u_hat.norm_sqr();
    let v2 = state.v_hat.norm_sqr();
    let cross = (state.v_hat * state.u_hat.conj()).re;
    let r2 = r * r;
    let r2t = params.pow_2theta(r);

    let e0 = 0.5 * v2 + 0.5 * r2 * u2;
    let e = e0 + beta * rho_r * cross + 0.5 * beta * rho_r * r2t * u2;
    let f = r2t * v2 + beta * rho_r * r2 * u2;
    let rr = beta * rho_r * v2;
    Ok(EnergySnapshot { e0, e, f, rr, beta })
}
