//! Spectral laboratory for the structurally damped wave equation
//!
//!   u_tt − Δu + (−Δ)^θ u_t = 0,   θ > 1,
//!
//! studied frequency-by-frequency. On the Fourier side every radial frequency
//! r = |ξ| evolves by the scalar ODE û_tt + r^{2θ} û_t + r² û = 0, which this
//! crate solves exactly through the characteristic roots. On top of that sit
//! the θ = 2 diffusion-wave profile with its remainder envelopes, weighted
//! energy functionals with constructive decay constants, radial quadrature
//! for whole-space norms, an initial-data library, and a verification harness
//! that measures decay rates and inequality margins on log-time grids.

pub mod data;
pub mod harness;
pub mod quadrature;
pub mod special;
pub mod spectral;

pub use data::{lemma32_constants, make_gaussian, make_spectral, DataError, DeclaredNorms, InitialDatum, Lemma32Constants};
pub use quadrature::{integrate_radial, l2_distance_sq, sphere_measure, Quadrature, QuadratureError, QuadraturePlan, RadialIntegrand, Segment};
pub use spectral::{
    characteristic_roots, energy_snapshot, evolve_exact, oscillatory_band_end, profile_error,
    profile_hat, remainder_terms, remainder_terms_at, rho, EnergyConstants, EnergySnapshot,
    ModelParams, ProfileParams, Regime, RemainderTerms, RootPair, SpectralError, SpectralState,
};

/// Complex scalar used throughout the spectral side.
pub type Complex = num_complex::Complex64;
