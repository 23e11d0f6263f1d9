//! Characteristic roots of λ² + r^{2θ} λ + r² = 0 and the key weight ρ.

use super::{ModelParams, SpectralError, CONFLUENCE_BAND};
use crate::Complex;

/// Which side of the discriminant sign change a frequency falls on.
///
/// `Critical` is a tag for the thin band |r^{4θ−2} − 4| < 1e−6 around the
/// double root; the stored roots are still the true discriminant roots so
/// that product and sum invariants hold exactly across the band.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Oscillatory,
    Critical,
    Overdamped,
}

/// The two characteristic roots at one frequency.
///
/// `sigma1` is the slow root (largest real part; for oscillatory
/// frequencies the +iω branch), `sigma2` the fast one. They satisfy
/// σ1 + σ2 = −r^{2θ} and σ1·σ2 = r².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootPair {
    pub sigma1: Complex,
    pub sigma2: Complex,
    pub regime: Regime,
    pub r: f64,
}

/// Compute the characteristic roots at frequency r ≥ 0.
///
/// Oscillatory frequencies get exactly conjugate roots with real part
/// −r^{2θ}/2. Overdamped frequencies compute the fast root directly and
/// recover the slow one from the product σ1σ2 = r², which avoids the
/// cancellation in −r^{2θ} + √(r^{4θ} − 4r²) at large r.
pub fn characteristic_roots(params: &ModelParams, r: f64) -> Result<RootPair, SpectralError> {
    if !r.is_finite() || r < 0.0 {
        return Err(SpectralError::InvalidFrequency(r));
    }
    let r2 = r * r;
    let r2t = params.pow_2theta(r);
    // r^{4θ} − 4r², and its r²-normalized version r^{4θ−2} − 4 for the
    // regime decision (well defined down to r = 0 where the mode is rigid).
    let disc = r2t * r2t - 4.0 * r2;
    let gap = params.pow_4theta_minus_2(r) - 4.0;

    // r = 0 is the rigid double root; the gap criterion would misfile it
    // as oscillatory (0 < 4) even though the discriminant vanishes.
    let regime = if r == 0.0 || gap.abs() < CONFLUENCE_BAND {
        Regime::Critical
    } else if gap < 0.0 {
        Regime::Oscillatory
    } else {
        Regime::Overdamped
    };

    let (sigma1, sigma2) = if disc < 0.0 {
        let omega = 0.5 * (-disc).sqrt();
        let re = -0.5 * r2t;
        (Complex::new(re, omega), Complex::new(re, -omega))
    } else {
        let fast = -0.5 * (r2t + disc.sqrt());
        let slow = if fast == 0.0 { 0.0 } else { r2 / fast };
        (Complex::new(slow, 0.0), Complex::new(fast, 0.0))
    };

    Ok(RootPair {
        sigma1,
        sigma2,
        regime,
        r,
    })
}

/// The key weight ρ(r) = r^{2θ} / (1 + r^{4θ−2}).
///
/// It behaves like r^{2θ} for small r and like r^{2−2θ} for large r, and
/// ρ(r)·t is the decay clock of every mode: E₀(t) ≲ e^{−αρ(r)t} E₀(0).
pub fn rho(params: &ModelParams, r: f64) -> f64 {
    let r2t = params.pow_2theta(r);
    r2t / (1.0 + params.pow_4theta_minus_2(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn theta2() -> ModelParams {
        ModelParams::new(2.0, 3).unwrap()
    }

    #[test]
    fn oscillatory_roots_at_unit_frequency() {
        // θ = 2, r = 1: λ² + λ + 1 = 0, roots (−1 ± i√3)/2.
        let pair = characteristic_roots(&theta2(), 1.0).unwrap();
        assert_eq!(pair.regime, Regime::Oscillatory);
        assert_relative_eq!(pair.sigma1.re, -0.5, max_relative = 1e-15);
        assert_relative_eq!(pair.sigma1.im, 3f64.sqrt() / 2.0, max_relative = 1e-15);
        assert_eq!(pair.sigma2, pair.sigma1.conj());
    }

    #[test]
    fn critical_band_is_tagged_but_roots_stay_true() {
        // θ = 2 double root at r = 4^{1/6} = 2^{1/3}.
        let rc = 2f64.cbrt();
        let pair = characteristic_roots(&theta2(), rc).unwrap();
        assert_eq!(pair.regime, Regime::Critical);
        // Both roots sit within float noise of −r^{2θ}/2 = −2^{4/3}/2 = −2^{1/3}.
        let expected = -(2f64.powf(4.0 / 3.0)) / 2.0;
        assert_relative_eq!(expected, -1.2599210498948732, max_relative = 1e-15);
        assert_relative_eq!(pair.sigma1.re, expected, max_relative = 1e-7);
        assert_relative_eq!(pair.sigma2.re, expected, max_relative = 1e-7);
        // Vieta still exact: the tag does not degrade the invariants.
        let prod = pair.sigma1 * pair.sigma2;
        assert_relative_eq!(prod.re, rc * rc, max_relative = 1e-12);
    }

    #[test]
    fn overdamped_roots_avoid_cancellation() {
        let pair = characteristic_roots(&theta2(), 10.0).unwrap();
        assert_eq!(pair.regime, Regime::Overdamped);
        // Slow root ≈ −r²/r^{2θ} = −1/r² up to O(r^{−6}) corrections.
        assert_relative_eq!(pair.sigma1.re, -0.01000001000002, max_relative = 1e-12);
        assert!(pair.sigma2.re < -9999.0);
        let sum = pair.sigma1 + pair.sigma2;
        assert_relative_eq!(sum.re, -1e4, max_relative = 1e-14);
    }

    #[test]
    fn vieta_invariants_across_the_axis() {
        let params = ModelParams::new(1.4, 2).unwrap();
        for &r in &[1e-3, 0.1, 0.5, 0.9, 1.0, 1.1, 1.5, 2.0, 5.0, 40.0, 1e3] {
            let pair = characteristic_roots(&params, r).unwrap();
            let sum = pair.sigma1 + pair.sigma2;
            let prod = pair.sigma1 * pair.sigma2;
            let r2t = r.powf(2.0 * 1.4);
            assert_relative_eq!(sum.re, -r2t, max_relative = 1e-12);
            assert!(sum.im.abs() <= 1e-12 * r2t.abs());
            assert_relative_eq!(prod.re, r * r, max_relative = 1e-12);
            assert!(prod.im.abs() <= 1e-12 * r * r);
        }
    }

    #[test]
    fn zero_frequency_is_a_rigid_mode() {
        let pair = characteristic_roots(&theta2(), 0.0).unwrap();
        assert_eq!(pair.sigma1, Complex::new(0.0, 0.0));
        assert_eq!(pair.sigma2, Complex::new(0.0, 0.0));
        assert_eq!(pair.regime, Regime::Critical);
    }

    #[test]
    fn negative_frequency_is_rejected() {
        assert!(characteristic_roots(&theta2(), -1.0).is_err());
        assert!(characteristic_roots(&theta2(), f64::NAN).is_err());
    }

    #[test]
    fn rho_values() {
        let params = theta2();
        assert_relative_eq!(rho(&params, 1.0), 0.5, max_relative = 1e-15);
        assert_relative_eq!(rho(&params, 10.0), 0.00999999000000999999, max_relative = 1e-14);
        assert_eq!(rho(&params, 0.0), 0.0);
    }
}
