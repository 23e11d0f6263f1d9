//! Exact evolution of one Fourier mode from its characteristic roots.

use super::{RootPair, SpectralState};
use crate::special::sinch;
use crate::Complex;

/// Real part of d·t beyond which the matrix-exponential form would feed
/// cosh a large argument; past it the two pure exponentials are both tiny
/// and free of cancellation, so we switch to them.
const SPLIT_EXPONENT: f64 = 40.0;

/// Evolve the mode (û, û_t) = (u0_hat, u1_hat) at time 0 to time t ≥ 0.
///
/// Uses the uniformly valid matrix exponential
///
///   e^{Mt} = e^{μt} [cosh(dt) I + t sinch(dt) (M − μI)],
///
/// with μ = (σ1+σ2)/2 and d = (σ1−σ2)/2, which needs no case split
/// between oscillatory, confluent and moderately overdamped frequencies:
/// sinch handles d → 0 by series. Far in the overdamped range
/// (Re(d)·t large) the cosh form would overflow, and there the evolution
/// is re-expressed through e^{σ1 t} and e^{σ2 t} directly.
///
/// For real data at an oscillatory frequency every intermediate stays
/// exactly real in its imaginary part, so whole-axis integrands can rely
/// on û being real without a cleanup pass.
pub fn evolve_exact(roots: &RootPair, u0_hat: Complex, u1_hat: Complex, t: f64) -> SpectralState {
    assert!(t.is_finite() && t >= 0.0, "time must be finite and nonnegative, got {t}");
    assert!(
        u0_hat.is_finite() && u1_hat.is_finite(),
        "initial mode data must be finite"
    );

    let mu = 0.5 * (roots.sigma1 + roots.sigma2);
    let d = 0.5 * (roots.sigma1 - roots.sigma2);

    if d.re * t > SPLIT_EXPONENT {
        let den = roots.sigma1 - roots.sigma2;
        let c1 = (u1_hat - roots.sigma2 * u0_hat) / den;
        let c2 = (roots.sigma1 * u0_hat - u1_hat) / den;
        let e1 = (roots.sigma1 * t).exp();
        let e2 = (roots.sigma2 * t).exp();
        return SpectralState {
            u_hat: c1 * e1 + c2 * e2,
            v_hat: c1 * roots.sigma1 * e1 + c2 * roots.sigma2 * e2,
            r: roots.r,
            t,
        };
    }

    let dt = d * t;
    let ch = dt.cosh();
    let ts = sinch(dt) * t;
    let emu = (mu * t).exp();
    let r2 = roots.r * roots.r;

    SpectralState {
        u_hat: emu * (ch * u0_hat + ts * (u1_hat - mu * u0_hat)),
        v_hat: emu * (ch * u1_hat + ts * (mu * u1_hat - r2 * u0_hat)),
        r: roots.r,
        t,
    }
}
