//! Small special-function kernel: the gamma function, stable sinc/sinch
//! evaluation, and a golden-section maximizer for one-hump envelopes.

use num_complex::Complex64;

/// Auxiliary variable of the Lanczos approximation.
const GAMMA_R: f64 = 10.900511;

/// Polynomial coefficients for the Lanczos approximation of `gamma`.
const GAMMA_DK: [f64; 11] = [
    2.48574089138753565546e-5,
    1.05142378581721974210,
    -3.45687097222016235469,
    4.51227709466894823700,
    -2.98285225323576655721,
    1.05639711577126713077,
    -1.95428773191645869583e-1,
    1.70970543404441224307e-2,
    -5.71926117404305781283e-4,
    4.63399473359905636708e-6,
    -2.71994908488607703910e-9,
];

const TWO_SQRT_E_OVER_PI: f64 = 1.8603827342052657173362492472666631120594218414085755;

/// Gamma function for positive real arguments (Lanczos approximation,
/// relative accuracy around 1e-13 on the range used here).
///
/// Half-integer arguments are dispatched to an exact recursion so that
/// sphere measures and Gaussian moments carry no approximation error.
#[must_use]
pub fn gamma(x: f64) -> f64 {
    assert!(x > 0.0, "gamma: argument must be positive, got {x}");
    let twice = 2.0 * x;
    if twice == twice.round() && x < 30.0 {
        return gamma_half_integer(twice.round() as u32);
    }
    if x < 0.5 {
        let s = GAMMA_DK
            .iter()
            .enumerate()
            .skip(1)
            .fold(GAMMA_DK[0], |s, (i, d)| s + d / (i as f64 - x));
        std::f64::consts::PI
            / ((std::f64::consts::PI * x).sin()
                * s
                * TWO_SQRT_E_OVER_PI
                * ((0.5 - x + GAMMA_R) / std::f64::consts::E).powf(0.5 - x))
    } else {
        let s = GAMMA_DK
            .iter()
            .enumerate()
            .skip(1)
            .fold(GAMMA_DK[0], |s, (i, d)| s + d / (x + i as f64 - 1.0));
        s * TWO_SQRT_E_OVER_PI * ((x - 0.5 + GAMMA_R) / std::f64::consts::E).powf(x - 0.5)
    }
}

/// Exact Γ(m/2) for positive integer m via Γ(1/2) = √π and the recursion
/// Γ(x+1) = xΓ(x).
#[must_use]
pub fn gamma_half_integer(m: u32) -> f64 {
    assert!(m > 0, "gamma_half_integer: argument must be positive");
    let mut value = if m % 2 == 0 { 1.0 } else { std::f64::consts::PI.sqrt() };
    let mut k = if m % 2 == 0 { 2 } else { 1 };
    while k + 2 <= m {
        value *= k as f64 / 2.0;
        k += 2;
    }
    value
}

/// sin(x)/x with a series branch near zero.
#[must_use]
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// sinh(z)/z for complex z with a series branch near zero.
///
/// For purely imaginary z = iy this reduces to sin(y)/y with an exactly zero
/// imaginary part, which keeps real data real through the oscillatory regime.
#[must_use]
pub fn sinch(z: Complex64) -> Complex64 {
    if z.norm_sqr() < 1e-8 {
        let z2 = z * z;
        Complex64::new(1.0, 0.0) + z2 / 6.0 + z2 * z2 / 120.0
    } else {
        z.sinh() / z
    }
}

/// Golden-section search for the maximum of a unimodal function on [a, b].
///
/// Returns (argmax, max). The bracket is shrunk until its width drops below
/// `tol`, so the argmax is accurate to about `tol` and the value to O(tol²).
pub fn golden_max(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> (f64, f64) {
    assert!(b > a && tol > 0.0);
    let inv_phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (a, b);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}
