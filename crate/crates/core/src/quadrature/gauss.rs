//! Gauss–Legendre nodes and weights on [−1, 1].
//!
//! Nodes are the roots of the Legendre polynomial P_p, found by Newton
//! iteration from the Chebyshev-angle initial guesses; weights follow from
//! w_i = 2 / ((1 − x_i²) P_p′(x_i)²). Rules are exact for polynomials of
//! degree ≤ 2p − 1.

use std::f64::consts::PI;

/// Legendre P_p and its derivative at x, by the three-term recurrence.
fn legendre_with_derivative(p: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if p == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=p {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = p as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Computes the p-point rule; nodes ascend in (−1, 1).
pub fn gauss_legendre(p: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(p >= 1, "a quadrature rule needs at least one point");
    if p == 1 {
        return (vec![0.0], vec![2.0]);
    }
    let mut nodes = vec![0.0; p];
    let mut weights = vec![0.0; p];
    for i in 0..p.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (p as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (v, dv) = legendre_with_derivative(p, x);
            let dx = v / dv;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dv) = legendre_with_derivative(p, x);
        let w = 2.0 / ((1.0 - x * x) * dv * dv);
        nodes[i] = -x;
        weights[i] = w;
        nodes[p - 1 - i] = x;
        weights[p - 1 - i] = w;
    }
    if p % 2 == 1 {
        nodes[p / 2] = 0.0;
        let (_, dv) = legendre_with_derivative(p, 0.0);
        weights[p / 2] = 2.0 / (dv * dv);
    }
    (nodes, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn weights_sum_to_two() {
        for p in 1..=32 {
            let (_, w) = gauss_legendre(p);
            let total: f64 = w.iter().sum();
            assert_relative_eq!(total, 2.0, max_relative = 1e-14);
        }
    }

    #[test]
    fn five_point_rule_matches_known_nodes() {
        let (x, w) = gauss_legendre(5);
        let expected_nodes = [
            -0.906_179_845_938_664,
            -0.538_469_310_105_683,
            0.0,
            0.538_469_310_105_683,
            0.906_179_845_938_664,
        ];
        let expected_weights = [
            0.236_926_885_056_189,
            0.478_628_670_499_366,
            0.568_888_888_888_889,
            0.478_628_670_499_366,
            0.236_926_885_056_189,
        ];
        for i in 0..5 {
            assert_relative_eq!(x[i], expected_nodes[i], epsilon = 1e-14);
            assert_relative_eq!(w[i], expected_weights[i], epsilon = 1e-14);
        }
    }

    #[test]
    fn exact_for_polynomials_up_to_degree_2p_minus_1() {
        for p in [2usize, 3, 6, 12] {
            let (x, w) = gauss_legendre(p);
            for deg in 0..2 * p {
                let quad: f64 = x
                    .iter()
                    .zip(&w)
                    .map(|(&xi, &wi)| wi * xi.powi(deg as i32))
                    .sum();
                let exact = if deg % 2 == 0 {
                    2.0 / (deg as f64 + 1.0)
                } else {
                    0.0
                };
                assert!(
                    (quad - exact).abs() < 1e-13,
                    "p = {p}, degree {deg}: {quad} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn nodes_ascend_and_pair_symmetrically() {
        let (x, w) = gauss_legendre(12);
        for i in 1..12 {
            assert!(x[i] > x[i - 1]);
        }
        for i in 0..6 {
            assert_relative_eq!(x[i], -x[11 - i], epsilon = 1e-15);
            assert_relative_eq!(w[i], w[11 - i], epsilon = 1e-15);
        }
    }
}
