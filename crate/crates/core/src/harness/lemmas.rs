//! Pointwise energy inequalities swept over frequencies, states, and times.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::data::{lemma32_constants, InitialDatum};
use crate::spectral::{
    characteristic_roots, energy_snapshot, evolve_exact, rho, EnergyConstants, ModelParams,
    SpectralState,
};
use crate::Complex;

use super::{HarnessError, InequalityReport, ViolationTracker};

fn require_positive_grid(grid: &[f64], what: &str) -> Result<(), HarnessError> {
    if grid.is_empty() {
        return Err(HarnessError::HypothesisViolated(format!("{what} grid is empty")));
    }
    for &x in grid {
        if !(x > 0.0) || !x.is_finite() {
            return Err(HarnessError::HypothesisViolated(format!(
                "{what} grid must be positive and finite, got {x}"
            )));
        }
    }
    Ok(())
}

/// Sweeps the pointwise energy inequalities over random mode states.
///
/// Produces one report per estimate, in order: the production bound
/// rr ≤ β f, the two state-independent frequency-function bounds against m1,
/// the drift bound ρ e ≤ m2 f, and both sides of the sandwich
/// (1−β) e0 ≤ e ≤ (1+2β) e0. States are complex pairs drawn uniformly from
/// the unit square, reproducible through the seed.
pub fn check_pointwise_lemmas(
    params: &ModelParams,
    beta: f64,
    r_grid: &[f64],
    n_states: usize,
    seed: u64,
) -> Result<Vec<InequalityReport>, HarnessError> {
    let consts = EnergyConstants::new(beta)?;
    require_positive_grid(r_grid, "frequency")?;
    if n_states == 0 {
        return Err(HarnessError::HypothesisViolated(
            "need at least one random state".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = move || {
        let re = rng.random_range(-1.0..1.0);
        let im = rng.random_range(-1.0..1.0);
        Complex::new(re, im)
    };
    let states: Vec<(Complex, Complex)> = (0..n_states).map(|_| (draw(), draw())).collect();

    let theta = params.theta();
    let mut production = ViolationTracker::new();
    let mut frequency_fns = ViolationTracker::new();
    let mut drift = ViolationTracker::new();
    let mut sandwich_lower = ViolationTracker::new();
    let mut sandwich_upper = ViolationTracker::new();
    for &r in r_grid {
        let rho_r = rho(params, r);
        let f1 = (rho_r + beta * rho_r * rho_r / r) / (2.0 * params.pow_2theta(r));
        let f2 = 0.5 / beta + rho_r / (2.0 * r) + 0.5 * rho_r * r.powf(2.0 * theta - 2.0);
        frequency_fns.record(0.0, r, f1, consts.m1);
        frequency_fns.record(0.0, r, f2, consts.m1);
        for &(u, v) in &states {
            let state = SpectralState::new(u, v, r, 0.0);
            let snap = energy_snapshot(&state, params, beta)?;
            production.record(0.0, r, snap.rr, beta * snap.f);
            drift.record(0.0, r, rho_r * snap.e, consts.m2 * snap.f);
            sandwich_lower.record(0.0, r, consts.equivalence_lower * snap.e0, snap.e);
            sandwich_upper.record(0.0, r, snap.e, consts.equivalence_upper * snap.e0);
        }
    }
    let state_grid = format!(
        "r in [{:.3e}, {:.3e}] x {}, {} states (seed {seed}), beta = {beta}",
        r_grid[0],
        r_grid[r_grid.len() - 1],
        r_grid.len(),
        n_states
    );
    let freq_grid = format!(
        "r in [{:.3e}, {:.3e}] x {}, state-independent, beta = {beta}",
        r_grid[0],
        r_grid[r_grid.len() - 1],
        r_grid.len()
    );
    Ok(vec![
        production.finish("lemma21", state_grid.clone()),
        frequency_fns.finish("lemma22", freq_grid),
        drift.finish("lemma23", state_grid.clone()),
        sandwich_lower.finish("ineq212", state_grid.clone()),
        sandwich_upper.finish("ineq215", state_grid),
    ])
}

/// Checks the constructive decay envelope e0(t) ≤ C e^{−αρ(r)t} e0(0) along
/// the exact flow of a data pair.
pub fn check_lemma24(
    params: &ModelParams,
    beta: f64,
    u0: &InitialDatum,
    u1: &InitialDatum,
    r_grid: &[f64],
    t_grid: &[f64],
) -> Result<InequalityReport, HarnessError> {
    let consts = EnergyConstants::new(beta)?;
    require_positive_grid(r_grid, "frequency")?;
    if t_grid.is_empty() {
        return Err(HarnessError::HypothesisViolated("time grid is empty".into()));
    }
    for &t in t_grid {
        if !(t >= 0.0) || !t.is_finite() {
            return Err(HarnessError::HypothesisViolated(format!(
                "time grid must be nonnegative and finite, got {t}"
            )));
        }
    }
    let mut tracker = ViolationTracker::new();
    for &r in r_grid {
        let roots = characteristic_roots(params, r)?;
        let a0 = Complex::new(u0.u_hat(r), 0.0);
        let a1 = Complex::new(u1.u_hat(r), 0.0);
        let start = SpectralState::new(a0, a1, r, 0.0);
        let e0_start = energy_snapshot(&start, params, beta)?.e0;
        if e0_start == 0.0 {
            continue;
        }
        let rho_r = rho(params, r);
        for &t in t_grid {
            let state = evolve_exact(&roots, a0, a1, t);
            let snap = energy_snapshot(&state, params, beta)?;
            tracker.record(t, r, snap.e0, consts.decay_bound(rho_r, t) * e0_start);
        }
    }
    let grid = format!(
        "r in [{:.3e}, {:.3e}] x {}, t in [{:.3e}, {:.3e}] x {}, beta = {beta}, data ({}, {})",
        r_grid[0],
        r_grid[r_grid.len() - 1],
        r_grid.len(),
        t_grid[0],
        t_grid[t_grid.len() - 1],
        t_grid.len(),
        u0.label,
        u1.label
    );
    Ok(tracker.finish("lemma24", grid))
}

/// Sweeps the Fourier continuity bound |û(r) − P| ≤ L r ‖u‖_{1,1} for both
/// data over a positive frequency grid. Zero data are skipped since the bound
/// is vacuous for them.
pub fn check_lemma32(
    u0: &InitialDatum,
    u1: &InitialDatum,
    r_grid: &[f64],
) -> Result<InequalityReport, HarnessError> {
    require_positive_grid(r_grid, "frequency")?;
    let l = lemma32_constants().l;
    let mut tracker = ViolationTracker::new();
    for datum in [u0, u1] {
        if datum.is_zero() {
            continue;
        }
        for &r in r_grid {
            let lhs = (datum.u_hat(r) - datum.mass).abs();
            tracker.record(0.0, r, lhs, l * r * datum.norm_l11);
        }
    }
    let grid = format!(
        "r in [{:.3e}, {:.3e}] x {}, data ({}, {})",
        r_grid[0],
        r_grid[r_grid.len() - 1],
        r_grid.len(),
        u0.label,
        u1.label
    );
    Ok(tracker.finish("lemma32", grid))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::make_gaussian;
    use crate::harness::{log_grid, Verdict};

    #[test]
    fn pointwise_bundle_passes_for_theta_two() {
        let params = ModelParams::new(2.0, 3).unwrap();
        let r_grid = log_grid(1e-2, 10.0, 10);
        let reports = check_pointwise_lemmas(&params, 0.1, &r_grid, 50, 11).unwrap();
        assert_eq!(reports.len(), 5);
        let names: Vec<&str> = reports.iter().map(|r| r.check.as_str()).collect();
        assert_eq!(names, ["lemma21", "lemma22", "lemma23", "ineq212", "ineq215"]);
        for report in &reports {
            assert_eq!(report.verdict, Verdict::Pass, "{} violated: {report:?}", report.check);
            assert!(report.max_violation <= 0.0);
        }
        // The state sweeps touch every (r, state) pair.
        assert_eq!(reports[0].samples, r_grid.len() * 50);
        assert_eq!(reports[1].samples, r_grid.len() * 2);
    }

    #[test]
    fn fractional_theta_is_covered_too() {
        let params = ModelParams::new(1.4, 2).unwrap();
        let r_grid = log_grid(1e-3, 40.0, 8);
        for report in check_pointwise_lemmas(&params, 0.35, &r_grid, 25, 3).unwrap() {
            assert_eq!(report.verdict, Verdict::Pass, "{} violated: {report:?}", report.check);
        }
    }

    #[test]
    fn decay_envelope_holds_along_the_flow() {
        let params = ModelParams::new(2.0, 3).unwrap();
        let u0 = make_gaussian(0.7, 0.5, 3).unwrap();
        let u1 = make_gaussian(-1.1, 1.0, 3).unwrap();
        let r_grid = log_grid(1e-2, 10.0, 8);
        let mut t_grid = log_grid(1e-2, 100.0, 8);
        t_grid.insert(0, 0.0);
        let report = check_lemma24(&params, 0.1, &u0, &u1, &r_grid, &t_grid).unwrap();
        assert_eq!(report.verdict, Verdict::Pass, "{report:?}");
    }

    #[test]
    fn fourier_continuity_holds_out_to_large_frequencies() {
        let u0 = make_gaussian(0.7, 0.5, 3).unwrap();
        let u1 = make_gaussian(-1.1, 1.0, 3).unwrap();
        let r_grid = log_grid(1e-3, 100.0, 10);
        let report = check_lemma32(&u0, &u1, &r_grid).unwrap();
        assert_eq!(report.verdict, Verdict::Pass, "{report:?}");
        assert_eq!(report.samples, 2 * r_grid.len());

        // Zero data are skipped, leaving an empty but passing sweep.
        let zero = InitialDatum::zero(3);
        let empty = check_lemma32(&zero, &zero, &r_grid).unwrap();
        assert_eq!(empty.verdict, Verdict::Pass);
        assert_eq!(empty.samples, 0);
    }

    #[test]
    fn rejects_degenerate_grids() {
        let params = ModelParams::new(2.0, 3).unwrap();
        assert!(matches!(
            check_pointwise_lemmas(&params, 0.1, &[], 10, 0),
            Err(HarnessError::HypothesisViolated(_))
        ));
        assert!(matches!(
            check_pointwise_lemmas(&params, 0.1, &[0.0, 1.0], 10, 0),
            Err(HarnessError::HypothesisViolated(_))
        ));
        let zero = InitialDatum::zero(3);
        assert!(matches!(
            check_lemma24(&params, 0.1, &zero, &zero, &[1.0], &[-1.0]),
            Err(HarnessError::HypothesisViolated(_))
        ));
    }
}
