//! Radial quadrature for whole-space integrals of radial functions.
//!
//! Integrals ∫_{R^n} F(|ξ|) dξ reduce to ω_{n−1} ∫₀^R f(r) r^{n−1} dr with
//! ω_{n−1} the surface measure of the unit sphere. Plans describe a panel
//! decomposition of [0, R]; every panel is integrated with a fixed-order
//! Gauss–Legendre rule. `integrate_radial` runs a refinement ladder (a
//! coarsened probe, the base plan, then panel doublings) until two successive
//! values agree to tolerance, and reports the last correction as the error
//! estimate.
//!
//! Integrands may carry an r^{−k} singularity at the origin with k ≤ n − 1;
//! the first panel is then transformed by u = r^{n−k}, which makes the
//! substituted integrand bounded.

mod gauss;

pub use gauss::gauss_legendre;

use std::f64::consts::PI;

use crate::special::gamma_half_integer;

/// Maximum panel-doubling steps before `integrate_radial` gives up.
const MAX_REFINEMENTS: usize = 10;

#[derive(Debug, thiserror::Error)]
pub enum QuadratureError {
    #[error("integration dimension must be at least 1")]
    InvalidDimension(usize),
    #[error("singularity r^-{singularity} too strong for dimension {dim}; need k <= n - 1")]
    SingularityTooStrong { singularity: usize, dim: usize },
    #[error("invalid quadrature plan: {0}")]
    InvalidPlan(String),
    #[error("tolerances must be finite, nonnegative, and not both zero (rel {rel}, abs {abs})")]
    InvalidTolerance { rel: f64, abs: f64 },
    #[error("integrand produced a non-finite value {0}")]
    NonFinite(f64),
    #[error("quadrature did not converge: value {value:e}, last correction {error:e}")]
    NotConverged { value: f64, error: f64 },
}

/// Surface measure ω_{n−1} = 2π^{n/2}/Γ(n/2) of the unit sphere in R^n.
pub fn sphere_measure(n: usize) -> f64 {
    assert!(n >= 1, "dimension must be at least 1");
    let even_part = PI.powi((n / 2) as i32);
    let pi_half_power = if n % 2 == 1 {
        even_part * PI.sqrt()
    } else {
        even_part
    };
    2.0 * pi_half_power / gamma_half_integer(n as u32)
}

/// A radial integrand f(r) with a declared r^{−k} singularity at the origin.
///
/// The stored closure is f itself, singularity included; the integrator
/// supplies the volume factor r^{n−1} and neutralizes the singularity on the
/// first panel. k = 0 means f is bounded near 0.
pub struct RadialIntegrand<'a> {
    eval: Box<dyn Fn(f64) -> f64 + Send + Sync + 'a>,
    dim: usize,
    singularity: usize,
}

impl<'a> RadialIntegrand<'a> {
    pub fn new(
        eval: impl Fn(f64) -> f64 + Send + Sync + 'a,
        dim: usize,
        singularity: usize,
    ) -> Result<Self, QuadratureError> {
        if dim == 0 {
            return Err(QuadratureError::InvalidDimension(dim));
        }
        if singularity >= dim {
            return Err(QuadratureError::SingularityTooStrong { singularity, dim });
        }
        Ok(RadialIntegrand {
            eval: Box::new(eval),
            dim,
            singularity,
        })
    }

    /// Integrand bounded near the origin.
    pub fn smooth(
        eval: impl Fn(f64) -> f64 + Send + Sync + 'a,
        dim: usize,
    ) -> Result<Self, QuadratureError> {
        Self::new(eval, dim, 0)
    }

    pub fn eval(&self, r: f64) -> f64 {
        (self.eval)(r)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn singularity(&self) -> usize {
        self.singularity
    }
}

/// One uniform run of panels covering [lo, hi].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub lo: f64,
    pub hi: f64,
    pub panels: usize,
}

impl Segment {
    pub fn new(lo: f64, hi: f64, panels: usize) -> Self {
        Segment { lo, hi, panels }
    }

    fn width(&self) -> f64 {
        (self.hi - self.lo) / self.panels as f64
    }
}

/// A panel decomposition of [0, truncation_radius].
///
/// When `oscillation_period` is declared, validation enforces panel widths of
/// at most a quarter period on [0, min(2, R)], so a trigonometric factor of
/// that period is always resolved where the spectrum concentrates. Plans
/// built from hand-placed segments may leave the period undeclared and take
/// responsibility for resolution themselves.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraturePlan {
    pub truncation_radius: f64,
    pub segments: Vec<Segment>,
    pub points_per_panel: usize,
    pub oscillation_period: Option<f64>,
}

impl QuadraturePlan {
    /// Single run of uniform panels for a non-oscillatory integrand.
    pub fn smooth(
        truncation_radius: f64,
        panels: usize,
        points_per_panel: usize,
    ) -> Result<Self, QuadratureError> {
        let plan = QuadraturePlan {
            truncation_radius,
            segments: vec![Segment::new(0.0, truncation_radius, panels)],
            points_per_panel,
            oscillation_period: None,
        };
        plan.validate()?;
        Ok(plan)
    }

    /// Uniform panels no wider than a quarter of the declared period.
    pub fn oscillatory(
        truncation_radius: f64,
        period: f64,
        points_per_panel: usize,
    ) -> Result<Self, QuadratureError> {
        if !(period > 0.0) || !period.is_finite() {
            return Err(QuadratureError::InvalidPlan(format!(
                "oscillation period must be positive and finite, got {period}"
            )));
        }
        let panels = ((4.0 * truncation_radius / period).ceil() as usize).max(16);
        let plan = QuadraturePlan {
            truncation_radius,
            segments: vec![Segment::new(0.0, truncation_radius, panels)],
            points_per_panel,
            oscillation_period: Some(period),
        };
        plan.validate()?;
        Ok(plan)
    }

    /// Hand-placed contiguous segments; the last breakpoint is the
    /// truncation radius.
    pub fn from_segments(
        segments: Vec<Segment>,
        points_per_panel: usize,
        oscillation_period: Option<f64>,
    ) -> Result<Self, QuadratureError> {
        let truncation_radius = segments
            .last()
            .map(|s| s.hi)
            .ok_or_else(|| QuadratureError::InvalidPlan("no segments".into()))?;
        let plan = QuadraturePlan {
            truncation_radius,
            segments,
            points_per_panel,
            oscillation_period,
        };
        plan.validate()?;
        Ok(plan)
    }

    pub fn validate(&self) -> Result<(), QuadratureError> {
        let fail = |msg: String| Err(QuadratureError::InvalidPlan(msg));
        if !(self.truncation_radius > 0.0) || !self.truncation_radius.is_finite() {
            return fail(format!(
                "truncation radius must be positive and finite, got {}",
                self.truncation_radius
            ));
        }
        if !(2..=64).contains(&self.points_per_panel) {
            return fail(format!(
                "points per panel must lie in 2..=64, got {}",
                self.points_per_panel
            ));
        }
        let Some(first) = self.segments.first() else {
            return fail("no segments".into());
        };
        if first.lo != 0.0 {
            return fail(format!("segments must start at 0, got {}", first.lo));
        }
        let mut cursor = 0.0;
        for seg in &self.segments {
            if seg.lo != cursor {
                return fail(format!(
                    "segment starting at {} leaves a gap after {}",
                    seg.lo, cursor
                ));
            }
            if !(seg.hi > seg.lo) || !seg.hi.is_finite() {
                return fail(format!(
                    "segment [{}, {}] must have positive finite width",
                    seg.lo, seg.hi
                ));
            }
            if seg.panels == 0 {
                return fail(format!("segment [{}, {}] has no panels", seg.lo, seg.hi));
            }
            cursor = seg.hi;
        }
        if cursor != self.truncation_radius {
            return fail(format!(
                "segments end at {} but the truncation radius is {}",
                cursor, self.truncation_radius
            ));
        }
        if !self.segments.iter().any(|s| s.panels >= 2) {
            return fail("plan is too coarse for an error estimate; use at least two panels".into());
        }
        if let Some(period) = self.oscillation_period {
            if !(period > 0.0) || !period.is_finite() {
                return fail(format!("declared period must be positive, got {period}"));
            }
            let cap = period / 4.0;
            let osc_end = self.truncation_radius.min(2.0);
            for seg in &self.segments {
                if seg.lo < osc_end && seg.width() > cap * (1.0 + 1e-12) {
                    return fail(format!(
                        "segment [{}, {}] has panel width {} above the quarter-period cap {}",
                        seg.lo,
                        seg.hi,
                        seg.width(),
                        cap
                    ));
                }
            }
        }
        Ok(())
    }

    /// Probe plan with half the panels. Used for the leading error estimate;
    /// it may break the quarter-period cap and is never validated.
    pub fn coarsened(&self) -> QuadraturePlan {
        let mut plan = self.clone();
        for seg in &mut plan.segments {
            seg.panels = (seg.panels / 2).max(1);
        }
        plan
    }

    /// Plan with every panel split in two.
    pub fn refined(&self) -> QuadraturePlan {
        let mut plan = self.clone();
        for seg in &mut plan.segments {
            seg.panels *= 2;
        }
        plan
    }

    /// Panel count across all segments, a proxy for evaluation cost.
    pub fn total_panels(&self) -> usize {
        self.segments.iter().map(|s| s.panels).sum()
    }
}

/// Converged integral value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    /// ω_{n−1} ∫₀^R f(r) r^{n−1} dr.
    pub value: f64,
    /// Absolute difference between the last two refinement levels.
    pub error: f64,
    /// Panel doublings applied beyond the base plan.
    pub refinements: usize,
    /// Total integrand evaluations across all ladder passes.
    pub evaluations: usize,
}

fn evaluate_plan(f: &RadialIntegrand<'_>, plan: &QuadraturePlan) -> (f64, usize) {
    let (nodes, weights) = gauss_legendre(plan.points_per_panel);
    let nm1 = (f.dim - 1) as i32;
    let k = f.singularity;
    let mut total = 0.0;
    let mut evals = 0;
    for seg in &plan.segments {
        let width = seg.width();
        for j in 0..seg.panels {
            let a = seg.lo + width * j as f64;
            let b = if j + 1 == seg.panels {
                seg.hi
            } else {
                seg.lo + width * (j + 1) as f64
            };
            if a == 0.0 && k > 0 {
                // u = r^q with q = n − k turns ∫₀^b f r^{n−1} dr into
                // (1/q) ∫₀^{b^q} f(u^{1/q}) u^{k/q} du with a bounded integrand.
                let q = (f.dim - k) as f64;
                let upper = b.powf(q);
                let mid = 0.5 * upper;
                for (x, w) in nodes.iter().zip(&weights) {
                    let u = mid + mid * x;
                    let r = u.powf(1.0 / q);
                    total += w * mid / q * f.eval(r) * r.powi(k as i32);
                }
            } else {
                let mid = 0.5 * (a + b);
                let half = 0.5 * (b - a);
                for (x, w) in nodes.iter().zip(&weights) {
                    let r = mid + half * x;
                    total += w * half * f.eval(r) * r.powi(nm1);
                }
            }
            evals += plan.points_per_panel;
        }
    }
    (total, evals)
}

/// Integrates ω_{n−1} ∫₀^R f(r) r^{n−1} dr to a relative tolerance.
pub fn integrate_radial(
    f: &RadialIntegrand<'_>,
    plan: &QuadraturePlan,
    tolerance: f64,
) -> Result<Quadrature, QuadratureError> {
    integrate_radial_with(f, plan, tolerance, 0.0)
}

/// Refinement ladder with mixed tolerances: two successive levels must agree
/// to max(rel·|value|, abs). The absolute floor makes near-zero oscillatory
/// integrals convergeable; pass abs = 0 for a purely relative criterion.
pub fn integrate_radial_with(
    f: &RadialIntegrand<'_>,
    plan: &QuadraturePlan,
    rel: f64,
    abs: f64,
) -> Result<Quadrature, QuadratureError> {
    if !(rel >= 0.0) || !(abs >= 0.0) || !rel.is_finite() || !abs.is_finite() || rel + abs == 0.0 {
        return Err(QuadratureError::InvalidTolerance { rel, abs });
    }
    plan.validate()?;
    let measure = sphere_measure(f.dim);

    let (probe, probe_evals) = evaluate_plan(f, &plan.coarsened());
    let mut evaluations = probe_evals;
    let mut previous = probe;
    let mut current_plan = plan.clone();
    let (mut value, evals) = evaluate_plan(f, &current_plan);
    evaluations += evals;

    for refinement in 0..=MAX_REFINEMENTS {
        if !value.is_finite() {
            return Err(QuadratureError::NonFinite(value));
        }
        let diff = (value - previous).abs();
        if diff <= (rel * value.abs()).max(abs) {
            return Ok(Quadrature {
                value: measure * value,
                error: measure * diff,
                refinements: refinement,
                evaluations,
            });
        }
        if refinement == MAX_REFINEMENTS {
            return Err(QuadratureError::NotConverged {
                value: measure * value,
                error: measure * diff,
            });
        }
        previous = value;
        current_plan = current_plan.refined();
        let (next, evals) = evaluate_plan(f, &current_plan);
        evaluations += evals;
        value = next;
    }
    unreachable!("refinement loop always returns");
}

/// Squared L² distance on the radial side: ω_{n−1} ∫₀^R (a − b)² r^{n−1} dr.
pub fn l2_distance_sq<'a>(
    a: impl Fn(f64) -> f64 + Send + Sync + 'a,
    b: impl Fn(f64) -> f64 + Send + Sync + 'a,
    dim: usize,
    plan: &QuadraturePlan,
    tolerance: f64,
) -> Result<Quadrature, QuadratureError> {
    let f = RadialIntegrand::smooth(
        move |r| {
            let d = a(r) - b(r);
            d * d
        },
        dim,
    )?;
    integrate_radial(&f, plan, tolerance)
}
