//! Maps registry names to harness runs, CSV bodies, and summary rows.

use sdwave_core::harness::{
    check_formula_217_222, check_high_freq_sup, check_lemma24, check_lemma31, check_lemma32,
    check_lemma41, check_lemma42, check_pointwise_lemmas, optimality_suite, run_theorem_decay,
    two_sided_l2, DecayReport, HarnessError, InequalityReport, QuadSettings, ScalingFormula,
    Theorem, Verdict,
};
use sdwave_core::{
    characteristic_roots, evolve_exact, profile_error, profile_hat, remainder_terms_at, Complex,
    EnergyConstants, InitialDatum, ModelParams, ProfileParams,
};

use crate::config::{ConfigError, ExperimentConfig};
use crate::csvout::{fmt_float, push_row, MaybeFloat};

/// Seed for the random mode states of the pointwise sweeps; fixed so runs
/// stay byte-for-byte reproducible.
const POINTWISE_SEED: u64 = 7;

/// Upper end of the frequency band the profile curve extends into beyond
/// delta0, kept inside the oscillatory band 0 < r < 4^{1/6}.
const PROFILE_BAND_END: f64 = 1.2;

/// Everything a check needs beyond its own name.
pub struct RunContext {
    pub params: ModelParams,
    pub u0: InitialDatum,
    pub u1: InitialDatum,
    pub beta: f64,
    pub ell: f64,
    pub delta0: f64,
    pub times: Vec<f64>,
    pub settings: QuadSettings,
}

impl RunContext {
    pub fn new(config: &ExperimentConfig) -> Result<Self, ConfigError> {
        Ok(RunContext {
            params: config.model_params()?,
            u0: config.datum0.build(config.model.n)?,
            u1: config.datum1.build(config.model.n)?,
            beta: config.beta,
            ell: config.ell,
            delta0: config.delta0,
            times: config.times(),
            settings: config.quad_settings(),
        })
    }
}

/// One line of summary.csv. Inequality checks carry no fit, so their numeric
/// fields stay empty.
#[derive(Debug)]
pub struct SummaryRow {
    pub check: String,
    pub predicted: Option<f64>,
    pub fitted: Option<f64>,
    pub stderr: Option<f64>,
    pub ratio_spread: Option<f64>,
    pub pass: bool,
}

impl SummaryRow {
    fn decay(report: &DecayReport) -> Self {
        SummaryRow {
            check: report.check.clone(),
            predicted: Some(report.predicted_slope),
            fitted: Some(report.fitted_slope),
            stderr: Some(report.slope_stderr),
            ratio_spread: Some(report.ratio_spread),
            pass: report.verdict == Verdict::Pass,
        }
    }

    fn inequality(report: &InequalityReport) -> Self {
        SummaryRow {
            check: report.check.clone(),
            predicted: None,
            fitted: None,
            stderr: None,
            ratio_spread: None,
            pass: report.verdict == Verdict::Pass,
        }
    }
}

/// The artifacts of one executed check.
#[derive(Debug)]
pub struct CheckOutput {
    pub file_name: String,
    pub file_content: String,
    pub summary_rows: Vec<SummaryRow>,
    pub notes: Vec<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum CheckError {
    #[error("check {check}: hypothesis violated: {message}")]
    Hypothesis { check: String, message: String },
    #[error("check {check} failed to run: {message}")]
    Execution { check: String, message: String },
}

fn lift(check: &str, err: HarnessError) -> CheckError {
    match err {
        HarnessError::HypothesisViolated(message) => CheckError::Hypothesis {
            check: check.to_string(),
            message,
        },
        other => CheckError::Execution {
            check: check.to_string(),
            message: other.to_string(),
        },
    }
}

/// Geometric grid with both endpoints included.
fn log_points(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let last = (count - 1) as f64;
    (0..count)
        .map(|i| lo * (hi / lo).powf(i as f64 / last))
        .collect()
}

/// Uniform grid with both endpoints included.
fn linear_points(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let last = (count - 1) as f64;
    (0..count)
        .map(|i| lo + (hi - lo) * i as f64 / last)
        .collect()
}

/// Runs the named checks, in order, optionally one thread per check. The
/// output order always follows the input order, so parallel runs produce the
/// same artifacts as sequential ones.
pub fn run_all(
    names: &[String],
    ctx: &RunContext,
    parallel: bool,
) -> Result<Vec<CheckOutput>, CheckError> {
    if parallel {
        std::thread::scope(|scope| {
            let handles: Vec<_> = names
                .iter()
                .map(|name| scope.spawn(move || run_check(name, ctx)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("check worker panicked"))
                .collect()
        })
    } else {
        names.iter().map(|name| run_check(name, ctx)).collect()
    }
}

pub fn run_check(name: &str, ctx: &RunContext) -> Result<CheckOutput, CheckError> {
    match name {
        "lemma21" | "lemma22" | "lemma23" => pointwise_bundle(name, ctx),
        "lemma24" => lemma24(ctx),
        "lemma31" => {
            let report = check_lemma31(
                &ctx.params, &ctx.u0, &ctx.u1, ctx.delta0, &ctx.times, &ctx.settings,
            )
            .map_err(|e| lift(name, e))?;
            Ok(decay_output(name, &report))
        }
        "lemma32" => lemma32(ctx),
        "formula217" | "formula222" => scaling_formula(name, ctx),
        "highfreqsup" => highfreqsup(ctx),
        "thm11" | "thm12" | "thm13" => theorem_decay(name, ctx),
        "lemma41" | "lemma42" => moment_suite(name, ctx),
        "thm43" | "thm44" | "thm45" => two_sided(name, ctx),
        other => Err(CheckError::Execution {
            check: other.to_string(),
            message: "not a registered check".into(),
        }),
    }
}

fn decay_csv(report: &DecayReport) -> String {
    let mut out = String::from("t,value,normalized\n");
    for s in &report.samples {
        push_row(
            &mut out,
            &[&fmt_float(s.t), &fmt_float(s.value), &fmt_float(s.normalized)],
        );
    }
    out
}

fn decay_output(name: &str, report: &DecayReport) -> CheckOutput {
    CheckOutput {
        file_name: format!("{name}.csv"),
        file_content: decay_csv(report),
        summary_rows: vec![SummaryRow::decay(report)],
        notes: vec![],
    }
}

fn inequality_csv(reports: &[&InequalityReport]) -> String {
    let mut out = String::from("check,grid,samples,max_violation,worst_t,worst_r,verdict\n");
    for r in reports {
        push_row(
            &mut out,
            &[
                &r.check,
                &r.grid,
                &r.samples.to_string(),
                &fmt_float(r.max_violation),
                &fmt_float(r.worst_t),
                &fmt_float(r.worst_r),
                verdict_word(r.verdict),
            ],
        );
    }
    out
}

fn verdict_word(v: Verdict) -> &'static str {
    if v == Verdict::Pass {
        "pass"
    } else {
        "fail"
    }
}

fn inequality_output(name: &str, reports: &[&InequalityReport]) -> CheckOutput {
    CheckOutput {
        file_name: format!("{name}.csv"),
        file_content: inequality_csv(reports),
        summary_rows: reports.iter().map(|r| SummaryRow::inequality(r)).collect(),
        notes: vec![],
    }
}

fn pointwise_bundle(name: &str, ctx: &RunContext) -> Result<CheckOutput, CheckError> {
    let r_grid = log_points(1e-2, 10.0, 60);
    let reports = check_pointwise_lemmas(&ctx.params, ctx.beta, &r_grid, 200, POINTWISE_SEED)
        .map_err(|e| lift(name, e))?;
    // Order from the harness: lemma21, lemma22, lemma23, ineq212, ineq215.
    // The sandwich rows ride along with lemma21, which proves them.
    let selected: Vec<&InequalityReport> = match name {
        "lemma21" => vec![&reports[0], &reports[3], &reports[4]],
        "lemma22" => vec![&reports[1]],
        _ => vec![&reports[2]],
    };
    Ok(inequality_output(name, &selected))
}

fn lemma24(ctx: &RunContext) -> Result<CheckOutput, CheckError> {
    let r_grid = log_points(1e-2, 10.0, 50);
    let t_grid = linear_points(0.0, 100.0, 50);
    let report = check_lemma24(&ctx.params, ctx.beta, &ctx.u0, &ctx.u1, &r_grid, &t_grid)
        .map_err(|e| lift("lemma24", e))?;
    Ok(inequality_output("lemma24", &[&report]))
}

fn lemma32(ctx: &RunContext) -> Result<CheckOutput, CheckError> {
    let r_grid = log_points(1e-4, 100.0, 80);
    let report = check_lemma32(&ctx.u0, &ctx.u1, &r_grid).map_err(|e| lift("lemma32", e))?;
    Ok(inequality_output("lemma32", &[&report]))
}

fn scaling_formula(name: &str, ctx: &RunContext) -> Result<CheckOutput, CheckError> {
    let n = ctx.params.dim() as usize;
    let (kind, ks) = match name {
        "formula217" => (ScalingFormula::LowFrequencySmooth, vec![0usize, 2]),
        _ => (
            ScalingFormula::LowFrequencySingular,
            match n {
                1 => vec![0],
                2 => vec![0, 1],
                _ => vec![0, 2],
            },
        ),
    };
    let mut content = String::from("k,t,value,normalized\n");
    let mut rows = Vec::new();
    for &k in &ks {
        let report = check_formula_217_222(kind, ctx.params.theta(), 1.0, k, n, &ctx.times)
            .map_err(|e| lift(name, e))?;
        for s in &report.samples {
            push_row(
                &mut content,
                &[
                    &k.to_string(),
                    &fmt_float(s.t),
                    &fmt_float(s.value),
                    &fmt_float(s.normalized),
                ],
            );
        }
        rows.push(SummaryRow::decay(&report));
    }
    Ok(CheckOutput {
        file_name: format!("{name}.csv"),
        file_content: content,
        summary_rows: rows,
        notes: vec![],
    })
}

fn highfreqsup(ctx: &RunContext) -> Result<CheckOutput, CheckError> {
    let alpha = EnergyConstants::new(ctx.beta)
        .map_err(|e| lift("highfreqsup", HarnessError::from(e)))?
        .alpha;
    let report = check_high_freq_sup(ctx.params.theta(), ctx.ell, alpha, &ctx.times)
        .map_err(|e| lift("highfreqsup", e))?;
    Ok(decay_output("highfreqsup", &report))
}

fn theorem_decay(name: &str, ctx: &RunContext) -> Result<CheckOutput, CheckError> {
    let which = match name {
        "thm11" => Theorem::EnergyDecay,
        "thm12" => Theorem::SolutionDecay,
        _ => Theorem::ProfileConvergence,
    };
    let report = run_theorem_decay(
        which, &ctx.params, &ctx.u0, &ctx.u1, ctx.ell, &ctx.times, &ctx.settings,
    )
    .map_err(|e| lift(name, e))?;
    Ok(decay_output(name, &report))
}

fn moment_suite(name: &str, ctx: &RunContext) -> Result<CheckOutput, CheckError> {
    let n = ctx.params.dim() as usize;
    let identities = match name {
        "lemma41" => check_lemma41(n, &ctx.times),
        _ => check_lemma42(n, &ctx.times),
    }
    .map_err(|e| lift(name, e))?;
    let suite = optimality_suite(n, &ctx.times).map_err(|e| lift(name, e))?;
    let (sin_report, cos_report) = (&suite[0], &suite[1]);
    let mut content = String::from("t,jsin,jsin_normalized,jcos,jcos_normalized\n");
    for (a, b) in sin_report.samples.iter().zip(&cos_report.samples) {
        push_row(
            &mut content,
            &[
                &fmt_float(a.t),
                &fmt_float(a.value),
                &fmt_float(a.normalized),
                &fmt_float(b.value),
                &fmt_float(b.normalized),
            ],
        );
    }
    Ok(CheckOutput {
        file_name: format!("{name}.csv"),
        file_content: content,
        summary_rows: vec![
            SummaryRow::inequality(&identities),
            SummaryRow::decay(sin_report),
            SummaryRow::decay(cos_report),
        ],
        notes: vec![],
    })
}

fn two_sided(name: &str, ctx: &RunContext) -> Result<CheckOutput, CheckError> {
    let n = ctx.params.dim();
    let (wanted, matches) = match name {
        "thm43" => ("n >= 3", n >= 3),
        "thm44" => ("n = 2", n == 2),
        _ => ("n = 1", n == 1),
    };
    if !matches {
        return Err(CheckError::Hypothesis {
            check: name.to_string(),
            message: format!("{name} requires {wanted}, got n = {n}"),
        });
    }
    let two = two_sided_l2(
        &ctx.params, &ctx.u0, &ctx.u1, ctx.ell, &ctx.times, &ctx.settings,
    )
    .map_err(|e| lift(name, e))?;
    debug_assert_eq!(two.report.check, name);
    let mut output = decay_output(name, &two.report);
    output.notes.push(format!(
        "{name}: c1 = {:.6e}, c2 = {:.6e}, i0 = {:.6e}",
        two.c1, two.c2, two.i0
    ));
    Ok(output)
}

/// Builds summary.csv from the outputs, preserving check order.
pub fn summary_csv(outputs: &[CheckOutput]) -> String {
    let mut out = String::from("check,predicted,fitted,stderr,ratio_spread,verdict\n");
    for output in outputs {
        for row in &output.summary_rows {
            push_row(
                &mut out,
                &[
                    &row.check,
                    &MaybeFloat(row.predicted).to_string(),
                    &MaybeFloat(row.fitted).to_string(),
                    &MaybeFloat(row.stderr).to_string(),
                    &MaybeFloat(row.ratio_spread).to_string(),
                    if row.pass { "pass" } else { "fail" },
                ],
            );
        }
    }
    out
}

/// Emits the profile-vs-solution curve at time t: about 120 points on
/// (0, delta0] and 40 more reaching into the band up to r = 1.2.
pub fn profile_curve(
    params: &ModelParams,
    u0: &InitialDatum,
    u1: &InitialDatum,
    delta0: f64,
    t: f64,
) -> Result<String, CheckError> {
    let spectral = |e: sdwave_core::SpectralError| lift("profile", HarnessError::from(e));
    let profile = ProfileParams::new(u0.mass, u1.mass);
    let mut grid = log_points(1e-4, delta0, 120);
    if delta0 < PROFILE_BAND_END {
        grid.extend(log_points(delta0, PROFILE_BAND_END, 41).into_iter().skip(1));
    }
    let mut out = String::from("r,u_re,profile,abs_error,envelope\n");
    for &r in &grid {
        let roots = characteristic_roots(params, r).map_err(spectral)?;
        let a0 = Complex::new(u0.u_hat(r), 0.0);
        let a1 = Complex::new(u1.u_hat(r), 0.0);
        let state = evolve_exact(&roots, a0, a1, t);
        let profile_val = profile_hat(t, r, &profile);
        let envelope = remainder_terms_at(t, r, a0, a1, &profile)
            .map_err(spectral)?
            .residual_bound(&profile);
        push_row(
            &mut out,
            &[
                &fmt_float(r),
                &fmt_float(state.u_hat.re),
                &fmt_float(profile_val),
                &fmt_float(profile_error(&state, &profile)),
                &fmt_float(envelope),
            ],
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use sdwave_core::harness::log_grid;
    use sdwave_core::make_gaussian;

    fn test_ctx() -> RunContext {
        RunContext {
            params: ModelParams::new(2.0, 3).unwrap(),
            u0: InitialDatum::zero(3),
            u1: make_gaussian(1.0, 0.5, 3).unwrap(),
            beta: 0.1,
            ell: 2.0,
            delta0: 0.5,
            times: log_grid(1e2, 1e3, 8),
            settings: QuadSettings::default(),
        }
    }

    #[test]
    fn grids_hit_their_endpoints() {
        let grid = log_points(1e-2, 10.0, 60);
        assert_eq!(grid.len(), 60);
        assert!((grid[0] - 1e-2).abs() < 1e-17);
        assert!((grid[59] - 10.0).abs() < 1e-13);
        let lin = linear_points(0.0, 100.0, 50);
        assert_eq!((lin[0], lin[49]), (0.0, 100.0));
        assert!(lin.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn pointwise_bundle_selects_its_rows() {
        let ctx = test_ctx();
        let output = run_check("lemma21", &ctx).unwrap();
        let names: Vec<&str> = output.summary_rows.iter().map(|r| r.check.as_str()).collect();
        assert_eq!(names, ["lemma21", "ineq212", "ineq215"]);
        assert!(output.file_content.starts_with("check,grid,samples,"));
        assert_eq!(output.file_name, "lemma21.csv");

        let output = run_check("lemma22", &ctx).unwrap();
        assert_eq!(output.summary_rows.len(), 1);
        assert!(output.summary_rows[0].pass);
    }

    #[test]
    fn mismatched_two_sided_names_the_hypothesis() {
        let ctx = test_ctx();
        let err = run_check("thm45", &ctx).unwrap_err();
        let message = err.to_string();
        assert!(message.contains("thm45 requires n = 1"), "{message}");
    }

    #[test]
    fn summary_rows_for_inequalities_leave_numbers_empty() {
        let ctx = test_ctx();
        let output = run_check("lemma32", &ctx).unwrap();
        let summary = summary_csv(&[output]);
        let mut lines = summary.lines();
        assert_eq!(lines.next(), Some("check,predicted,fitted,stderr,ratio_spread,verdict"));
        assert_eq!(lines.next(), Some("lemma32,,,,,pass"));
    }

    #[test]
    fn profile_curve_has_the_advertised_shape() {
        let ctx = test_ctx();
        let content = profile_curve(&ctx.params, &ctx.u0, &ctx.u1, ctx.delta0, 10.0).unwrap();
        let lines: Vec<&str> = content.lines().collect();
        assert_eq!(lines[0], "r,u_re,profile,abs_error,envelope");
        assert_eq!(lines.len(), 1 + 120 + 40);
        // The grid stays inside the oscillatory band and ascends.
        let first: f64 = lines[1].split(',').next().unwrap().parse().unwrap();
        let last: f64 = lines[160].split(',').next().unwrap().parse().unwrap();
        assert!((first - 1e-4).abs() < 1e-18);
        assert!((last - 1.2).abs() < 1e-12);
    }

    #[test]
    fn unknown_names_are_execution_errors() {
        let ctx = test_ctx();
        assert!(matches!(
            run_check("lemma99", &ctx),
            Err(CheckError::Execution { .. })
        ));
    }
}
