use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use sdwave::checks::{profile_curve, run_all, summary_csv, RunContext};
use sdwave::config::{
    validate_quad_tolerance, ExperimentConfig, CHECK_DESCRIPTIONS, CHECK_REGISTRY,
};
use sdwave::csvout;

#[derive(Parser)]
#[command(name = "sdwave", version, about = "Spectral-laboratory experiment runner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the configured checks and write CSV reports plus summary.csv.
    Run {
        /// Path to the experiment config (TOML).
        config: PathBuf,
        /// Override the config's output directory.
        #[arg(long)]
        output_dir: Option<PathBuf>,
        /// Run the checks on one thread each.
        #[arg(long)]
        parallel: bool,
        /// Override the config's quadrature tolerance.
        #[arg(long)]
        quad_tolerance: Option<f64>,
    },
    /// Write the solution-vs-profile curve at one time to profile.csv.
    Profile {
        /// Path to the experiment config (TOML).
        config: PathBuf,
        /// Evaluation time.
        #[arg(long)]
        t: f64,
        /// Override the config's output directory.
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
    /// List the registered check names.
    ListChecks,
}

/// Prints a line to stdout, tolerating a closed pipe (e.g. `| head`).
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run {
            config,
            output_dir,
            parallel,
            quad_tolerance,
        } => run(&config, output_dir, parallel, quad_tolerance),
        Command::Profile {
            config,
            t,
            output_dir,
        } => profile(&config, t, output_dir),
        Command::ListChecks => {
            for (name, description) in CHECK_REGISTRY.iter().zip(CHECK_DESCRIPTIONS) {
                emit(&format!("{name:<12} {description}"));
            }
            ExitCode::SUCCESS
        }
    }
}

const CONFIG_ERROR: u8 = 2;
const CHECK_FAILED: u8 = 1;

fn load_config(
    path: &PathBuf,
    output_dir: Option<PathBuf>,
    quad_tolerance: Option<f64>,
) -> Result<ExperimentConfig, ExitCode> {
    let mut config = ExperimentConfig::load(path).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(CONFIG_ERROR)
    })?;
    if let Some(dir) = output_dir {
        config.output_dir = dir;
    }
    if let Some(tolerance) = quad_tolerance {
        if let Err(e) = validate_quad_tolerance(tolerance) {
            eprintln!("error: {e}");
            return Err(ExitCode::from(CONFIG_ERROR));
        }
        config.quadrature.tolerance = tolerance;
    }
    Ok(config)
}

fn run(
    config_path: &PathBuf,
    output_dir: Option<PathBuf>,
    parallel: bool,
    quad_tolerance: Option<f64>,
) -> ExitCode {
    let config = match load_config(config_path, output_dir, quad_tolerance) {
        Ok(config) => config,
        Err(code) => return code,
    };
    let ctx = match RunContext::new(&config) {
        Ok(ctx) => ctx,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(CONFIG_ERROR);
        }
    };
    if let Err(e) = std::fs::create_dir_all(&config.output_dir) {
        eprintln!(
            "error: cannot create output dir {}: {e}",
            config.output_dir.display()
        );
        return ExitCode::from(CONFIG_ERROR);
    }
    let outputs = match run_all(&config.checks, &ctx, parallel) {
        Ok(outputs) => outputs,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(CONFIG_ERROR);
        }
    };
    for output in &outputs {
        let path = config.output_dir.join(&output.file_name);
        if let Err(e) = csvout::write_atomic(&path, &output.file_content) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(CONFIG_ERROR);
        }
    }
    let summary_path = config.output_dir.join("summary.csv");
    if let Err(e) = csvout::write_atomic(&summary_path, &summary_csv(&outputs)) {
        eprintln!("error: cannot write {}: {e}", summary_path.display());
        return ExitCode::from(CONFIG_ERROR);
    }

    let mut passed = 0usize;
    let mut failed = 0usize;
    for output in &outputs {
        for row in &output.summary_rows {
            emit(&format!("{}: {}", row.check, if row.pass { "pass" } else { "fail" }));
            if row.pass {
                passed += 1;
            } else {
                failed += 1;
            }
        }
        for note in &output.notes {
            emit(note);
        }
    }
    emit(&format!(
        "summary: {passed} passed, {failed} failed -> {}",
        summary_path.display()
    ));
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(CHECK_FAILED)
    }
}

fn profile(config_path: &PathBuf, t: f64, output_dir: Option<PathBuf>) -> ExitCode {
    let config = match load_config(config_path, output_dir, None) {
        Ok(config) => config,
        Err(code) => return code,
    };
    if config.model.theta != 2.0 {
        eprintln!(
            "error: the profile curve needs theta = 2, got {}",
            config.model.theta
        );
        return ExitCode::from(CONFIG_ERROR);
    }
    if !t.is_finite() || t < 0.0 {
        eprintln!("error: --t must be nonnegative and finite, got {t}");
        return ExitCode::from(CONFIG_ERROR);
    }
    let ctx = match RunContext::new(&config) {
        Ok(ctx) => ctx,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(CONFIG_ERROR);
        }
    };
    let content = match profile_curve(&ctx.params, &ctx.u0, &ctx.u1, ctx.delta0, t) {
        Ok(content) => content,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(CONFIG_ERROR);
        }
    };
    if let Err(e) = std::fs::create_dir_all(&config.output_dir) {
        eprintln!(
            "error: cannot create output dir {}: {e}",
            config.output_dir.display()
        );
        return ExitCode::from(CONFIG_ERROR);
    }
    let path = config.output_dir.join("profile.csv");
    if let Err(e) = csvout::write_atomic(&path, &content) {
        eprintln!("error: cannot write {}: {e}", path.display());
        return ExitCode::from(CONFIG_ERROR);
    }
    emit(&format!("wrote {}", path.display()));
    ExitCode::SUCCESS
}
