use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use maqa_cli::config::{DepthRange, ModeSpec};
use maqa_cli::{
    parse_config, resolve_seed, run_command, CliError, ExperimentConfig, Mode, RunOptions,
};

/// Run aggregation-circuit experiments and write JSON/CSV reports.
///
/// Exit status: 0 on success, 1 on invalid input or I/O failure, 2 when a
/// verification exceeds its tolerance.
#[derive(Parser, Debug)]
#[command(name = "maqa", version)]
struct Args {
    /// aggregate, qslp-train, ensemble, verify-appendix or resources
    #[arg(value_name = "MODE")]
    mode_arg: Option<Mode>,

    /// Same as the positional MODE
    #[arg(long)]
    mode: Option<Mode>,

    /// JSON experiment config
    #[arg(long)]
    config: Option<PathBuf>,

    /// Overrides the config seed; MAQA_SEED is used when neither is set
    #[arg(long)]
    seed: Option<u64>,

    /// Output directory (default: config output_path, else the current directory)
    #[arg(long)]
    out: Option<PathBuf>,

    /// Largest accepted |quantum - classical| difference
    #[arg(long, default_value_t = maqa_cli::DEFAULT_TOLERANCE)]
    tolerance: f64,

    /// Depth range for resources mode, e.g. 1..8 (inclusive)
    #[arg(long = "d", value_name = "RANGE")]
    depth: Option<String>,
}

fn load(args: &Args) -> Result<ExperimentConfig, CliError> {
    let mode = match (args.mode_arg, args.mode) {
        (Some(a), Some(b)) if a != b => {
            return Err(CliError::Usage(format!("conflicting modes {a} and {b}")))
        }
        (a, b) => a.or(b),
    };
    let mut config = match (&args.config, mode) {
        (Some(path), _) => parse_config(path)?,
        (None, Some(m)) => ExperimentConfig::for_mode(m)?,
        (None, None) => return Err(CliError::Usage("give a MODE or --config".into())),
    };
    if let Some(m) = mode {
        if m != config.mode {
            return Err(CliError::Usage(format!(
                "mode {m} requested but the config is for {}",
                config.mode
            )));
        }
    }
    if let Some(d) = &args.depth {
        match &mut config.spec {
            ModeSpec::Resources(s) => {
                s.d = DepthRange::Text(d.clone());
                maqa_cli::config::resources_plan(s)?;
            }
            _ => return Err(CliError::Usage("--d only applies to resources mode".into())),
        }
    }
    Ok(config)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = load(&args).and_then(|config| {
        let env = std::env::var("MAQA_SEED").ok();
        let seed = resolve_seed(args.seed, config.seed, env.as_deref())?;
        let out = args
            .out
            .clone()
            .or_else(|| config.output_path.clone())
            .unwrap_or_else(|| PathBuf::from("."));
        let mut opts = RunOptions::new(seed, out);
        opts.tolerance = args.tolerance;
        run_command(&config, &opts)
    });
    match result {
        Ok(outcome) => {
            println!("{}", outcome.summary);
            for f in &outcome.files {
                println!("wrote {}", f.display());
            }
            if !outcome.passed {
                eprintln!("tolerance exceeded");
            }
            ExitCode::from(outcome.exit_code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
