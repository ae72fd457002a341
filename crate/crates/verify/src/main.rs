use std::process::ExitCode;

use clap::Parser;
use twistor_verify::{run, BackendArg, Format, RunConfig, SuiteArg, USAGE_ERROR};

/// Machine-checks the case analysis showing that no hypersurface of the
/// nearly Kähler CP3 or F12 satisfies Aφ = φA.
#[derive(Debug, Parser)]
#[command(name = "verify", version)]
struct Cli {
    /// Which suite to run.
    #[arg(value_enum)]
    suite: SuiteArg,

    #[arg(long, value_enum, default_value = "both")]
    backend: BackendArg,

    /// Seed for the float sweeps.
    #[arg(long, env = "VERIFY_SEED", default_value_t = 0)]
    seed: u64,

    /// Samples per float sweep.
    #[arg(long, default_value_t = 10_000)]
    trials: usize,

    /// Tolerance for float comparisons.
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,

    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = RunConfig {
        suite: cli.suite,
        backend: cli.backend,
        seed: cli.seed,
        trials: cli.trials,
        tolerance: cli.tolerance,
        format: cli.format,
    };
    if let Err(e) = cfg.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(USAGE_ERROR as u8);
    }
    match run(&cfg, &mut std::io::stdout().lock()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
