use std::process::ExitCode;

use clap::Parser;
use ludersgap_cli::{emit, run, thread_limit, Cli};

/// Exit status when a reproduction deviates beyond tolerance.
const DEVIATION_EXIT: u8 = 2;

fn configure_threads() -> anyhow::Result<()> {
    let limit = thread_limit()?;
    #[cfg(feature = "parallel")]
    if let Some(n) = limit {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()?;
    }
    #[cfg(not(feature = "parallel"))]
    let _ = limit;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads()
        .and_then(|_| cli.into_spec())
        .and_then(|spec| run(&spec).and_then(|report| emit(&report, &spec).map(|_| report)));
    match result {
        Ok(report) if report.passed() => ExitCode::SUCCESS,
        Ok(report) => {
            for f in &report.failures {
                eprintln!("deviation: {f}");
            }
            ExitCode::from(DEVIATION_EXIT)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
