//! Command-line front end for `bitchrom`: GA runs on OneMax, capacity
//! tables, packed-vs-naive benchmarks and schema formula evaluation.
//!
//! Exit codes: 0 on success, 1 on runtime failure or a differential
//! divergence, 2 on usage or configuration errors.

pub mod analyze;
pub mod args;
pub mod bench;
pub mod error;
pub mod output;
pub mod run;
pub mod tables;

use clap::Parser;

use args::{Cli, Command};
pub use error::{CliError, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};

/// Rendered report plus whether the command found a failure worth a
/// non-zero exit (a differential divergence).
pub struct Outcome {
    pub rendered: String,
    pub failed: bool,
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let ok = |rendered| Outcome { rendered, failed: false };
    match &cli.command {
        Command::Run(a) => {
            let out = run::execute(a)?;
            run::render(&out, a.output.format).map(ok)
        }
        Command::Tables(a) => {
            let rows = tables::build_tables(a.capacity)?;
            tables::render(&rows, a.capacity, a.output.format).map(ok)
        }
        Command::Bench(a) => {
            let seed = match a.seed {
                Some(s) => s,
                None => run::resolve_config(&args::RunParams::default(), None)?.seed,
            };
            let report = bench::build_bench(a, seed)?;
            Ok(Outcome { rendered: bench::render(&report, a.output.format)?, failed: !report.all_equivalent() })
        }
        Command::Analyze(a) => {
            let report = analyze::build_analysis(a)?;
            analyze::render(&report, a.output.format).map(ok)
        }
    }
}

fn output_args(cli: &Cli) -> &args::OutputArgs {
    match &cli.command {
        Command::Run(a) => &a.output,
        Command::Tables(a) => &a.output,
        Command::Bench(a) => &a.output,
        Command::Analyze(a) => &a.output,
    }
}

/// Parses `argv`, runs the command, writes its report and returns the
/// process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = execute(&cli).and_then(|outcome| {
        output::emit(output_args(&cli), &outcome.rendered)?;
        Ok(outcome.failed)
    });
    match result {
        Ok(false) => EXIT_OK,
        Ok(true) => {
            eprintln!("error: differential check found a divergence");
            EXIT_FAILURE
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
