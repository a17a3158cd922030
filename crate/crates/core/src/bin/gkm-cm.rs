use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use gkm_cm::io::{run_command, Command, OutputFormat, RunOptions};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Cmd {
    Validate,
    Hilbert,
    Series,
    Betti,
    Euler,
    Thom,
    Relations,
    Span,
    ZeroDivisors,
    Verdict,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Machine,
}

/// Exact GKM-model computations for torus actions.
///
/// Exit status: 0 success or consistent, 1 inconsistent or invalid model, 2 input error.
#[derive(Debug, Parser)]
#[command(name = "gkm-cm", version)]
struct Cli {
    #[arg(value_enum)]
    command: Cmd,
    /// Model file, or `corpus/<name>` for a bundled model.
    model: String,
    /// Largest polynomial degree for Hilbert functions and spanning tests.
    #[arg(long, default_value_t = 8)]
    max_degree: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Report relation failures as-is instead of searching over face sign flips.
    #[arg(long)]
    no_sign_retry: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let command = match cli.command {
        Cmd::Validate => Command::Validate,
        Cmd::Hilbert => Command::Hilbert,
        Cmd::Series => Command::Series,
        Cmd::Betti => Command::Betti,
        Cmd::Euler => Command::Euler,
        Cmd::Thom => Command::Thom,
        Cmd::Relations => Command::Relations,
        Cmd::Span => Command::Span,
        Cmd::ZeroDivisors => Command::ZeroDivisors,
        Cmd::Verdict => Command::Verdict,
    };
    let options = RunOptions {
        max_degree: cli.max_degree,
        format: match cli.format {
            Format::Text => OutputFormat::Text,
            Format::Machine => OutputFormat::Machine,
        },
        sign_retry: !cli.no_sign_retry,
    };
    let out = run_command(command, &cli.model, options);
    if out.exit_code == 2 && matches!(options.format, OutputFormat::Text) {
        eprint!("{}", out.rendered);
    } else {
        let _ = std::io::stdout().write_all(out.rendered.as_bytes());
    }
    ExitCode::from(out.exit_code as u8)
}
