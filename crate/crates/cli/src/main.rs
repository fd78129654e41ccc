use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use hochschild::exactalg::Field;
use hochschild_cli::{
    parse, parse_field, run_check, run_formula, run_oracle, run_poset, CliError, RunOptions, RunReport,
};

/// Dimension of the first Hochschild cohomology of quiver algebras and
/// incidence algebras.
///
/// Exit status: 0 success or agreement, 1 mismatch, 2 input error,
/// 3 unsupported input.
#[derive(Parser)]
#[command(name = "h1calc", version)]
struct Cli {
    command: Command,

    /// Input documents; `-` reads standard input.
    #[arg(required = true)]
    files: Vec<PathBuf>,

    /// `q` for the rationals or `fp:<p>` for a prime field.
    #[arg(long, default_value = "q", value_parser = parse_field)]
    field: Field,

    /// Print reports as JSON.
    #[arg(long)]
    json: bool,

    /// Largest algebra dimension for the oracle.
    #[arg(long)]
    max_dim: Option<usize>,

    /// Largest algebra dimension for the degree-2 bar complex.
    #[arg(long)]
    max_dim_h2: Option<usize>,

    /// Include per-component values in formula reports.
    #[arg(long)]
    per_component: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Command {
    /// Evaluate the applicable closed formula.
    Formula,
    /// Compute by exact linear algebra.
    Oracle,
    /// Compare formula and oracle.
    Check,
    /// Compare incidence-algebra and order-complex cohomology of a poset.
    Poset,
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }
}

fn run_one(command: Command, path: &Path, opts: &RunOptions) -> Result<RunReport, CliError> {
    let doc = parse(&read_input(path)?)?;
    match command {
        Command::Formula => run_formula(&doc, opts),
        Command::Oracle => run_oracle(&doc, opts),
        Command::Check => run_check(&doc, opts),
        Command::Poset => run_poset(&doc, opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = RunOptions {
        field: cli.field,
        max_dim: cli.max_dim,
        max_dim_h2: cli.max_dim_h2,
        per_component: cli.per_component,
    };
    let mut stdout = std::io::stdout().lock();
    let mut status = 0;
    for path in &cli.files {
        let code = match run_one(cli.command, path, &opts) {
            Ok(report) => {
                let text = if cli.json {
                    report.to_json() + "\n"
                } else {
                    report.to_human()
                };
                // a closed pipe means nobody reads further reports
                if stdout.write_all(text.as_bytes()).is_err() {
                    return ExitCode::from(status.max(report.exit_code()) as u8);
                }
                report.exit_code()
            }
            Err(e) => {
                eprintln!("{}: {e}", path.display());
                e.exit_code()
            }
        };
        status = status.max(code);
    }
    ExitCode::from(status as u8)
}
