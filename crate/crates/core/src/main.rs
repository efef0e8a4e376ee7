use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mindeg::cli::{self, CliError, Outcome, OutputOptions, EXIT_PARSE};

/// Minimal degrees of morphisms to CM elliptic curves, via Rosati lattices.
#[derive(Debug, Parser)]
#[command(name = "mindeg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Emit an indented text report instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Decimal digits for log-space bounds.
    #[arg(long, global = true, default_value_t = mindeg::bounds::DEFAULT_DIGITS, value_name = "DIGITS",
          value_parser = clap::value_parser!(u32).range(1..=10_000))]
    precision: u32,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lattice invariants, the minimal degree and, with curve data, certification.
    Analyze { file: PathBuf },
    /// The explicit bounds for an instance with curve data.
    Bound { file: PathBuf },
    /// Run the property battery on a file or on seeded random instances.
    Verify {
        #[arg(required_unless_present = "random", conflicts_with = "random")]
        file: Option<PathBuf>,
        /// SEED COUNT
        #[arg(long, num_args = 2, value_names = ["SEED", "COUNT"])]
        random: Option<Vec<u64>>,
    },
    /// Cross-check enumeration against exhaustive search (n ≤ 8).
    Oracle {
        file: PathBuf,
        /// Box radius for the exhaustive search.
        #[arg(long = "box", value_name = "B")]
        box_bound: Option<u64>,
    },
}

fn read_input(path: &Path) -> Result<String, CliError> {
    let mut text = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| CliError::new(EXIT_PARSE, "io_error", format!("{}: {e}", path.display())))?;
    Ok(text)
}

fn run(cli: &Cli, opts: &OutputOptions) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Analyze { file } => cli::analyze(&read_input(file)?, opts),
        Command::Bound { file } => cli::bound(&read_input(file)?, opts),
        Command::Verify { file: Some(file), .. } => cli::verify_file(&read_input(file)?, opts),
        Command::Verify { random: Some(args), .. } => {
            let count = usize::try_from(args[1]).map_err(|_| CliError::parse("COUNT is too large"))?;
            cli::verify_random(args[0], count, opts)
        }
        Command::Verify { .. } => Err(CliError::parse("give a file or --random SEED COUNT")),
        Command::Oracle { file, box_bound } => cli::oracle(&read_input(file)?, *box_bound),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_PARSE as u8 } else { 0 });
        }
    };
    let opts = OutputOptions { pretty: cli.output.pretty, digits: cli.output.precision };
    match run(&cli, &opts) {
        Ok(outcome) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(outcome.render(&opts).as_bytes());
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.code as u8)
        }
    }
}
