use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use toader::bounds::SHARP;
use toader::harness::{
    build_table, eval_single, exit, format_number, parse_args, parse_grid, run_verification,
    significant, write_csv, Suite, TableSpec, Target,
};
use toader::Error;

#[derive(Parser, Debug)]
#[command(name = "toader", version, about = "Toader mean bounds and elliptic integral checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate E(r) and the eight elementary bounds.
    Table {
        /// Grid as start:stop:step.
        #[arg(long, default_value = "0.1:0.9:0.1")]
        grid: String,
        /// Fixed number of decimals (default: shortest round-trip).
        #[arg(long)]
        digits: Option<usize>,
        /// Write CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one verification suite and print a JSON report.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate one mean, bound or integral.
    Eval {
        #[arg(long)]
        target: String,
        /// Comma-separated arguments, e.g. 1,0.5.
        #[arg(long, allow_hyphen_values = true)]
        args: String,
        #[arg(long)]
        digits: Option<usize>,
    },
    /// Print the sharp constants to 17 significant digits.
    Constants,
}

enum Failure {
    Usage(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn output(path: Option<&PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: Cli) -> Result<i32, Failure> {
    match cli.command {
        Command::Table { grid, digits, out } => {
            let spec = TableSpec {
                grid: parse_grid(&grid)?,
                precision: digits,
                ..TableSpec::default()
            };
            let rows = build_table(&spec)?;
            let mut w = output(out.as_ref())?;
            write_csv(&mut w, &spec, &rows)?;
            w.flush()?;
            let all_hold = rows.iter().all(|r| r.lower_ok() && r.upper_ok());
            Ok(if all_hold { exit::OK } else { exit::VIOLATION })
        }
        Command::Verify {
            suite,
            samples,
            seed,
            out,
        } => {
            let suite: Suite = suite.parse()?;
            let report = run_verification(suite, samples, seed)?;
            let mut w = output(out.as_ref())?;
            writeln!(w, "{}", report.to_json_line())?;
            w.flush()?;
            Ok(if report.passed() { exit::OK } else { exit::VIOLATION })
        }
        Command::Eval {
            target,
            args,
            digits,
        } => {
            let target: Target = target.parse()?;
            let value = eval_single(target, &parse_args(&args)?)?;
            println!("{}", format_number(value, digits));
            Ok(exit::OK)
        }
        Command::Constants => {
            for (name, v) in [
                ("alpha1", SHARP.alpha1),
                ("beta1", SHARP.beta1),
                ("alpha2", SHARP.alpha2),
                ("beta2", SHARP.beta2),
            ] {
                println!("{name} = {}", significant(v, 17));
            }
            Ok(exit::OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            exit::USAGE
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            exit::USAGE
        }
    };
    ExitCode::from(code as u8)
}
