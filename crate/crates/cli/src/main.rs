mod cache;
mod report;
mod suites;
mod tables;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use drinfeld::coeff::CoeffText;
use drinfeld::hecke::Partition;
use drinfeld::{Rational, SymCoef};

use report::Recorder;

/// Exit statuses: 0 all checks pass, 1 a check failed, 2 usage error, 3 cache or resource error.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Resource(String),
}

impl From<drinfeld::Error> for CliError {
    fn from(e: drinfeld::Error) -> Self {
        use drinfeld::Error as E;
        match e {
            E::Parse(_) | E::Precondition(_) | E::AlphabetMismatch(_) => CliError::Usage(e.to_string()),
            _ => CliError::Resource(e.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Associator,
    Grt,
    Gt,
    Braid,
    Hecke,
    Kz,
    All,
}

#[derive(Parser)]
#[command(name = "drinfeld", version, about = "Exact checks for Drinfeld associators, GT/GRT actions and braid group representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Output {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and report one line per check.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Truncation degree of the associator series.
        #[arg(long, visible_alias = "order", default_value_t = 5, value_parser = clap::value_parser!(u8).range(2..=5))]
        degree: u8,
        /// Record wall-clock durations (reports are then no longer reproducible byte for byte).
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Tableau monomials of a Hecke representation evaluated on g = iota(exp Psi_{a,b}).
    Chars {
        /// Partition as comma-separated column lengths, e.g. 3,2.
        #[arg(long)]
        partition: String,
        /// The two parameters of g; symbol names or rationals.
        #[arg(long, default_value = "a,b")]
        g: String,
        #[arg(long, visible_alias = "degree", default_value_t = 5, value_parser = clap::value_parser!(u8).range(3..=5))]
        order: u8,
        #[command(flatten)]
        output: Output,
    },
    /// Which partitions of size at most n have pairwise distinct tableau monomials.
    Resonance {
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u8).range(1..=10))]
        n: u8,
        #[command(flatten)]
        output: Output,
    },
    /// Extend an associator degree by degree by solving the linearized equations.
    Extend {
        /// Starting series (text form, optional lambda tag); defaults to 1 through degree 1.
        #[arg(long)]
        from: Option<PathBuf>,
        #[arg(long)]
        lambda: Option<String>,
        /// Target degree.
        #[arg(long, visible_alias = "order", default_value_t = 4, value_parser = clap::value_parser!(u8).range(2..=6))]
        degree: u8,
        /// Select the even solution in odd degrees.
        #[arg(long)]
        even: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Coefficient tables of the KZ Gamma-function expansions in hbar.
    KzReport {
        #[arg(long, visible_alias = "degree", default_value_t = 7, value_parser = clap::value_parser!(u8).range(1..=9))]
        order: u8,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(2..=8))]
        dmax: u8,
        #[command(flatten)]
        output: Output,
    },
    /// Manage the holonomy algebra cache ($DRINFELD_CACHE_DIR, else ./.drinfeld-cache).
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    /// Build (or load) the normal form of U(T_n) and print its graded dimensions.
    Build {
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(2..=6))]
        n: u8,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(0..=8))]
        degree: u8,
    },
    /// List cache files and whether they are usable.
    Inspect,
    /// Remove all cache files.
    Clear,
}

fn write_out(output: &Output, text: &str) -> Result<(), CliError> {
    match &output.out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Resource(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_pair(s: &str) -> Result<(SymCoef, SymCoef), CliError> {
    let (a, b) = s.split_once(',').ok_or_else(|| CliError::Usage(format!("--g expects two values `a,b`, got `{s}`")))?;
    Ok((SymCoef::parse_text(a.trim())?, SymCoef::parse_text(b.trim())?))
}

/// Runs the command; `Ok(false)` means a check failed.
fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Verify { suite, degree, timings, output } => {
            let ctx = suites::Ctx { degree: degree as usize };
            let names: Vec<&str> = match suite {
                Suite::All => suites::SUITES.to_vec(),
                one => vec![suites::SUITES[one as usize]],
            };
            let mut rec = Recorder::new(names[0], timings);
            for name in &names {
                rec.set_prefix(name);
                suites::run(name, &ctx, &mut rec)?;
            }
            let report = rec.finish(if names.len() > 1 { "all" } else { names[0] });
            let text = match output.format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json(),
            };
            write_out(&output, &text)?;
            Ok(report.passed())
        }
        Command::Chars { partition, g, order, output } => {
            let alpha = Partition::parse(&partition)?;
            let (a, b) = parse_pair(&g)?;
            let (text, ok) = tables::chars(&alpha, &a, &b, order as usize, output.format)?;
            write_out(&output, &text)?;
            Ok(ok)
        }
        Command::Resonance { n, output } => {
            let (text, ok) = tables::resonance_scan(n as usize, output.format)?;
            write_out(&output, &text)?;
            Ok(ok)
        }
        Command::Extend { from, lambda, degree, even, output } => {
            let lambda = lambda.map(|s| Rational::parse_text(&s)).transpose()?;
            let text = tables::extend(from.as_deref(), lambda, degree as usize, even, output.format)?;
            write_out(&output, &text)?;
            Ok(true)
        }
        Command::KzReport { order, dmax, output } => {
            let text = tables::kz_report(order as usize, dmax as i64, output.format)?;
            write_out(&output, &text)?;
            Ok(true)
        }
        Command::Cache { action } => {
            let text = match action {
                CacheAction::Build { n, degree } => cache::build(n as usize, degree as usize)?,
                CacheAction::Inspect => cache::inspect()?,
                CacheAction::Clear => cache::clear()?,
            };
            print!("{text}");
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Resource(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
