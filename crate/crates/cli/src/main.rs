use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graded_ll::graded::{builtin_algebra, AlgebraSpec, BUILTIN_NAMES};
use graded_ll::operator::{parse_operator_with, ParseOptions};
use graded_ll::suites::{self, NumericOptions};
use graded_ll::{ReportDocument, ScalarSum};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "graded-ll", version, about = "Verify the graded symmetry algebras of the Lévy-Leblond equation")]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    #[command(subcommand)]
    Verify(Verify),
    #[command(subcommand)]
    Solve(Solve),
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// Chirality element and gamma construction in Cl(1,d).
    Clifford {
        #[arg(long)]
        d: usize,
    },
    /// Closure and colour Jacobi for a built-in or JSON-specified algebra.
    Algebra(AlgebraArgs),
    /// Free and harmonic relation tables.
    Relations,
    /// Closed-form solutions of the coefficient system.
    Ode,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct AlgebraArgs {
    #[arg(long)]
    name: Option<String>,
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Solve {
    /// Plane-wave eigenstates of the free equation.
    Free {
        #[arg(long, allow_hyphen_values = true)]
        k_wave: String,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
    },
    /// Ladder eigenstates of the harmonic equation.
    Harmonic {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        k: f64,
        /// Also run the finite-difference checks.
        #[arg(long)]
        numeric: bool,
        #[arg(long, default_value_t = 800, requires = "numeric")]
        grid: usize,
        #[arg(long, default_value_t = 12.0, requires = "numeric")]
        domain: f64,
        #[arg(long, default_value_t = 5, requires = "numeric")]
        count: usize,
    },
}

struct UsageError(String);

fn positive(name: &str, v: f64) -> Result<(), UsageError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(UsageError(format!("--{name} must be a positive finite number")))
    }
}

fn load_algebra(args: &AlgebraArgs) -> Result<AlgebraSpec, UsageError> {
    if let Some(name) = &args.name {
        return builtin_algebra(name).map_err(|_| {
            UsageError(format!("unknown algebra `{name}`; expected one of {}", BUILTIN_NAMES.join(", ")))
        });
    }
    let path = args.file.as_ref().expect("clap enforces one of --name/--file");
    let text = std::fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    AlgebraSpec::from_json(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn parse_k_wave(text: &str) -> Result<ScalarSum, UsageError> {
    let opts = ParseOptions {
        strict: true,
        ..ParseOptions::default()
    };
    let op = parse_operator_with(text, &opts).map_err(|e| UsageError(format!("--k-wave: {e}")))?;
    op.as_scalar()
        .ok_or_else(|| UsageError("--k-wave must be a scalar expression".into()))
}

fn run_command(cmd: &Command) -> Result<ReportDocument, UsageError> {
    Ok(match cmd {
        Command::Verify(Verify::Clifford { d }) => {
            if !(1..=15).contains(d) {
                return Err(UsageError("--d must be between 1 and 15".into()));
            }
            suites::verify_clifford(*d)
        }
        Command::Verify(Verify::Algebra(args)) => suites::verify_algebra(&load_algebra(args)?),
        Command::Verify(Verify::Relations) => suites::verify_relations(),
        Command::Verify(Verify::Ode) => suites::verify_ode(),
        Command::Solve(Solve::Free { k_wave, beta }) => {
            positive("beta", *beta)?;
            suites::solve_free(k_wave, &parse_k_wave(k_wave)?, *beta)
        }
        Command::Solve(Solve::Harmonic {
            n,
            beta,
            k,
            numeric,
            grid,
            domain,
            count,
        }) => {
            positive("beta", *beta)?;
            positive("k", *k)?;
            if *n > 20 {
                return Err(UsageError("--n must be at most 20".into()));
            }
            let opts = if *numeric {
                positive("domain", *domain)?;
                if !(16..=20_000).contains(grid) {
                    return Err(UsageError("--grid must be between 16 and 20000".into()));
                }
                if *count > 8 {
                    return Err(UsageError("--count must be at most 8".into()));
                }
                Some(NumericOptions {
                    grid: *grid,
                    domain: *domain,
                    count: *count,
                })
            } else {
                None
            };
            suites::solve_harmonic(*n, *beta, *k, opts)
        }
    })
}

fn write_atomically(path: &Path, body: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(body.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let report = match run_command(&cli.command) {
        Ok(r) => r,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let body = match cli.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = write_atomically(path, &body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_FAIL);
            }
        }
        None => print!("{body}"),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}
