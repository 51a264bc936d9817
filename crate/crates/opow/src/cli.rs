//! Argument parsing and command dispatch for the `opow` executable.

use std::ffi::OsString;
use std::io::Write;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use opow_core::coefficients::{stirling1_unsigned_triangle, stirling2_triangle, CTable};
use opow_core::special_u::{a_table_by_recurrence, specialize, URule};
use opow_core::{expand, ExactRational, Report, Suite};
use thiserror::Error;

use crate::render;

/// Environment variable capping every `k`, `k_max` and `n_max`.
pub const MAX_K_VAR: &str = "OPOW_MAX_K";
pub const DEFAULT_MAX_K: u32 = 40;

/// `ctable` sizes above this print a growth warning: the table grows like
/// the partition function.
pub const CTABLE_WARN_ABOVE: u32 = 12;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Latex,
    Json,
    Csv,
}

/// Choice of `u` for `expand`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UChoice {
    Generic,
    Rule { name: String, rule: URule },
}

impl FromStr for UChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let rule = match s {
            "generic" => return Ok(UChoice::Generic),
            "z" => URule::IdentityZ,
            "exp" => URule::ExpZ,
            "inv-z" => URule::InverseZ,
            _ => {
                let Some(list) = s.strip_prefix("poly:") else {
                    return Err(format!(
                        "expected generic, z, exp, inv-z or poly:<c0,c1,...>, got '{s}'"
                    ));
                };
                let coeffs = list
                    .split(',')
                    .map(|c| {
                        c.trim()
                            .parse::<ExactRational>()
                            .map_err(|e| format!("bad coefficient '{c}': {e}"))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                URule::polynomial(coeffs).map_err(|e| e.to_string())?
            }
        };
        Ok(UChoice::Rule {
            name: s.to_string(),
            rule,
        })
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "opow",
    version,
    about = "Normal-ordered powers of u(z)·d/dz and their combinatorial numbers",
    after_help = "Every k is capped by OPOW_MAX_K (default 40)."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Render A^k in normal order, generically or for a concrete u
    Expand {
        #[arg(long)]
        k: u32,
        /// generic | z | exp | inv-z | poly:<c0,c1,...>
        #[arg(long, default_value = "generic")]
        u: UChoice,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Dump C^{s,m,k}_alpha for 2 <= k <= k_max (size grows like the partition function)
    Ctable {
        #[arg(long, default_value_t = 8)]
        k_max: u32,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// Dump a_k^s of the u = 1/z expansion for 1 <= s <= k <= k_max
    Atable {
        #[arg(long, default_value_t = 15)]
        k_max: u32,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// Dump a Stirling triangle (kind 1: unsigned first kind, kind 2: second kind)
    Stirling {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        kind: u8,
        #[arg(long, default_value_t = 10)]
        n_max: u32,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// Run verification suites; exit 1 on any failure
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 8)]
        k_max: u32,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Debug, Error)]
pub enum UsageError {
    #[error("{what} = {value} exceeds {MAX_K_VAR} = {cap}")]
    OverCap { what: &'static str, value: u32, cap: u32 },
    #[error("{what} must be at least {min}, got {value}")]
    TooSmall { what: &'static str, value: u32, min: u32 },
    #[error("format {format:?} is not available for {command} (use {allowed})")]
    Format {
        format: OutputFormat,
        command: &'static str,
        allowed: &'static str,
    },
    #[error("{MAX_K_VAR} must be a non-negative integer, got '{0}'")]
    BadCap(String),
}

/// Reads `OPOW_MAX_K`, defaulting to 40.
pub fn cap_from_env() -> Result<u32, UsageError> {
    match std::env::var(MAX_K_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| UsageError::BadCap(v)),
        Err(_) => Ok(DEFAULT_MAX_K),
    }
}

fn bounded(what: &'static str, value: u32, min: u32, cap: u32) -> Result<u32, UsageError> {
    if value < min {
        return Err(UsageError::TooSmall { what, value, min });
    }
    if value > cap {
        return Err(UsageError::OverCap { what, value, cap });
    }
    Ok(value)
}

fn require_format(
    format: OutputFormat,
    command: &'static str,
    allowed: &'static [OutputFormat],
    hint: &'static str,
) -> Result<(), UsageError> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(UsageError::Format {
            format,
            command,
            allowed: hint,
        })
    }
}

const TABLE_FORMATS: &[OutputFormat] = &[OutputFormat::Csv, OutputFormat::Json];

/// Output of one command: stdout text, stderr text and exit code.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Runs the verification suites concurrently and reports them in fixed order.
pub fn run_verify(suite: Suite, k_max: u32, seed: u64) -> (Vec<Report>, String) {
    let suites = suite.expand();
    let reports: Vec<Report> = std::thread::scope(|scope| {
        let handles: Vec<_> = suites
            .iter()
            .map(|s| scope.spawn(move || s.run(k_max, seed)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verification suite panicked"))
            .collect()
    });
    let mut text = String::new();
    for r in &reports {
        text.push_str(&r.to_string());
    }
    let checks: u64 = reports.iter().map(|r| r.checks).sum();
    let failures: usize = reports.iter().map(|r| r.failures.len()).sum();
    let passed = failures == 0;
    text.push_str(&format!(
        "verify {suite} k_max={k_max} seed={seed}: {} suites, {checks} checks, {failures} failures: {}\n",
        reports.len(),
        if passed { "PASS" } else { "FAIL" }
    ));
    (reports, text)
}

/// Executes a parsed command under the given cap.
pub fn execute(command: Command, cap: u32) -> Result<Outcome, UsageError> {
    let mut out = Outcome::default();
    match command {
        Command::Expand { k, u, format } => {
            let k = bounded("k", k, 1, cap)?;
            require_format(
                format,
                "expand",
                &[OutputFormat::Text, OutputFormat::Latex, OutputFormat::Json],
                "text, latex or json",
            )?;
            let exp = expand(k).expect("k >= 1 checked");
            out.stdout = match (&u, format) {
                (UChoice::Generic, OutputFormat::Text) => render::generic_text(&exp),
                (UChoice::Generic, OutputFormat::Latex) => render::generic_latex(&exp),
                (UChoice::Generic, _) => render::to_json_string(&render::generic_json(&exp)),
                (UChoice::Rule { name, rule }, format) => {
                    let terms = specialize(&exp, rule);
                    match format {
                        OutputFormat::Text => render::special_text(k, &terms),
                        OutputFormat::Latex => render::special_latex(k, &terms),
                        _ => render::to_json_string(&render::special_json(k, name, &terms)),
                    }
                }
            };
        }
        Command::Ctable { k_max, format } => {
            let k_max = bounded("k_max", k_max, 2, cap)?;
            require_format(format, "ctable", TABLE_FORMATS, "csv or json")?;
            if k_max > CTABLE_WARN_ABOVE {
                out.stderr = format!(
                    "warning: ctable size grows like the partition function; k_max = {k_max} may be slow\n"
                );
            }
            let table = CTable::by_extraction(k_max);
            out.stdout = match format {
                OutputFormat::Csv => render::ctable_csv(&table),
                _ => render::to_json_string(&render::ctable_json(&table)),
            };
        }
        Command::Atable { k_max, format } => {
            let k_max = bounded("k_max", k_max, 1, cap)?;
            require_format(format, "atable", TABLE_FORMATS, "csv or json")?;
            let table = a_table_by_recurrence(k_max);
            out.stdout = match format {
                OutputFormat::Csv => render::atable_csv(&table),
                _ => render::to_json_string(&render::atable_json(&table)),
            };
        }
        Command::Stirling { kind, n_max, format } => {
            let n_max = bounded("n_max", n_max, 1, cap)?;
            require_format(format, "stirling", TABLE_FORMATS, "csv or json")?;
            let rows = if kind == 1 {
                stirling1_unsigned_triangle(n_max)
            } else {
                stirling2_triangle(n_max)
            };
            out.stdout = match format {
                OutputFormat::Csv => render::triangle_csv(&rows),
                _ => render::to_json_string(&render::triangle_json(&rows)),
            };
        }
        Command::Verify { suite, k_max, seed } => {
            let k_max = bounded("k_max", k_max, 2, cap)?;
            let (reports, text) = run_verify(suite, k_max, seed);
            out.stdout = text;
            out.code = if reports.iter().all(Report::passed) {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            };
        }
    }
    Ok(out)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_with_cap<I, T>(args: I, cap: Result<u32, UsageError>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code: EXIT_USAGE }
            };
        }
    };
    match cap.and_then(|cap| execute(cli.command, cap)) {
        Ok(outcome) => outcome,
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: EXIT_USAGE,
        },
    }
}

/// Entry point used by the binary: reads the cap from the environment and
/// writes to the given streams.
pub fn main_with<I, T>(args: I, stdout: &mut impl Write, stderr: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let outcome = run_with_cap(args, cap_from_env());
    // A closed pipe is not worth a panic.
    let _ = stdout.write_all(outcome.stdout.as_bytes());
    let _ = stderr.write_all(outcome.stderr.as_bytes());
    outcome.code
}
