//! Command-line front end for the `lightsector` library.
//!
//! Exit codes: 0 success / all checks pass, 1 verification failure, 2 input
//! error, 3 internal error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use lightsector::builtins::{builtin_by_name, BuiltinParams};
use lightsector::report::{render_report, ReportFormat};
use lightsector::scenario::{parse_scenario, parse_scenario_lax, ScenarioFile};
use lightsector::{selftest, verify_block_reduced_structure, Error, Rational};

#[derive(Parser)]
#[command(name = "lightsector", version, about = "Exact light-sector packages for multi-node conifold degenerations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Machine,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => ReportFormat::Text,
            Format::Machine => ReportFormat::Machine,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Assemble, classify, and report on a scenario file.
    Analyze {
        #[arg(required_unless_present = "batch")]
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Drop unknown fields instead of rejecting them.
        #[arg(long)]
        lax: bool,
        /// Analyze every `*.scenario` file in a directory, in name order.
        #[arg(long, conflicts_with = "file")]
        batch: Option<PathBuf>,
    },
    /// Print or write a built-in scenario.
    Scenario {
        /// a1xa1, a2, three_node, quintic_orbits, one_node, four_node_blocks
        name: String,
        /// lambda_12 for a2 and three_node (default 1).
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        /// Comma-separated orbit sizes for quintic_orbits (default 25,25,25,25,25).
        #[arg(long, value_delimiter = ',')]
        orbits: Option<Vec<usize>>,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Run the block-reduced structure checks; exit 0 iff all pass.
    Verify {
        file: PathBuf,
        #[arg(long)]
        lax: bool,
    },
    /// Run the randomized invariant suite.
    Selftest {
        #[arg(long, default_value_t = selftest::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        rounds: usize,
    },
}

enum Failure {
    Verification(String),
    Input(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Input(_) => 2,
            Failure::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Verification(m) | Failure::Input(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => Failure::Internal(e.to_string()),
            Error::BlockSeparationRequired(_) => Failure::Verification(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn load(path: &Path, lax: bool) -> Result<ScenarioFile, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let parsed = if lax {
        parse_scenario_lax(&text).map(|(s, ignored)| {
            for field in ignored {
                eprintln!("warning: {}: ignoring unknown field `{field}`", path.display());
            }
            s
        })
    } else {
        parse_scenario(&text)
    };
    parsed.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn analyze_one(path: &Path, format: ReportFormat, lax: bool) -> Result<String, Failure> {
    let scenario = load(path, lax)?;
    let pkg = scenario
        .assemble()
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(render_report(&scenario.name, &pkg, format)?)
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn batch_files(dir: &Path) -> Result<Vec<PathBuf>, Failure> {
    let entries = fs::read_dir(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "scenario"))
        .collect();
    files.sort();
    Ok(files)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze {
            file,
            format,
            out,
            lax,
            batch,
        } => {
            let format = ReportFormat::from(format);
            if let Some(dir) = batch {
                let files = batch_files(&dir)?;
                let results: Vec<(PathBuf, Result<String, Failure>)> = files
                    .into_par_iter()
                    .map(|p| {
                        let r = analyze_one(&p, format, lax);
                        (p, r)
                    })
                    .collect();
                let mut text = String::new();
                let mut worst: Option<Failure> = None;
                for (path, result) in results {
                    text.push_str(&format!("### {}\n", path.display()));
                    match result {
                        Ok(report) => text.push_str(&report),
                        Err(f) => {
                            text.push_str(&format!("error: {}\n", f.message()));
                            if worst.as_ref().is_none_or(|w| f.code() > w.code()) {
                                worst = Some(f);
                            }
                        }
                    }
                }
                write_output(out.as_deref(), &text)?;
                return worst.map_or(Ok(()), Err);
            }
            let file = file.expect("clap requires a file without --batch");
            let report = analyze_one(&file, format, lax)?;
            write_output(out.as_deref(), &report)
        }
        Command::Scenario {
            name,
            lambda,
            orbits,
            emit,
        } => {
            let lambda = lambda
                .map(|s| s.parse::<Rational>())
                .transpose()
                .map_err(|e| Failure::Input(e.to_string()))?;
            let params = BuiltinParams {
                lambda,
                orbit_sizes: orbits,
            };
            let scenario = builtin_by_name(&name, &params)?;
            write_output(emit.as_deref(), &scenario.to_text())
        }
        Command::Verify { file, lax } => {
            let scenario = load(&file, lax)?;
            let pkg = scenario
                .assemble()
                .map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
            let report = verify_block_reduced_structure(&pkg)?;
            for item in ["(1)", "(2)", "(3)", "(4)"] {
                let checks: Vec<_> = report.checks.iter().filter(|c| c.name.starts_with(item)).collect();
                let failed = checks.iter().filter(|c| !c.pass).count();
                println!(
                    "{} item {item}: {} checks, {failed} failed",
                    if failed == 0 { "PASS" } else { "FAIL" },
                    checks.len()
                );
            }
            for c in report.failures() {
                println!("  FAIL {}: expected {}, got {}", c.name, c.expected, c.actual);
            }
            if report.overall {
                println!("{}: all block-reduced structure checks pass", scenario.name);
                Ok(())
            } else {
                Err(Failure::Verification(format!("{}: verification failed", scenario.name)))
            }
        }
        Command::Selftest { seed, rounds } => {
            let report = selftest::run(seed, rounds)?;
            for c in &report.checks {
                println!(
                    "{} {} ({} / {})",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    c.actual,
                    c.expected
                );
            }
            if report.overall {
                Ok(())
            } else {
                Err(Failure::Verification("selftest failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
