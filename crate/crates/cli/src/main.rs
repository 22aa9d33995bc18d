use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use perdomcoh_core::catalog::{catalog, fixture, fixture_options, STANDARD};
use perdomcoh_core::config::{Format, ScenarioConfig};
use perdomcoh_core::report::{run, ResultReport, RunOptions};
use perdomcoh_core::selftest::run_selftest;
use perdomcoh_core::{par, Error};

const EXIT_ERROR: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_CHECK_FAILED: u8 = 3;

/// Compactly supported cohomology of basic period domains.
#[derive(Parser)]
#[command(name = "perdomcoh", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the cohomology of the scenario described by a config file.
    Run(RunArgs),
    /// Show a built-in scenario, or `list` to name them all.
    Catalog {
        name: String,
        /// Print the scenario's config JSON instead of running it.
        #[arg(long)]
        emit: bool,
    },
    /// Run every invariant and consistency check on the standard catalog.
    Selftest,
}

#[derive(Args)]
struct RunArgs {
    config: PathBuf,
    /// Run validation, LES, Euler, splitting and invariant checks.
    #[arg(long)]
    check: bool,
    /// Include the E1 and E2 pages.
    #[arg(long)]
    pages: bool,
    /// Include the Euler characteristic section.
    #[arg(long)]
    euler: bool,
    #[arg(long, value_parser = parse_format)]
    format: Option<Format>,
    /// Maximum number of Weyl group elements to enumerate.
    #[arg(long)]
    cap: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), Error> {
    match output {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn finish(report: &ResultReport) -> u8 {
    if report.passed() {
        0
    } else {
        EXIT_CHECK_FAILED
    }
}

/// Validation failures are part of the output, not an error message.
fn validation_failure(err: Error, format: Format) -> Result<u8, Error> {
    match err {
        Error::Validation(report) => {
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("serializable")),
                _ => print!("validation failed\n{report}"),
            }
            Ok(EXIT_INVALID)
        }
        other => Err(other),
    }
}

fn run_command(args: RunArgs) -> Result<u8, Error> {
    let text = fs::read_to_string(&args.config)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", args.config.display())))?;
    let config = ScenarioConfig::from_json(&text)?;
    let mut opts = RunOptions::from(&config.options);
    opts.checks |= args.check;
    opts.pages |= args.pages;
    opts.euler |= args.euler;
    if let Some(cap) = args.cap {
        opts.cap = cap;
    }
    let format = args.format.unwrap_or(config.options.format);
    match run(&config, &opts) {
        Ok(report) => {
            emit(&report.render(format), args.output.as_ref())?;
            Ok(finish(&report))
        }
        Err(e) => validation_failure(e, format),
    }
}

fn catalog_command(name: &str, emit_config: bool) -> Result<u8, Error> {
    if name == "list" {
        for n in STANDARD {
            println!("{n}");
        }
        return Ok(0);
    }
    let config = catalog(name)?;
    if emit_config {
        print!("{}", config.to_json());
        return Ok(0);
    }
    let report = match run(&config, &fixture_options()) {
        Ok(r) => r,
        Err(e) => return validation_failure(e, Format::Text),
    };
    print!("{}", report.render(Format::Text));
    let code = finish(&report);
    let json = report.render(Format::Json);
    match fixture(name) {
        Some(f) if f == json => {
            println!("fixture: reproduced ({} bytes)", json.len());
            Ok(code)
        }
        Some(_) => {
            println!("fixture: MISMATCH");
            Ok(EXIT_CHECK_FAILED)
        }
        None => {
            println!("fixture: none recorded");
            Ok(code)
        }
    }
}

fn selftest_command() -> Result<u8, Error> {
    let outcomes = run_selftest()?;
    let mut failed = 0;
    for o in &outcomes {
        println!("{}", o.scenario);
        for c in &o.checks {
            println!("  [{}] {}: {}", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail);
        }
        if !o.passed() {
            failed += 1;
        }
    }
    println!(
        "selftest ({}): {} of {} scenarios passed",
        par::mode(),
        outcomes.len() - failed,
        outcomes.len()
    );
    Ok(if failed == 0 { 0 } else { EXIT_CHECK_FAILED })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not usage errors.
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Run(args) => run_command(args),
        Command::Catalog { name, emit } => catalog_command(&name, emit),
        Command::Selftest => selftest_command(),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
