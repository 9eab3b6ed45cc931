//! Command-line front end.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use abscon::instance::load_instance;
use abscon::plot::{emit_plot_data, Sampling};
use abscon::report::{run_instance, Report};
use abscon::scenarios::{load_scenario, names};
use abscon::suite::run_property_suite;
use abscon::CliError;
use abscon_core::report::Verdict;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "abscon", version, about = "Exact checks of abstract convexity rules")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks of an instance file.
    Check { file: PathBuf },
    /// Run a built-in scenario, or an instance file.
    Scenario {
        /// Scenario name or instance path; `all` runs the whole catalogue.
        name: String,
    },
    /// Run the randomized property suite.
    Suite {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Record elapsed time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Sample functions of a real-line instance as CSV.
    PlotData {
        instance: String,
        /// Comma-separated function, family or member-set names, or expressions.
        #[arg(long, default_value = "")]
        functions: String,
        /// `lo:hi`
        #[arg(long, default_value = "-4:4", allow_hyphen_values = true)]
        range: String,
        #[arg(long, default_value = "1/4")]
        step: String,
    },
}

/// Splits on commas outside parentheses.
fn split_top_level(text: &str) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut depth = 0usize;
    for ch in text.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(String::new());
                continue;
            }
            _ => {}
        }
        out.last_mut().unwrap().push(ch);
    }
    out.into_iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

fn render(reports: &[Report], format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let text = if let [one] = reports {
                serde_json::to_string_pretty(one)
            } else {
                serde_json::to_string_pretty(reports)
            };
            Ok(text.map_err(|e| CliError::Invalid(e.to_string()))? + "\n")
        }
        Format::Text => Ok(reports.iter().map(Report::render_text).collect()),
        Format::Csv => Err(CliError::Invalid("csv output is only available for plot-data".into())),
    }
}

fn run(cli: &Cli) -> Result<(String, bool), CliError> {
    let reports = match &cli.command {
        Command::Check { file } => vec![run_instance(&load_instance(file)?)],
        Command::Scenario { name } if name == "all" => {
            names().map(|n| Ok(run_instance(&load_scenario(n)?))).collect::<Result<Vec<_>, CliError>>()?
        }
        Command::Scenario { name } => vec![run_instance(&load_scenario(name)?)],
        Command::Suite { seed, count, timing } => {
            if *count == 0 {
                return Err(CliError::Invalid("count must be positive".into()));
            }
            let start = Instant::now();
            let mut r = run_property_suite(*seed, *count);
            if *timing {
                r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
            }
            vec![r]
        }
        Command::PlotData { instance, functions, range, step } => {
            let inst = load_scenario(instance)?;
            let names = split_top_level(functions);
            return Ok((emit_plot_data(&inst, &names, &Sampling::parse(range, step)?)?, true));
        }
    };
    let ok = reports.iter().all(|r| r.status != Verdict::Fail);
    Ok((render(&reports, cli.format)?, ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, ok) = match run(&cli) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
