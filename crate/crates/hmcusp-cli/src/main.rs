mod cache;
mod cli;
mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use cli::{Cli, Format};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;

fn wants_json(args: &[String]) -> bool {
    args.windows(2)
        .any(|w| w[0] == "--format" && w[1] == "json")
        || args.iter().any(|a| a == "--format=json")
}

/// Writes the whole output at once; a closed pipe is not an error.
fn emit(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            if wants_json(&args) {
                let msg = e.kind().as_str().unwrap_or("invalid usage").to_string();
                emit(&format!("{}\n", report::error_json("", "UsageError", &msg)));
            } else {
                let _ = e.print();
            }
            return ExitCode::from(EXIT_USAGE);
        }
    };

    let mut cache = cache::Cache::open(cli.cache.clone());
    let name = commands::command_name(&cli.command);
    let outcome = commands::run(&cli.command, &mut cache);
    if let Err(e) = cache.save() {
        eprintln!("warning: cache not written: {e}");
    }
    match outcome {
        Ok(report) => {
            match cli.format {
                Format::Json => emit(&format!("{}\n", report.to_json())),
                Format::Text => emit(&report.to_text()),
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            }
        }
        Err(e) => {
            match cli.format {
                Format::Json => emit(&format!(
                    "{}\n",
                    report::error_json(name, e.kind(), &e.to_string())
                )),
                Format::Text => eprintln!("error: {e}"),
            }
            ExitCode::from(if e.is_precondition() {
                EXIT_PRECONDITION
            } else {
                EXIT_FAIL
            })
        }
    }
}
