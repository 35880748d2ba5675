mod args;
mod commands;
mod config;
mod output;

use clap::Parser;
use isospec::geometry::DomainSpec;
use serde::Serialize;
use std::process::ExitCode;

const EXIT_USAGE: u8 = 1;
const EXIT_NUMERIC: u8 = 3;

/// Why a command could not produce its result.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags, config or domain.
    Usage(String),
    /// A numerical method failed on valid input.
    Numeric(String),
}

#[derive(Serialize)]
struct FailureRecord<'a> {
    record: &'static str,
    shape: Option<String>,
    error: &'a str,
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Numeric(_) => EXIT_NUMERIC,
        }
    }

    fn print(&self, domain: Option<&DomainSpec>) {
        match self {
            Failure::Usage(m) => match domain {
                Some(d) => eprintln!("error: {d}: {m}"),
                None => eprintln!("error: {m}"),
            },
            Failure::Numeric(m) => {
                let record = FailureRecord {
                    record: "NUMERIC-FAILURE",
                    shape: domain.map(|d| d.to_string()),
                    error: m,
                };
                eprintln!("{}", serde_json::to_string(&record).expect("record serializes"));
            }
        }
    }
}

impl From<isospec::Error> for Failure {
    fn from(e: isospec::Error) -> Self {
        if e.is_numeric() {
            Failure::Numeric(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = match args::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match commands::run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            f.print(None);
            ExitCode::from(f.exit_code())
        }
    }
}
