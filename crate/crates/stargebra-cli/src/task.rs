//! The task registry: every subcommand is a trait object that describes
//! its own clap command and runs against the parsed matches.

use clap::{Arg, ArgMatches, Command};
use stargebra::error::ErrorKind;

/// What a task produces: a JSON value and a text rendering of the same
/// content; `exit` is nonzero when the task ran but reported failures
/// (the `check` command).
pub struct Report {
    pub json: serde_json::Value,
    pub text: String,
    pub exit: i32,
}

impl Report {
    pub fn new(json: serde_json::Value, text: String) -> Report {
        Report { json, text, exit: 0 }
    }
}

#[derive(Debug)]
pub enum CliError {
    Core(stargebra::Error),
    Io(String),
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(m) | CliError::Usage(m) => write!(f, "{m}"),
        }
    }
}

impl From<stargebra::Error> for CliError {
    fn from(e: stargebra::Error) -> CliError {
        CliError::Core(e)
    }
}

impl CliError {
    /// 1: parse/usage errors; 2: precondition violations; 3: numerical
    /// failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Usage(_) => 1,
            CliError::Core(e) => match e.kind() {
                ErrorKind::InvalidInput => 1,
                ErrorKind::PreconditionViolated => 2,
                ErrorKind::NumericalFailure => 3,
            },
        }
    }
}

pub type TaskResult = Result<Report, CliError>;

pub trait Task {
    fn name(&self) -> &'static str;
    fn command(&self) -> Command;
    fn run(&self, matches: &ArgMatches) -> TaskResult;
}

/// Flags shared by every subcommand.
pub fn common_args(cmd: Command) -> Command {
    cmd.arg(
        Arg::new("tol")
            .long("tol")
            .value_name("FLOAT")
            .value_parser(clap::value_parser!(f64))
            .default_value("1e-10")
            .help("numerical tolerance"),
    )
    .arg(
        Arg::new("seed")
            .long("seed")
            .value_name("INT")
            .value_parser(clap::value_parser!(u64))
            .default_value("42")
            .help("seed for the randomized diagonalizers"),
    )
    .arg(
        Arg::new("output")
            .long("output")
            .value_name("FORMAT")
            .value_parser(["json", "text"])
            .default_value("json")
            .help("output format"),
    )
}

pub fn tol_of(m: &ArgMatches) -> f64 {
    *m.get_one::<f64>("tol").expect("defaulted")
}

pub fn seed_of(m: &ArgMatches) -> u64 {
    *m.get_one::<u64>("seed").expect("defaulted")
}

pub fn wants_json(m: &ArgMatches) -> bool {
    m.get_one::<String>("output").map(|s| s == "json").unwrap_or(true)
}

pub fn read_file(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {path}: {e}")))
}

pub fn parse_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T, CliError> {
    let text = read_file(path)?;
    stargebra::io::from_json_str(&text).map_err(CliError::Core)
}
