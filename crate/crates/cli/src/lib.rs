//! The `torsion` command line: build families, verify them, print
//! certificates and bound tables.

mod args;
mod construct;
mod render;
pub mod selftest;
mod table;
mod verify;

use std::ffi::OsString;

use clap::Parser;
use torsion_core::groebner::Limits;
use torsion_core::Error;

use args::{Cli, Verb};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Everything one invocation printed, plus its exit status.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
pub(crate) enum Failure {
    Usage(String),
    Resource(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceLimit(_) => Failure::Resource(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(format!("malformed JSON: {e}"))
    }
}

/// Text printed on success and whether the answer was affirmative.
pub(crate) struct Report {
    pub text: String,
    pub positive: bool,
}

pub(crate) type CmdResult = Result<Report, Failure>;

pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let limits = Limits { max_steps: cli.max_steps, max_terms: cli.max_terms, parallel: cli.parallel };
    let json = cli.json;
    let res = match cli.verb {
        Verb::Construct(c) => construct::run(c, json),
        Verb::Certify(c) => table::certify(c, json),
        Verb::Verify(v) => verify::run(v, json, &limits),
        Verb::Table(t) => table::run(t, json),
        Verb::Selftest => selftest::run(json, &limits),
    };
    match res {
        Ok(r) => Output { code: if r.positive { EXIT_OK } else { EXIT_FALSE }, stdout: r.text, stderr: String::new() },
        Err(Failure::Usage(m)) => Output { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {m}\n") },
        Err(Failure::Resource(m)) => Output { code: EXIT_RESOURCE, stdout: String::new(), stderr: format!("error: {m}\n") },
    }
}
