//! Command-line front end: deterministic generation, CAVP validation, game
//! and lemma checks, bound arithmetic and a self-test.
//!
//! Every command writes to the supplied writers and returns an exit code,
//! so the binary is a thin wrapper and tests can drive commands in-process.

mod bound;
mod cavp;
mod game;
mod gen;
mod selftest;

use std::ffi::OsString;
use std::io::{self, Write};

use clap::{Parser, Subcommand};
use thiserror::Error;

pub use bound::{cmd_bound, parse_count, BoundArgs};
pub use cavp::{cmd_cavp, CavpArgs};
pub use game::{cmd_game, GameArgs};
pub use gen::{cmd_gen, GenArgs};
pub use selftest::{broken_hmac, cmd_selftest, SelftestArgs};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESEED: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    ReseedRequired(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::ReseedRequired(_) => EXIT_RESEED,
            CliError::Io(_) => EXIT_FAIL,
        }
    }
}

pub(crate) fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

/// Whether every requested check passed.
pub type Outcome = Result<bool, CliError>;

#[derive(Debug, Parser)]
#[command(name = "drbgkit", version, about = "HMAC-DRBG toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Instantiate from hex inputs and print one hex line per generate call.
    Gen(GenArgs),
    /// Replay a CAVP HMAC_DRBG response file.
    Cavp(CavpArgs),
    /// Check the hybrid-argument lemmas on small games.
    Game(GameArgs),
    /// Evaluate the concrete security bound.
    Bound(BoundArgs),
    /// Known-answer tests plus the small lemma suite.
    Selftest(SelftestArgs),
}

pub fn dispatch(command: &Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Gen(a) => cmd_gen(a, out),
        Command::Cavp(a) => cmd_cavp(a, out),
        Command::Game(a) => cmd_game(a, out),
        Command::Bound(a) => cmd_bound(a, out),
        Command::Selftest(a) => cmd_selftest(a, out),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
        }
    };
    let code = match dispatch(&cli.command, out) {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_FAIL,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    };
    let _ = out.flush();
    code
}
