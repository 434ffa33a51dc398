//! Command-line front end for the `framelex` lexicon engine: one-shot
//! commands and an interactive browser sharing one command table.

pub mod commands;
pub mod repl;
pub mod session;

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::Parser;
use framelex::{DisplayOptions, Store};

use crate::commands::{CliError, Registry};
use crate::session::{OutputMode, Session};

#[derive(Debug, Parser)]
#[command(
    name = "framelex",
    version,
    about = "Browse a FrameNet 1.7 style lexical database",
    after_help = "Run `framelex help` for the list of commands."
)]
pub struct Cli {
    /// Data directory; defaults to $FRAMELEX_DATA.
    #[arg(long, value_name = "DIR")]
    pub data: Option<PathBuf>,

    /// Wrap width for displays.
    #[arg(long, value_name = "COLUMNS")]
    pub width: Option<usize>,

    /// Print tab-separated ID and name lines instead of displays.
    #[arg(long)]
    pub ids: bool,

    /// Command and its arguments.
    #[arg(trailing_var_arg = true, allow_hyphen_values = true, value_name = "COMMAND")]
    pub command: Vec<String>,
}

/// Parses `argv`, runs one command and returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(out, "{}", e.render());
            return 0;
        }
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return 2;
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        // A closed pipe means the reader has seen enough.
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "framelex: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    if cli.command.is_empty() {
        return Err(CliError::Usage(
            "no command given; try `framelex help` or `framelex browse`".into(),
        ));
    }
    let options = match cli.width {
        Some(width) => DisplayOptions::new(width)?,
        None => DisplayOptions::default(),
    };
    let store = Store::open_default(cli.data.as_deref())?;
    let mode = if cli.ids { OutputMode::Ids } else { OutputMode::Display };
    let mut session = Session::new(store, options, mode);
    Registry::standard().dispatch(&mut session, &cli.command, out)?;
    out.flush()?;
    Ok(())
}
