//! The read-eval-print loop behind `browse`.

use std::io::{self, BufRead, Write};

use crate::commands::Registry;
use crate::session::Session;

/// Reads commands from `input` until end of input or `quit`. Errors in a
/// command are reported on `out` and the loop goes on; only a failure to
/// read or write ends it early.
pub fn run<R: BufRead>(
    registry: &Registry,
    session: &mut Session,
    mut input: R,
    out: &mut dyn Write,
) -> io::Result<()> {
    session.set_interactive(true);
    let result = read_loop(registry, session, &mut input, out);
    session.set_interactive(false);
    result
}

fn read_loop<R: BufRead>(
    registry: &Registry,
    session: &mut Session,
    input: &mut R,
    out: &mut dyn Write,
) -> io::Result<()> {
    let mut buf = Vec::new();
    while !session.quit_requested() {
        write!(out, "{}", session.prompt())?;
        out.flush()?;
        buf.clear();
        if input.read_until(b'\n', &mut buf)? == 0 {
            writeln!(out)?;
            break;
        }
        let line = String::from_utf8_lossy(&buf);
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let Some(argv) = shlex::split(line) else {
            writeln!(out, "error: unbalanced quotes")?;
            continue;
        };
        if argv.is_empty() {
            continue;
        }
        if let Err(e) = registry.dispatch(session, &argv, out) {
            writeln!(out, "error: {e}")?;
        }
    }
    Ok(())
}
