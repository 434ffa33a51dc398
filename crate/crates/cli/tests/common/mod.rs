#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

use framelex::{DisplayOptions, Store};
use framelex_cli::commands::Registry;
use framelex_cli::repl;
use framelex_cli::session::{OutputMode, Session};

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures/fn17-mini")
}

pub fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/golden")
        .join(name);
    std::fs::read_to_string(path).expect("golden file")
}

pub fn session() -> Session {
    let store = Store::open(fixture_dir()).expect("fixture opens");
    Session::new(store, DisplayOptions::default(), OutputMode::Display)
}

/// Feeds `input` to a fresh browser and returns everything it printed.
pub fn browse(input: &[u8]) -> String {
    let mut session = session();
    let mut out = Vec::new();
    repl::run(&Registry::standard(), &mut session, input, &mut out).expect("in-memory io");
    String::from_utf8(out).expect("utf-8 output")
}

/// Runs the installed binary against the fixture.
pub fn framelex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_framelex"))
        .env("FRAMELEX_DATA", fixture_dir())
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

pub fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}
