//! The command table. Each command is a [`Command`] object registered by
//! name; the one-shot CLI and the interactive browser dispatch through the
//! same [`Registry`].

mod browse;
mod corpus;
mod lexicon;

pub use lexicon::Counts;

use std::fmt;
use std::io::{self, Write};
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::{Arg, ArgAction, ArgMatches, ColorChoice};
use framelex::model::{
    AnnotationSet, Document, FeRelation, Frame, FrameElement, FrameRelation, FrameRelationType, LexicalUnit, SemType,
    Sentence,
};
use framelex::{Error, ErrorCategory};

use crate::session::{OutputMode, Session};

#[derive(Debug)]
pub enum CliError {
    /// Bad command line or a command used out of context.
    Usage(String),
    /// A positional lookup (exemplar, annotation set, sentence) out of range.
    NotFound(String),
    Lib(Error),
    Io(io::Error),
}

impl CliError {
    /// 0 ok, 1 lookup failure, 2 usage or pattern error, 3 data error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::NotFound(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Lib(e) => match e.category() {
                ErrorCategory::Lookup => 1,
                ErrorCategory::Usage => 2,
                ErrorCategory::Data => 3,
            },
            CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::NotFound(msg) => f.write_str(msg.trim_end()),
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type CommandResult = Result<(), CliError>;

pub trait Command: Send + Sync {
    fn name(&self) -> &'static str;

    fn about(&self) -> &'static str;

    fn args(&self) -> Vec<Arg> {
        Vec::new()
    }

    /// Library operations this command exposes.
    fn operations(&self) -> &'static [&'static str] {
        &[]
    }

    /// Drill-down commands that need a browser context.
    fn interactive_only(&self) -> bool {
        false
    }

    fn run(&self, session: &mut Session, args: &ArgMatches, out: &mut dyn Write) -> CommandResult;
}

pub struct Registry {
    commands: Vec<Box<dyn Command>>,
}

impl Registry {
    pub fn empty() -> Self {
        Registry { commands: Vec::new() }
    }

    /// Every built-in command.
    pub fn standard() -> Self {
        let mut registry = Registry::empty();
        lexicon::register(&mut registry);
        corpus::register(&mut registry);
        browse::register(&mut registry);
        registry
    }

    /// Adds a command, replacing any with the same name.
    pub fn register(&mut self, command: Box<dyn Command>) {
        self.commands.retain(|c| c.name() != command.name());
        self.commands.push(command);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Command> {
        self.commands.iter().find(|c| c.name() == name).map(|c| c.as_ref())
    }

    pub fn commands(&self) -> impl Iterator<Item = &dyn Command> {
        self.commands.iter().map(|c| c.as_ref())
    }

    /// One line per command.
    pub fn table(&self, interactive: bool) -> String {
        let mut out = String::new();
        for command in self.commands() {
            if command.interactive_only() && !interactive {
                continue;
            }
            out.push_str(&format!("  {:<20}{}\n", command.name(), command.about()));
        }
        out
    }

    /// Runs `argv`, whose first element is the command name.
    pub fn dispatch(&self, session: &mut Session, argv: &[String], out: &mut dyn Write) -> CommandResult {
        let Some(name) = argv.first() else {
            return Err(CliError::Usage("no command given".into()));
        };
        let command = self
            .get(name)
            .ok_or_else(|| CliError::Usage(format!("unknown command {name:?}; try \"help\"")))?;
        if command.interactive_only() && !session.is_interactive() {
            return Err(CliError::Usage(format!(
                "{name} needs a browser context; start one with \"browse\""
            )));
        }
        let parser = clap::Command::new(command.name())
            .about(command.about())
            .color(ColorChoice::Never)
            .disable_help_subcommand(true)
            .args(command.args())
            .arg(flag("ids", "print tab-separated ID and name lines"));
        match parser.try_get_matches_from(argv) {
            Ok(matches) => {
                let saved = session.mode;
                if matches.get_flag("ids") {
                    session.mode = OutputMode::Ids;
                }
                let result = command.run(session, &matches, out);
                session.mode = saved;
                result
            }
            Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
                write!(out, "{}", e.render())?;
                Ok(())
            }
            Err(e) => {
                let message = e.render().to_string();
                let message = message.strip_prefix("error: ").unwrap_or(&message);
                Err(CliError::Usage(message.to_string()))
            }
        }
    }
}

pub(crate) fn positional(name: &'static str, help: &'static str) -> Arg {
    Arg::new(name).help(help).required(true)
}

pub(crate) fn optional(name: &'static str, help: &'static str) -> Arg {
    Arg::new(name).help(help)
}

pub(crate) fn option(name: &'static str, help: &'static str) -> Arg {
    Arg::new(name).long(name).help(help)
}

pub(crate) fn flag(name: &'static str, help: &'static str) -> Arg {
    Arg::new(name).long(name).action(ArgAction::SetTrue).help(help)
}

pub(crate) fn string<'a>(args: &'a ArgMatches, name: &str) -> Option<&'a str> {
    args.get_one::<String>(name).map(String::as_str)
}

pub(crate) fn number(args: &ArgMatches, name: &str) -> Result<u32, CliError> {
    let raw = string(args, name).unwrap_or_default();
    raw.parse()
        .map_err(|_| CliError::Usage(format!("{name} must be a non-negative integer, got {raw:?}")))
}

pub(crate) fn index(args: &ArgMatches, name: &str) -> Result<usize, CliError> {
    number(args, name).map(|n| n as usize)
}

/// What ID mode prints for an entity: its ID and a name, tab separated.
pub(crate) trait Listed {
    fn id(&self) -> u32;
    fn name(&self) -> String;
}

macro_rules! listed {
    ($($ty:ty => |$x:ident| $name:expr;)*) => {
        $(impl Listed for Arc<$ty> {
            fn id(&self) -> u32 {
                self.id
            }

            fn name(&self) -> String {
                let $x = self;
                $name
            }
        })*
    };
}

listed! {
    Frame => |f| f.name.clone();
    LexicalUnit => |lu| lu.name.clone();
    FrameElement => |fe| format!("{}.{}", fe.frame_name, fe.name);
    FrameRelationType => |t| t.name.clone();
    FrameRelation => |r| format!("{}: {} -> {}", r.type_name, r.super_frame_name, r.sub_frame_name);
    FeRelation => |r| format!("{} -> {}", r.super_fe_name, r.sub_fe_name);
    SemType => |st| st.name.clone();
    Sentence => |s| s.text.clone();
    AnnotationSet => |a| a.lu_name.clone().unwrap_or_default();
    Document => |d| d.name.clone();
}

fn id_line(item: &impl Listed) -> String {
    format!("{}\t{}", item.id(), item.name())
}

/// Prints a list either as display lines or, stable-sorted by ID, as ID
/// lines.
pub(crate) fn list<T: fmt::Display + Listed>(session: &Session, out: &mut dyn Write, items: &[T]) -> CommandResult {
    match session.mode {
        OutputMode::Display => {
            for item in items {
                writeln!(out, "{item}")?;
            }
        }
        OutputMode::Ids => {
            let mut sorted: Vec<&T> = items.iter().collect();
            sorted.sort_by_key(|item| item.id());
            for item in sorted {
                writeln!(out, "{}", id_line(item))?;
            }
        }
    }
    Ok(())
}

/// Prints a single entity display, or its ID line in ID mode.
pub(crate) fn show(
    session: &Session,
    out: &mut dyn Write,
    item: &impl Listed,
    display: impl FnOnce() -> Result<String, Error>,
) -> CommandResult {
    match session.mode {
        OutputMode::Display => write!(out, "{}", display()?)?,
        OutputMode::Ids => writeln!(out, "{}", id_line(item))?,
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Echo(&'static str);

    impl Command for Echo {
        fn name(&self) -> &'static str {
            "echo"
        }

        fn about(&self) -> &'static str {
            self.0
        }

        fn run(&self, _: &mut Session, _: &ArgMatches, out: &mut dyn Write) -> CommandResult {
            write!(out, "{}", self.0)?;
            Ok(())
        }
    }

    #[test]
    fn register_replaces_by_name() {
        let mut registry = Registry::empty();
        registry.register(Box::new(Echo("one")));
        registry.register(Box::new(Echo("two")));
        assert_eq!(registry.commands().count(), 1);
        assert_eq!(registry.get("echo").unwrap().about(), "two");
        assert_eq!(registry.table(false), format!("  {:<20}two\n", "echo"));
    }

    #[test]
    fn exit_codes_follow_error_kind() {
        assert_eq!(CliError::Usage(String::new()).exit_code(), 2);
        assert_eq!(CliError::NotFound(String::new()).exit_code(), 1);
        assert_eq!(CliError::Io(io::Error::other("x")).exit_code(), 3);
        let pattern = framelex::SearchPattern::new("(").unwrap_err();
        assert_eq!(CliError::from(pattern).exit_code(), 2);
    }
}
