//! The interactive browser and its drill-down commands.

use std::io::{self, Write};

use clap::{Arg, ArgMatches};

use super::{index, positional, show, CliError, Command, CommandResult, Registry};
use crate::repl;
use crate::session::{Focus, Session};

pub(super) fn register(registry: &mut Registry) {
    registry.register(Box::new(Browse));
    registry.register(Box::new(Exemplar));
    registry.register(Box::new(AnnoSet));
    registry.register(Box::new(SentenceCmd));
    registry.register(Box::new(Show));
    registry.register(Box::new(Up));
    registry.register(Box::new(Quit { name: "quit" }));
    registry.register(Box::new(Quit { name: "exit" }));
}

struct Browse;

impl Command for Browse {
    fn name(&self) -> &'static str {
        "browse"
    }

    fn about(&self) -> &'static str {
        "start the interactive browser"
    }

    fn run(&self, session: &mut Session, _: &ArgMatches, out: &mut dyn Write) -> CommandResult {
        if session.is_interactive() {
            return Err(CliError::Usage("already browsing".into()));
        }
        let stdin = io::stdin();
        repl::run(&Registry::standard(), session, stdin.lock(), out)?;
        Ok(())
    }
}

/// Drops everything above the innermost entity `pick` accepts and returns it.
fn narrow_to<T>(session: &mut Session, what: &str, pick: impl Fn(&Focus) -> Option<T>) -> Result<T, CliError> {
    let stack = session.stack();
    let Some(pos) = stack.iter().rposition(|f| pick(f).is_some()) else {
        return Err(CliError::Usage(format!("no {what} in the current context")));
    };
    let found = pick(&stack[pos]).unwrap();
    let kept = stack[..=pos].to_vec();
    session.reset(kept);
    Ok(found)
}

fn out_of_range(what: &str, k: usize, len: usize) -> CliError {
    CliError::NotFound(format!("{what} {k} out of range; there are {len}"))
}

struct Exemplar;

impl Command for Exemplar {
    fn name(&self) -> &'static str {
        "exemplar"
    }

    fn about(&self) -> &'static str {
        "show exemplar sentence k of the current LU, counting from 0"
    }

    fn args(&self) -> Vec<Arg> {
        vec![positional("k", "position among the LU's exemplars")]
    }

    fn interactive_only(&self) -> bool {
        true
    }

    fn run(&self, session: &mut Session, args: &ArgMatches, out: &mut dyn Write) -> CommandResult {
        let k = index(args, "k")?;
        let lu = narrow_to(session, "lexical unit", |f| match f {
            Focus::Lu(lu) => Some(lu.clone()),
            _ => None,
        })?;
        let exemplars = session.store.exemplars_of(lu.id)?;
        let sentence = exemplars
            .get(k)
            .cloned()
            .ok_or_else(|| out_of_range("exemplar", k, exemplars.len()))?;
        show(session, out, &sentence, || session.renderer().sentence(&sentence))?;
        session.push(Focus::Sentence(sentence));
        Ok(())
    }
}

struct AnnoSet;

impl Command for AnnoSet {
    fn name(&self) -> &'static str {
        "annoset"
    }

    fn about(&self) -> &'static str {
        "show annotation set k of the current sentence, counting from 0"
    }

    fn args(&self) -> Vec<Arg> {
        vec![positional("k", "position among the sentence's annotation sets")]
    }

    fn interactive_only(&self) -> bool {
        true
    }

    fn run(&self, session: &mut Session, args: &ArgMatches, out: &mut dyn Write) -> CommandResult {
        let k = index(args, "k")?;
        let sentence = narrow_to(session, "sentence", |f| match f {
            Focus::Sentence(s) => Some(s.clone()),
            _ => None,
        })?;
        let set = sentence
            .annotation_sets
            .get(k)
            .cloned()
            .ok_or_else(|| out_of_range("annotation set", k, sentence.annotation_sets.len()))?;
        show(session, out, &set, || Ok(session.renderer().annotation_set(&set)))?;
        session.push(Focus::AnnotationSet(set));
        Ok(())
    }
}

struct SentenceCmd;

impl Command for SentenceCmd {
    fn name(&self) -> &'static str {
        "sentence"
    }

    fn about(&self) -> &'static str {
        "show sentence k of the current document, counting from 0"
    }

    fn args(&self) -> Vec<Arg> {
        vec![positional("k", "position among the document's sentences")]
    }

    fn interactive_only(&self) -> bool {
        true
    }

    fn run(&self, session: &mut Session, args: &ArgMatches, out: &mut dyn Write) -> CommandResult {
        let k = index(args, "k")?;
        let doc = narrow_to(session, "document", |f| match f {
            Focus::Document(d) => Some(d.clone()),
            _ => None,
        })?;
        let sentence = doc
            .sentences
            .get(k)
            .cloned()
            .ok_or_else(|| out_of_range("sentence", k, doc.sentences.len()))?;
        show(session, out, &sentence, || session.renderer().sentence(&sentence))?;
        session.push(Focus::Sentence(sentence));
        Ok(())
    }
}

struct Show;

impl Command for Show {
    fn name(&self) -> &'static str {
        "show"
    }

    fn about(&self) -> &'static str {
        "display the current entity again"
    }

    fn interactive_only(&self) -> bool {
        true
    }

    fn run(&self, session: &mut Session, _: &ArgMatches, out: &mut dyn Write) -> CommandResult {
        let Some(focus) = session.focus().cloned() else {
            return Err(CliError::Usage("nothing to show; look something up first".into()));
        };
        let renderer = session.renderer();
        match &focus {
            Focus::Frame(f) => show(session, out, f, || renderer.frame(f)),
            Focus::Lu(lu) => show(session, out, lu, || renderer.lu(lu)),
            Focus::Fe(fe) => show(session, out, fe, || Ok(renderer.fe(fe))),
            Focus::SemType(st) => show(session, out, st, || renderer.semtype(st)),
            Focus::Sentence(s) => show(session, out, s, || renderer.sentence(s)),
            Focus::AnnotationSet(a) => show(session, out, a, || Ok(renderer.annotation_set(a))),
            Focus::Document(d) => show(session, out, d, || Ok(renderer.document(d))),
        }
    }
}

struct Up;

impl Command for Up {
    fn name(&self) -> &'static str {
        "up"
    }

    fn about(&self) -> &'static str {
        "leave the current entity"
    }

    fn interactive_only(&self) -> bool {
        true
    }

    fn run(&self, session: &mut Session, _: &ArgMatches, _: &mut dyn Write) -> CommandResult {
        if session.up() {
            Ok(())
        } else {
            Err(CliError::Usage("already at the top".into()))
        }
    }
}

struct Quit {
    name: &'static str,
}

impl Command for Quit {
    fn name(&self) -> &'static str {
        self.name
    }

    fn about(&self) -> &'static str {
        "leave the browser"
    }

    fn interactive_only(&self) -> bool {
        true
    }

    fn run(&self, session: &mut Session, _: &ArgMatches, _: &mut dyn Write) -> CommandResult {
        session.request_quit();
        Ok(())
    }
}
