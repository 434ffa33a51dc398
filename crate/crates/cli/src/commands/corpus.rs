//! Commands over annotated sentences and full-text documents.

use std::io::Write;

use clap::{Arg, ArgMatches};

use super::{flag, list, number, optional, positional, show, string, Command, CommandResult, Registry};
use crate::session::{Focus, OutputMode, Session};

pub(super) fn register(registry: &mut Registry) {
    registry.register(Box::new(Annotations));
    registry.register(Box::new(Exemplars));
    registry.register(Box::new(FtSents));
    registry.register(Box::new(Sents));
    registry.register(Box::new(DocCmd));
    registry.register(Box::new(Docs));
}

struct Annotations;

impl Command for Annotations {
    fn name(&self) -> &'static str {
        "annotations"
    }

    fn about(&self) -> &'static str {
        "list frame annotation sets whose LU name matches a pattern"
    }

    fn args(&self) -> Vec<Arg> {
        vec![
            optional("pattern", "regular expression searched in LU names"),
            flag("no-exemplars", "leave out lexicographic exemplar sets"),
            flag("no-fulltext", "leave out full-text sets"),
        ]
    }

    fn operations(&self) -> &'static [&'static str] {
        &["annotations"]
    }

    fn run(&self, session: &mut Session, args: &ArgMatches, out: &mut dyn Write) -> CommandResult {
        let sets = session.store.annotations(
            string(args, "pattern"),
            !args.get_flag("no-exemplars"),
            !args.get_flag("no-fulltext"),
        )?;
        list(session, out, &sets)
    }
}

struct Exemplars;

impl Command for Exemplars {
    fn name(&self) -> &'static str {
        "exemplars"
    }

    fn about(&self) -> &'static str {
        "list exemplar sentences of LUs whose name matches a pattern"
    }

    fn args(&self) -> Vec<Arg> {
        vec![optional("pattern", "regular expression searched in LU names")]
    }

    fn operations(&self) -> &'static [&'static str] {
        &["exemplars"]
    }

    fn run(&self, session: &mut Session, args: &ArgMatches, out: &mut dyn Write) -> CommandResult {
        let sentences = session.store.exemplars(string(args, "pattern"))?;
        list(session, out, &sentences)
    }
}

struct FtSents;

impl Command for FtSents {
    fn name(&self) -> &'static str {
        "ft-sents"
    }

    fn about(&self) -> &'static str {
        "list sentences of documents whose name matches a pattern"
    }

    fn args(&self) -> Vec<Arg> {
        vec![optional("pattern", "regular expression searched in document names")]
    }

    fn operations(&self) -> &'static [&'static str] {
        &["ft_sents"]
    }

    fn run(&self, session: &mut Session, args: &ArgMatches, out: &mut dyn Write) -> CommandResult {
        let sentences = session.store.ft_sents(string(args, "pattern"))?;
        list(session, out, &sentences)
    }
}

struct Sents;

impl Command for Sents {
    fn name(&self) -> &'static str {
        "sents"
    }

    fn about(&self) -> &'static str {
        "list every sentence, exemplars first, reading files as it goes"
    }

    fn operations(&self) -> &'static [&'static str] {
        &["sents"]
    }

    fn run(&self, session: &mut Session, _: &ArgMatches, out: &mut dyn Write) -> CommandResult {
        if session.mode == OutputMode::Ids {
            let sentences = session.store.sents().collect::<Result<Vec<_>, _>>()?;
            return list(session, out, &sentences);
        }
        for sentence in session.store.sents() {
            writeln!(out, "{}", sentence?)?;
        }
        Ok(())
    }
}

struct DocCmd;

impl Command for DocCmd {
    fn name(&self) -> &'static str {
        "doc"
    }

    fn about(&self) -> &'static str {
        "show a full-text document by ID"
    }

    fn args(&self) -> Vec<Arg> {
        vec![positional("id", "document ID")]
    }

    fn operations(&self) -> &'static [&'static str] {
        &["doc"]
    }

    fn run(&self, session: &mut Session, args: &ArgMatches, out: &mut dyn Write) -> CommandResult {
        let doc = session.store.doc(number(args, "id")?)?;
        show(session, out, &doc, || Ok(session.renderer().document(&doc)))?;
        session.reset(vec![Focus::Document(doc)]);
        Ok(())
    }
}

struct Docs;

impl Command for Docs {
    fn name(&self) -> &'static str {
        "docs"
    }

    fn about(&self) -> &'static str {
        "list full-text documents whose name matches a pattern"
    }

    fn args(&self) -> Vec<Arg> {
        vec![optional("pattern", "regular expression searched in document names")]
    }

    fn operations(&self) -> &'static [&'static str] {
        &["docs"]
    }

    fn run(&self, session: &mut Session, args: &ArgMatches, out: &mut dyn Write) -> CommandResult {
        let docs = session.store.docs(string(args, "pattern"))?;
        list(session, out, &docs)
    }
}
