//! Commands over frames, lexical units, frame elements, relations and
//! semantic types.

use std::fmt;
use std::io::Write;

use clap::{Arg, ArgMatches};
use framelex::{help_summary, FrameKey, Store};

use super::{
    flag, list, number, option, optional, positional, show, string, CliError, Command, CommandResult, Registry,
};
use crate::session::{Focus, OutputMode, Session};

pub(super) fn register(registry: &mut Registry) {
    registry.register(Box::new(FrameCmd));
    registry.register(Box::new(Frames));
    registry.register(Box::new(FramesByLemma));
    registry.register(Box::new(LuCmd));
    registry.register(Box::new(Lus));
    registry.register(Box::new(Fes));
    registry.register(Box::new(FeCmd));
    registry.register(Box::new(Relations));
    registry.register(Box::new(FeRelations));
    registry.register(Box::new(RelationTypes));
    registry.register(Box::new(SemTypes));
    registry.register(Box::new(SemTypeCmd));
    registry.register(Box::new(SemTypeInherits));
    registry.register(Box::new(PropagateSemTypes));
    registry.register(Box::new(Stats));
    registry.register(Box::new(Help));
}

struct FrameCmd;

impl Command for FrameCmd {
    fn name(&self) -> &'static str {
        "frame"
    }

    fn about(&self) -> &'static str {
        "show a frame by exact name or ID"
    }

    fn args(&self) -> Vec<Arg> {
        vec![positional("frame", "frame name or ID")]
    }

    fn operations(&self) -> &'static [&'static str] {
        &["frame"]
    }

    fn run(&self, session: &mut Session, args: &ArgMatches, out: &mut dyn Write) -> CommandResult {
        let frame = session.store.frame(string(args, "frame").unwrap())?;
        show(session, out, &frame, || session.renderer().frame(&frame))?;
        session.reset(vec![Focus::Frame(frame)]);
        Ok(())
    }
}

struct Frames;

impl Command for Frames {
    fn name(&self) -> &'static str {
        "frames"
    }

    fn about(&self) -> &'static str {
        "list frames whose name matches a pattern"
    }

    fn args(&self) -> Vec<Arg> {
        vec![optional("pattern", "regular expression searched in frame names")]
    }

    fn operations(&self) -> &'static [&'static str] {
        &["frames", "frame_ids_and_names"]
    }

    fn run(&self, session: &mut Session, args: &ArgMatches, out: &mut dyn Write) -> CommandResult {
        // The index alone answers this, so no frame file is read.
        let frames = session.store.frame_ids_and_names(string(args, "pattern"))?;
        for (id, name) in frames {
            match session.mode {
                OutputMode::Display => writeln!(out, "<frame ID={id} name={name}>")?,
                OutputMode::Ids => writeln!(out, "{id}\t{name}")?,
            }
        }
        Ok(())
    }
}

struct FramesByLemma;

impl Command for FramesByLemma {
    fn name(&self) -> &'static str {
        "frames-by-lemma"
    }

    fn about(&self) -> &'static str {
        "list frames having an LU whose name matches a pattern"
    }

    fn args(&self) -> Vec<Arg> {
        vec![positional("pattern", "regular expression searched in LU names")]
    }

    fn operations(&self) -> &'static [&'static str] {
        &["frames_by_lemma"]
    }

    fn run(&self, session: &mut Session, args: &ArgMatches, out: &mut dyn Write) -> CommandResult {
        let frames = session.store.frames_by_lemma(string(args, "pattern").unwrap())?;
        list(session, out, &frames)
    }
}

struct LuCmd;

impl Command for LuCmd {
    fn name(&self) -> &'static str {
        "lu"
    }

    fn about(&self) -> &'static str {
        "show a lexical unit by ID, or by name within the current frame"
    }

    fn args(&self) -> Vec<Arg> {
        vec![positional("lu", "LU ID, or an LU name such as revenge.n")]
    }

    fn operations(&self) -> &'static [&'static str] {
        &["lu"]
    }

    fn run(&self, session: &mut Session, args: &ArgMatches, out: &mut dyn Write) -> CommandResult {
        let key = string(args, "lu").unwrap();
        let in_frame = session
            .frame_in_focus()
            .and_then(|frame| frame.lu(key).cloned().map(|lu| (frame, lu)));
        let (frame, lu) = match in_frame {
            Some(pair) => pair,
            None => {
                let lu = session.store.lu(number(args, "lu")?)?;
                (session.store.frame(lu.frame_id)?, lu)
            }
        };
        show(session, out, &lu, || session.renderer().lu(&lu))?;
        session.reset(vec![Focus::Frame(frame), Focus::Lu(lu)]);
        Ok(())
    }
}

fn frame_option() -> Arg {
    option("frame", "frame name, ID or name pattern to restrict to")
}

struct Lus;

impl Command for Lus {
    fn name(&self) -> &'static str {
        "lus"
    }

    fn about(&self) -> &'static str {
        "list lexical units whose name matches a pattern"
    }

    fn args(&self) -> Vec<Arg> {
        vec![
            optional("pattern", "regular expression searched in LU names"),
            frame_option(),
        ]
    }

    fn operations(&self) -> &'static [&'static str] {
        &["lus"]
    }

    fn run(&self, session: &mut Session, args: &ArgMatches, out: &mut dyn Write) -> CommandResult {
        let lus = session.store.lus(string(args, "pattern"), string(args, "frame"))?;
        list(session, out, &lus)
    }
}

struct Fes;

impl Command for Fes {
    fn name(&self) -> &'static str {
        "fes"
    }

    fn about(&self) -> &'static str {
        "list frame elements whose name matches a pattern"
    }

    fn args(&self) -> Vec<Arg> {
        vec![
            optional("pattern", "regular expression searched in FE names"),
            frame_option(),
        ]
    }

    fn operations(&self) -> &'static [&'static str] {
        &["fes"]
    }

    fn run(&self, session: &mut Session, args: &ArgMatches, out: &mut dyn Write) -> CommandResult {
        let fes = session.store.fes(string(args, "pattern"), string(args, "frame"))?;
        list(session, out, &fes)
    }
}

struct FeCmd;

impl Command for FeCmd {
    fn name(&self) -> &'static str {
        "fe"
    }

    fn about(&self) -> &'static str {
        "show a frame element of the current frame, or of --frame"
    }

    fn args(&self) -> Vec<Arg> {
        vec![positional("fe", "FE name"), option("frame", "frame name or ID")]
    }

    fn run(&self, session: &mut Session, args: &ArgMatches, out: &mut dyn Write) -> CommandResult {
        let frame = match string(args, "frame") {
            Some(key) => session.store.frame(key)?,
            None => session
                .frame_in_focus()
                .ok_or_else(|| CliError::Usage("fe needs a frame: show one first or pass --frame".into()))?,
        };
        let name = string(args, "fe").unwrap();
        let fe = frame
            .fe(name)
            .cloned()
            .ok_or_else(|| CliError::NotFound(format!("no frame element {name:?} in frame {}", frame.name)))?;
        show(session, out, &fe, || Ok(session.renderer().fe(&fe)))?;
        session.reset(vec![Focus::Frame(frame), Focus::Fe(fe)]);
        Ok(())
    }
}

fn relation_args() -> Vec<Arg> {
    vec![
        option("frame", "frame taking part in the relation"),
        option("frame2", "second frame; relations between the two"),
        option("type", "relation type name, e.g. Inheritance"),
    ]
}

fn relation_filter(args: &ArgMatches) -> (Option<FrameKey>, Option<FrameKey>, Option<&str>) {
    (
        string(args, "frame").map(FrameKey::from),
        string(args, "frame2").map(FrameKey::from),
        string(args, "type"),
    )
}

struct Relations;

impl Command for Relations {
    fn name(&self) -> &'static str {
        "relations"
    }

    fn about(&self) -> &'static str {
        "list frame-to-frame relations"
    }

    fn args(&self) -> Vec<Arg> {
        relation_args()
    }

    fn operations(&self) -> &'static [&'static str] {
        &["frame_relations"]
    }

    fn run(&self, session: &mut Session, args: &ArgMatches, out: &mut dyn Write) -> CommandResult {
        let (frame, frame2, rtype) = relation_filter(args);
        let rels = session.store.frame_relations(frame, frame2, rtype)?;
        list(session, out, &rels)
    }
}

struct FeRelations;

impl Command for FeRelations {
    fn name(&self) -> &'static str {
        "fe-relations"
    }

    fn about(&self) -> &'static str {
        "list FE-to-FE relations of the matching frame relations"
    }

    fn args(&self) -> Vec<Arg> {
        relation_args()
    }

    fn operations(&self) -> &'static [&'static str] {
        &["fe_relations"]
    }

    fn run(&self, session: &mut Session, args: &ArgMatches, out: &mut dyn Write) -> CommandResult {
        let (frame, frame2, rtype) = relation_filter(args);
        let fers = session.store.fe_relations(frame, frame2, rtype)?;
        list(session, out, &fers)
    }
}

struct RelationTypes;

impl Command for RelationTypes {
    fn name(&self) -> &'static str {
        "relation-types"
    }

    fn about(&self) -> &'static str {
        "list frame relation types"
    }

    fn operations(&self) -> &'static [&'static str] {
        &["frame_relation_types"]
    }

    fn run(&self, session: &mut Session, _: &ArgMatches, out: &mut dyn Write) -> CommandResult {
        list(session, out, &session.store.frame_relation_types()?)
    }
}

struct SemTypes;

impl Command for SemTypes {
    fn name(&self) -> &'static str {
        "semtypes"
    }

    fn about(&self) -> &'static str {
        "list semantic types"
    }

    fn operations(&self) -> &'static [&'static str] {
        &["semtypes"]
    }

    fn run(&self, session: &mut Session, _: &ArgMatches, out: &mut dyn Write) -> CommandResult {
        let types = session.store.semtypes()?;
        list(session, out, &types)
    }
}

struct SemTypeCmd;

impl Command for SemTypeCmd {
    fn name(&self) -> &'static str {
        "semtype"
    }

    fn about(&self) -> &'static str {
        "show a semantic type by name, abbreviation or ID"
    }

    fn args(&self) -> Vec<Arg> {
        vec![positional("key", "name, abbreviation or ID")]
    }

    fn operations(&self) -> &'static [&'static str] {
        &["semtype"]
    }

    fn run(&self, session: &mut Session, args: &ArgMatches, out: &mut dyn Write) -> CommandResult {
        let st = session.store.semtype(string(args, "key").unwrap())?;
        show(session, out, &st, || session.renderer().semtype(&st))?;
        session.reset(vec![Focus::SemType(st)]);
        Ok(())
    }
}

struct SemTypeInherits;

impl Command for SemTypeInherits {
    fn name(&self) -> &'static str {
        "semtype-inherits"
    }

    fn about(&self) -> &'static str {
        "tell whether one semantic type is the other or descends from it"
    }

    fn args(&self) -> Vec<Arg> {
        vec![
            positional("sub", "the more specific type"),
            positional("super", "the more general type"),
        ]
    }

    fn operations(&self) -> &'static [&'static str] {
        &["semtype_inherits"]
    }

    fn run(&self, session: &mut Session, args: &ArgMatches, out: &mut dyn Write) -> CommandResult {
        let result = session
            .store
            .semtype_inherits(string(args, "sub").unwrap(), string(args, "super").unwrap())?;
        writeln!(out, "{result}")?;
        Ok(())
    }
}

struct PropagateSemTypes;

impl Command for PropagateSemTypes {
    fn name(&self) -> &'static str {
        "propagate-semtypes"
    }

    fn about(&self) -> &'static str {
        "copy FE semantic types along FE relations"
    }

    fn operations(&self) -> &'static [&'static str] {
        &["propagate_semtypes"]
    }

    fn run(&self, session: &mut Session, _: &ArgMatches, out: &mut dyn Write) -> CommandResult {
        let changed = session.store.propagate_semtypes()?;
        writeln!(out, "{changed} frame elements gained a semantic type")?;
        Ok(())
    }
}

struct Stats;

impl Command for Stats {
    fn name(&self) -> &'static str {
        "stats"
    }

    fn about(&self) -> &'static str {
        "count every kind of entry; reads the whole database"
    }

    fn run(&self, session: &mut Session, _: &ArgMatches, out: &mut dyn Write) -> CommandResult {
        write!(out, "{}", Counts::collect(&session.store)?)?;
        Ok(())
    }
}

/// Entry counts over the whole database.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Counts {
    pub frames: usize,
    pub lexical_units: usize,
    pub frame_elements: usize,
    pub frame_relations: usize,
    pub semantic_types: usize,
    pub documents: usize,
    pub exemplar_sentences: usize,
    pub frame_annotation_sets: usize,
}

impl Counts {
    pub fn collect(store: &Store) -> Result<Counts, framelex::Error> {
        let frames = store.frames(None)?;
        let relations = store.relation_registry()?;
        Ok(Counts {
            frames: frames.len(),
            lexical_units: store.lu_index()?.entries.len(),
            frame_elements: frames.iter().map(|f| f.fes.len()).sum(),
            frame_relations: relations.relations.len(),
            semantic_types: store.semtype_registry()?.types.len(),
            documents: store.document_index()?.entries.len(),
            exemplar_sentences: store.exemplars(None)?.len(),
            frame_annotation_sets: store.annotations(None, true, true)?.len(),
        })
    }
}

impl fmt::Display for Counts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "frames: {}", self.frames)?;
        writeln!(f, "lexical units: {}", self.lexical_units)?;
        writeln!(f, "frame elements: {}", self.frame_elements)?;
        writeln!(f, "frame relations: {}", self.frame_relations)?;
        writeln!(f, "semantic types: {}", self.semantic_types)?;
        writeln!(f, "full-text documents: {}", self.documents)?;
        writeln!(f, "exemplar sentences: {}", self.exemplar_sentences)?;
        writeln!(f, "frame annotation sets: {}", self.frame_annotation_sets)
    }
}

struct Help;

impl Command for Help {
    fn name(&self) -> &'static str {
        "help"
    }

    fn about(&self) -> &'static str {
        "list library operations and commands"
    }

    fn args(&self) -> Vec<Arg> {
        vec![flag("commands", "list commands only")]
    }

    fn operations(&self) -> &'static [&'static str] {
        &["help"]
    }

    fn run(&self, session: &mut Session, args: &ArgMatches, out: &mut dyn Write) -> CommandResult {
        if !args.get_flag("commands") {
            writeln!(out, "{}", help_summary())?;
        }
        writeln!(out, "Commands:")?;
        write!(out, "{}", Registry::standard().table(session.is_interactive()))?;
        Ok(())
    }
}
