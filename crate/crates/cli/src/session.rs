//! State carried between commands: the store, display settings and the
//! stack of entities the browser has drilled into.

use std::sync::Arc;

use framelex::model::{AnnotationSet, Document, Frame, FrameElement, LexicalUnit, SemType, Sentence};
use framelex::{DisplayOptions, Renderer, Store};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputMode {
    /// Full text displays.
    Display,
    /// One ID per line.
    Ids,
}

/// An entity the browser is looking at.
#[derive(Debug, Clone)]
pub enum Focus {
    Frame(Arc<Frame>),
    Lu(Arc<LexicalUnit>),
    Fe(Arc<FrameElement>),
    SemType(Arc<SemType>),
    Sentence(Arc<Sentence>),
    AnnotationSet(Arc<AnnotationSet>),
    Document(Arc<Document>),
}

impl Focus {
    /// Path component shown in the prompt.
    pub fn label(&self) -> String {
        match self {
            Focus::Frame(f) => f.name.clone(),
            Focus::Lu(lu) => lu.name.clone(),
            Focus::Fe(fe) => fe.name.clone(),
            Focus::SemType(st) => st.name.clone(),
            Focus::Sentence(s) => s.id.to_string(),
            Focus::AnnotationSet(a) => format!("[{}]", a.index),
            Focus::Document(d) => d.name.clone(),
        }
    }
}

pub struct Session {
    pub store: Store,
    pub options: DisplayOptions,
    pub mode: OutputMode,
    stack: Vec<Focus>,
    interactive: bool,
    quit: bool,
}

impl Session {
    pub fn new(store: Store, options: DisplayOptions, mode: OutputMode) -> Self {
        Session {
            store,
            options,
            mode,
            stack: Vec::new(),
            interactive: false,
            quit: false,
        }
    }

    pub fn renderer(&self) -> Renderer<'_> {
        Renderer::new(&self.store, self.options)
    }

    pub fn focus(&self) -> Option<&Focus> {
        self.stack.last()
    }

    pub fn stack(&self) -> &[Focus] {
        &self.stack
    }

    pub fn push(&mut self, focus: Focus) {
        self.stack.push(focus);
    }

    /// Replaces the whole context, as a top-level lookup does.
    pub fn reset(&mut self, stack: Vec<Focus>) {
        self.stack = stack;
    }

    /// Drops the innermost entity. Returns false at the top level.
    pub fn up(&mut self) -> bool {
        self.stack.pop().is_some()
    }

    /// The innermost frame in the context, if any.
    pub fn frame_in_focus(&self) -> Option<Arc<Frame>> {
        self.stack.iter().rev().find_map(|f| match f {
            Focus::Frame(frame) => Some(frame.clone()),
            Focus::Lu(lu) => lu.frame(),
            Focus::Fe(fe) => fe.frame(),
            _ => None,
        })
    }

    pub fn prompt(&self) -> String {
        if self.stack.is_empty() {
            return "framelex> ".to_string();
        }
        let path: Vec<String> = self.stack.iter().map(Focus::label).collect();
        format!("{}> ", path.join("/"))
    }

    pub fn is_interactive(&self) -> bool {
        self.interactive
    }

    pub fn set_interactive(&mut self, interactive: bool) {
        self.interactive = interactive;
    }

    pub fn quit_requested(&self) -> bool {
        self.quit
    }

    pub fn request_quit(&mut self) {
        self.quit = true;
    }
}
