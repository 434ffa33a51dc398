//! In-memory entities of a FrameNet-style lexicon.
//!
//! Entities are immutable once built and shared as `Arc`s. Owning
//! back-references (FE → frame, LU → frame, sentence → document,
//! annotation set → sentence) are `Weak` pointers into the same graph, so
//! they resolve to the very objects cached by the store. Cross-file links
//! (relation → frame, semantic type → super type) are stored as IDs and
//! names and resolved through the store.
//!
//! The one piece of mutable state is [`FrameElement::sem_type`], which
//! semantic-type propagation may fill in exactly once.

mod annotation;
mod record;

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Weak};

use indexmap::IndexMap;
use once_cell::sync::OnceCell;

pub use annotation::{
    AnnotationSet, AnnotationStatus, Document, FeAnnotation, FeSpan, Label, Layer, LuExemplars, NullFe,
    NullInstantiation, Sentence, SentenceSource, SpanLabel, SubCorpus, POS_SPECIFIC_LAYERS,
};
pub use record::{EntityKind, Record, Value};

pub type FrameId = u32;
pub type FeId = u32;
pub type LuId = u32;
pub type SemTypeId = u32;
pub type SentenceId = u32;
pub type DocumentId = u32;

pub const REPORT_BASE_URL: &str = "https://framenet2.icsi.berkeley.edu/fnReports/data";

/// Character offsets into a sentence text, both ends inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        Span { start, end }
    }

    pub fn width(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn overlaps(&self, other: &Span) -> bool {
        self.start <= other.end && other.start <= self.end
    }

    /// The covered substring of `text`, counting characters.
    pub fn slice<'t>(&self, text: &'t str) -> &'t str {
        let mut indices = text.char_indices().map(|(i, _)| i).chain(Some(text.len()));
        let from = indices.nth(self.start).unwrap_or(text.len());
        let to = indices.nth(self.end - self.start).unwrap_or(text.len());
        &text[from..to]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoreType {
    Core,
    CoreUnexpressed,
    Peripheral,
    ExtraThematic,
}

impl CoreType {
    /// Display order of the FE groups.
    pub const ALL: [CoreType; 4] = [
        CoreType::Core,
        CoreType::CoreUnexpressed,
        CoreType::Peripheral,
        CoreType::ExtraThematic,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CoreType::Core => "Core",
            CoreType::CoreUnexpressed => "Core-Unexpressed",
            CoreType::Peripheral => "Peripheral",
            CoreType::ExtraThematic => "Extra-Thematic",
        }
    }
}

impl FromStr for CoreType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CoreType::ALL
            .into_iter()
            .find(|ct| ct.as_str() == s)
            .ok_or_else(|| format!("unknown coreType {s:?}"))
    }
}

impl fmt::Display for CoreType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A by-ID pointer to an entry of the semantic type registry.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemTypeRef {
    pub id: SemTypeId,
    pub name: String,
}

#[derive(Debug)]
pub struct Frame {
    pub id: FrameId,
    pub name: String,
    pub definition: String,
    pub definition_markup: String,
    pub created_by: String,
    pub created_date: String,
    /// File order.
    pub fes: IndexMap<String, Arc<FrameElement>>,
    pub fe_core_sets: Vec<Vec<String>>,
    /// File order.
    pub lex_units: IndexMap<String, Arc<LexicalUnit>>,
    pub sem_types: Vec<SemTypeRef>,
}

impl Frame {
    pub fn url(&self) -> String {
        format!("{REPORT_BASE_URL}/frame/{}.xml", self.name)
    }

    pub fn fe(&self, name: &str) -> Option<&Arc<FrameElement>> {
        self.fes.get(name)
    }

    pub fn fe_by_id(&self, id: FeId) -> Option<&Arc<FrameElement>> {
        self.fes.values().find(|fe| fe.id == id)
    }

    pub fn lu(&self, name: &str) -> Option<&Arc<LexicalUnit>> {
        self.lex_units.get(name)
    }

    pub fn lu_by_id(&self, id: LuId) -> Option<&Arc<LexicalUnit>> {
        self.lex_units.values().find(|lu| lu.id == id)
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<frame ID={} name={}>", self.id, self.name)
    }
}

#[derive(Debug)]
pub struct FrameElement {
    pub id: FeId,
    pub name: String,
    pub abbrev: String,
    pub core_type: CoreType,
    pub definition: String,
    pub definition_markup: String,
    pub created_by: String,
    pub created_date: String,
    pub(crate) sem_type: OnceCell<SemTypeRef>,
    pub(crate) frame: Weak<Frame>,
    pub frame_id: FrameId,
    pub frame_name: String,
}

impl FrameElement {
    /// Selectional restriction, either from the data or from propagation.
    pub fn sem_type(&self) -> Option<&SemTypeRef> {
        self.sem_type.get()
    }

    /// Sets the semantic type if none is present. Returns whether it was set.
    pub(crate) fn assign_sem_type(&self, st: SemTypeRef) -> bool {
        self.sem_type.set(st).is_ok()
    }

    pub fn frame(&self) -> Option<Arc<Frame>> {
        self.frame.upgrade()
    }
}

impl fmt::Display for FrameElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<fe ID={} name={}>", self.id, self.name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lexeme {
    pub form: String,
    pub pos: String,
    pub headword: bool,
    pub break_before: bool,
    pub order: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SentenceCount {
    pub annotated: u32,
    pub total: u32,
}

#[derive(Debug)]
pub struct LexicalUnit {
    pub id: LuId,
    /// Lemma plus `.pos` suffix, e.g. `revenge.n`.
    pub name: String,
    pub pos: String,
    pub status: String,
    pub definition: String,
    pub lexemes: Vec<Lexeme>,
    pub sentence_count: SentenceCount,
    pub sem_types: Vec<SemTypeRef>,
    pub created_by: String,
    pub created_date: String,
    pub(crate) frame: Weak<Frame>,
    pub frame_id: FrameId,
    pub frame_name: String,
}

impl LexicalUnit {
    pub fn url(&self) -> String {
        format!("{REPORT_BASE_URL}/lu/lu{}.xml", self.id)
    }

    pub fn frame(&self) -> Option<Arc<Frame>> {
        self.frame.upgrade()
    }

    /// The name without its part-of-speech suffix.
    pub fn lemma(&self) -> &str {
        self.name.rsplit_once('.').map_or(&self.name, |(lemma, _)| lemma)
    }
}

impl fmt::Display for LexicalUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<lu ID={} name={}>", self.id, self.name)
    }
}

#[derive(Debug)]
pub struct FrameRelationType {
    pub id: u32,
    pub name: String,
    /// Role label of the super side, e.g. `Parent`.
    pub super_role: String,
    /// Role label of the sub side, e.g. `Child`.
    pub sub_role: String,
    pub relations: Vec<Arc<FrameRelation>>,
}

impl fmt::Display for FrameRelationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<framerelationtype ID={} name={}>", self.id, self.name)
    }
}

#[derive(Debug)]
pub struct FrameRelation {
    pub id: u32,
    pub type_name: String,
    pub super_role: String,
    pub sub_role: String,
    pub super_frame_id: FrameId,
    pub super_frame_name: String,
    pub sub_frame_id: FrameId,
    pub sub_frame_name: String,
    pub fe_relations: Vec<Arc<FeRelation>>,
    pub(crate) relation_type: Weak<FrameRelationType>,
}

impl FrameRelation {
    pub fn relation_type(&self) -> Option<Arc<FrameRelationType>> {
        self.relation_type.upgrade()
    }

    pub fn involves(&self, frame: FrameId) -> bool {
        self.super_frame_id == frame || self.sub_frame_id == frame
    }
}

impl fmt::Display for FrameRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "<{}={} -- {} -> {}={}>",
            self.super_role, self.super_frame_name, self.type_name, self.sub_role, self.sub_frame_name
        )
    }
}

#[derive(Debug)]
pub struct FeRelation {
    pub id: u32,
    pub super_fe_id: FeId,
    pub super_fe_name: String,
    pub sub_fe_id: FeId,
    pub sub_fe_name: String,
    pub(crate) frame_relation: Weak<FrameRelation>,
}

impl FeRelation {
    pub fn frame_relation(&self) -> Option<Arc<FrameRelation>> {
        self.frame_relation.upgrade()
    }
}

impl fmt::Display for FeRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.frame_relation() {
            Some(rel) => write!(
                f,
                "<{}={}.{} -- {} -> {}={}.{}>",
                rel.super_role,
                rel.super_frame_name,
                self.super_fe_name,
                rel.type_name,
                rel.sub_role,
                rel.sub_frame_name,
                self.sub_fe_name
            ),
            None => write!(f, "<{} -> {}>", self.super_fe_name, self.sub_fe_name),
        }
    }
}

#[derive(Debug)]
pub struct SemType {
    pub id: SemTypeId,
    pub name: String,
    pub abbrev: String,
    pub definition: String,
    pub super_type: Option<SemTypeId>,
    pub sub_types: Vec<SemTypeId>,
}

impl SemType {
    pub fn as_ref(&self) -> SemTypeRef {
        SemTypeRef {
            id: self.id,
            name: self.name.clone(),
        }
    }
}

impl fmt::Display for SemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<semtype ID={} name={}>", self.id, self.name)
    }
}
