use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Weak};

use indexmap::IndexMap;

use super::{DocumentId, FeId, FrameId, LuId, SentenceId, Span};

/// Layer names that carry part-of-speech specific annotation (support
/// verbs, copulas, governors and the like).
pub const POS_SPECIFIC_LAYERS: &[&str] = &[
    "Noun", "Verb", "Adj", "Adv", "Prep", "Scon", "Art", "Num", "Pron", "Conj", "Intj", "CCon",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NullInstantiation {
    /// Definite null instantiation.
    Dni,
    /// Indefinite null instantiation.
    Ini,
    /// Constructional null instantiation.
    Cni,
    /// Incorporated FE; appears in release data alongside the three above.
    Inc,
}

impl NullInstantiation {
    pub fn as_str(&self) -> &'static str {
        match self {
            NullInstantiation::Dni => "DNI",
            NullInstantiation::Ini => "INI",
            NullInstantiation::Cni => "CNI",
            NullInstantiation::Inc => "INC",
        }
    }
}

impl FromStr for NullInstantiation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "DNI" => Ok(NullInstantiation::Dni),
            "INI" => Ok(NullInstantiation::Ini),
            "CNI" => Ok(NullInstantiation::Cni),
            "INC" => Ok(NullInstantiation::Inc),
            other => Err(format!("unknown itype {other:?}")),
        }
    }
}

impl fmt::Display for NullInstantiation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnnotationStatus {
    Manual,
    Unann,
    /// Any other status code, kept verbatim.
    Other(String),
}

impl AnnotationStatus {
    pub fn parse(s: &str) -> Self {
        match s {
            "MANUAL" => AnnotationStatus::Manual,
            "UNANN" => AnnotationStatus::Unann,
            other => AnnotationStatus::Other(other.to_string()),
        }
    }

    pub fn as_str(&self) -> &str {
        match self {
            AnnotationStatus::Manual => "MANUAL",
            AnnotationStatus::Unann => "UNANN",
            AnnotationStatus::Other(s) => s,
        }
    }
}

/// One label of a layer, as stored in the data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Label {
    pub name: String,
    pub span: Option<Span>,
    pub itype: Option<NullInstantiation>,
    pub fe_id: Option<FeId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layer {
    pub name: String,
    pub rank: u32,
    pub labels: Vec<Label>,
}

impl Layer {
    pub fn spans(&self) -> impl Iterator<Item = (Span, &str)> {
        self.labels.iter().filter_map(|l| l.span.map(|s| (s, l.name.as_str())))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanLabel {
    pub span: Span,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeSpan {
    pub span: Span,
    pub name: String,
    pub rank: u32,
    pub fe_id: Option<FeId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NullFe {
    pub name: String,
    pub kind: NullInstantiation,
    pub rank: u32,
    pub fe_id: Option<FeId>,
}

/// FE annotation of one set: overt spans (rank 1 first, then later ranks)
/// and null-instantiated FEs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FeAnnotation {
    pub overt: Vec<FeSpan>,
    pub null: Vec<NullFe>,
}

impl FeAnnotation {
    pub fn is_empty(&self) -> bool {
        self.overt.is_empty() && self.null.is_empty()
    }

    pub fn null_kind(&self, fe: &str) -> Option<NullInstantiation> {
        self.null.iter().find(|n| n.name == fe).map(|n| n.kind)
    }
}

#[derive(Debug)]
pub struct AnnotationSet {
    pub id: u32,
    pub status: AnnotationStatus,
    pub created_date: String,
    pub lu_id: Option<LuId>,
    pub lu_name: Option<String>,
    pub frame_id: Option<FrameId>,
    pub frame_name: Option<String>,
    /// All layers in file order.
    pub layers: Vec<Layer>,
    pub target: Vec<Span>,
    pub fe: FeAnnotation,
    pub gf: Vec<SpanLabel>,
    pub pt: Vec<SpanLabel>,
    /// Layers other than Target, FE, GF and PT, labels of equal names merged.
    pub other_layers: IndexMap<String, Vec<Label>>,
    /// Position within the owning sentence's annotation sets.
    pub index: usize,
    pub(crate) sentence: Weak<Sentence>,
}

impl AnnotationSet {
    /// Frame sets carry a target and FE annotation; the set at index 0 of
    /// every sentence holds sentence-level layers instead.
    pub fn is_frame_set(&self) -> bool {
        self.index > 0
    }

    pub fn sentence(&self) -> Option<Arc<Sentence>> {
        self.sentence.upgrade()
    }

    pub fn layer(&self, name: &str, rank: u32) -> Option<&Layer> {
        self.layers.iter().find(|l| l.name == name && l.rank == rank)
    }

    pub fn layers_named<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a Layer> + 'a {
        self.layers.iter().filter(move |l| l.name == name)
    }

    /// The part-of-speech specific layer with at least one label, if any.
    pub fn pos_specific_layer(&self) -> Option<&Layer> {
        self.layers
            .iter()
            .find(|l| POS_SPECIFIC_LAYERS.contains(&l.name.as_str()) && !l.labels.is_empty())
    }

    /// Highest FE layer rank that has labels.
    pub fn fe_ranks(&self) -> u32 {
        self.fe
            .overt
            .iter()
            .map(|s| s.rank)
            .chain(self.fe.null.iter().map(|n| n.rank))
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for AnnotationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<annotationset ID={}", self.id)?;
        if let Some(frame) = &self.frame_name {
            write!(f, " frame={frame}")?;
        }
        if let Some(lu) = &self.lu_name {
            write!(f, " lu={lu}")?;
        }
        write!(f, " status={}>", self.status.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SentenceSource {
    Exemplar {
        lu_id: LuId,
        lu_name: String,
        frame_id: FrameId,
        frame_name: String,
        sub_corpus: String,
    },
    FullText {
        doc_id: DocumentId,
        doc_name: String,
        corpus_id: u32,
        corpus_name: String,
        paragraph_no: u32,
    },
}

#[derive(Debug)]
pub struct Sentence {
    pub id: SentenceId,
    pub text: String,
    pub sent_no: u32,
    pub a_pos: u32,
    pub pos: Vec<SpanLabel>,
    pub pos_tagset: String,
    /// Index 0 is the sentence-level set; frame sets follow in file order.
    pub annotation_sets: Vec<Arc<AnnotationSet>>,
    pub source: SentenceSource,
    pub(crate) document: Weak<Document>,
}

impl Sentence {
    pub fn is_exemplar(&self) -> bool {
        matches!(self.source, SentenceSource::Exemplar { .. })
    }

    pub fn frame_sets(&self) -> &[Arc<AnnotationSet>] {
        self.annotation_sets.get(1..).unwrap_or(&[])
    }

    /// The single frame annotation set of an exemplar sentence.
    pub fn frame_set(&self) -> Option<&Arc<AnnotationSet>> {
        self.annotation_sets.get(1)
    }

    pub fn document(&self) -> Option<Arc<Document>> {
        self.document.upgrade()
    }

    pub fn doc_id(&self) -> Option<DocumentId> {
        match self.source {
            SentenceSource::FullText { doc_id, .. } => Some(doc_id),
            SentenceSource::Exemplar { .. } => None,
        }
    }

    pub fn corpus_name(&self) -> Option<&str> {
        match &self.source {
            SentenceSource::FullText { corpus_name, .. } => Some(corpus_name),
            SentenceSource::Exemplar { .. } => None,
        }
    }

    /// Length of the text in characters; the unit of all span offsets.
    pub fn char_len(&self) -> usize {
        self.text.chars().count()
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.is_exemplar() {
            "sentence"
        } else {
            "fulltext_sentence"
        };
        write!(f, "<{kind} ID={} text={:?}>", self.id, self.text)
    }
}

#[derive(Debug)]
pub struct Document {
    pub id: DocumentId,
    pub name: String,
    pub description: String,
    pub corpus_id: u32,
    pub corpus_name: String,
    pub sentences: Vec<Arc<Sentence>>,
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<document ID={} name={}>", self.id, self.name)
    }
}

#[derive(Debug)]
pub struct SubCorpus {
    pub name: String,
    pub sentences: Vec<Arc<Sentence>>,
}

/// The exemplar sentences of one LU, grouped by subcorpus.
#[derive(Debug)]
pub struct LuExemplars {
    pub lu_id: LuId,
    pub sub_corpora: Vec<SubCorpus>,
}

impl LuExemplars {
    pub fn empty(lu_id: LuId) -> Self {
        LuExemplars {
            lu_id,
            sub_corpora: Vec::new(),
        }
    }

    /// Sentences of all subcorpora in file order.
    pub fn sentences(&self) -> impl Iterator<Item = &Arc<Sentence>> {
        self.sub_corpora.iter().flat_map(|sc| sc.sentences.iter())
    }

    pub fn len(&self) -> usize {
        self.sub_corpora.iter().map(|sc| sc.sentences.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, index: usize) -> Option<&Arc<Sentence>> {
        self.sentences().nth(index)
    }
}
