use std::fmt;

use super::annotation::{AnnotationSet, Document, Sentence, SentenceSource, SpanLabel};
use super::{
    FeRelation, Frame, FrameElement, FrameRelation, FrameRelationType, LexicalUnit, SemType, SemTypeRef, Span,
};

/// Entity-kind tag, exposed as the `_type` attribute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EntityKind {
    Frame,
    Fe,
    Lu,
    FrameRelation,
    FeRelation,
    FrameRelationType,
    SemType,
    Sentence,
    AnnotationSet,
    FullTextSentence,
    Document,
}

impl EntityKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            EntityKind::Frame => "frame",
            EntityKind::Fe => "fe",
            EntityKind::Lu => "lu",
            EntityKind::FrameRelation => "framerelation",
            EntityKind::FeRelation => "ferelation",
            EntityKind::FrameRelationType => "framerelationtype",
            EntityKind::SemType => "semtype",
            EntityKind::Sentence => "sentence",
            EntityKind::AnnotationSet => "annotationset",
            EntityKind::FullTextSentence => "fulltext_sentence",
            EntityKind::Document => "document",
        }
    }
}

impl fmt::Display for EntityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An attribute value. Entity-valued attributes are returned as references
/// rather than copies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Null,
    Str(String),
    Int(i64),
    Bool(bool),
    List(Vec<Value>),
    Ref {
        kind: EntityKind,
        id: u32,
        name: String,
    },
    /// Loaded through the store on demand (relations, exemplars).
    Deferred,
}

impl Value {
    fn str(s: &str) -> Value {
        Value::Str(s.to_string())
    }

    fn int(n: impl Into<i64>) -> Value {
        Value::Int(n.into())
    }

    fn opt_str(s: Option<&String>) -> Value {
        s.map_or(Value::Null, |s| Value::str(s))
    }

    fn opt_int(n: Option<u32>) -> Value {
        n.map_or(Value::Null, Value::int)
    }

    fn span(span: &Span) -> Value {
        Value::List(vec![Value::int(span.start as i64), Value::int(span.end as i64)])
    }

    fn span_label(l: &SpanLabel) -> Value {
        Value::List(vec![
            Value::int(l.span.start as i64),
            Value::int(l.span.end as i64),
            Value::str(&l.name),
        ])
    }

    fn semtype(st: &SemTypeRef) -> Value {
        Value::Ref {
            kind: EntityKind::SemType,
            id: st.id,
            name: st.name.clone(),
        }
    }

    fn entity(kind: EntityKind, id: u32, name: &str) -> Value {
        Value::Ref {
            kind,
            id,
            name: name.to_string(),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Null => f.write_str("None"),
            Value::Str(s) => f.write_str(s),
            Value::Int(n) => write!(f, "{n}"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::List(items) => {
                f.write_str("[")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str("]")
            }
            Value::Ref { kind, id, name } => write!(f, "<{kind} ID={id} name={name}>"),
            Value::Deferred => f.write_str("<not loaded>"),
        }
    }
}

/// Uniform attribute access over every entity type.
pub trait Record {
    fn kind(&self) -> EntityKind;

    /// Attribute names in a fixed order.
    fn attribute_names(&self) -> Vec<&str>;

    /// The value of an attribute, or `None` if the name is not an attribute.
    fn get(&self, name: &str) -> Option<Value>;
}

impl Record for Frame {
    fn kind(&self) -> EntityKind {
        EntityKind::Frame
    }

    fn attribute_names(&self) -> Vec<&str> {
        vec![
            "cBy",
            "cDate",
            "name",
            "ID",
            "_type",
            "definition",
            "definitionMarkup",
            "frameRelations",
            "FE",
            "FEcoreSets",
            "lexUnit",
            "semTypes",
            "URL",
        ]
    }

    fn get(&self, name: &str) -> Option<Value> {
        Some(match name {
            "cBy" => Value::str(&self.created_by),
            "cDate" => Value::str(&self.created_date),
            "name" => Value::str(&self.name),
            "ID" => Value::int(self.id),
            "_type" => Value::str(self.kind().as_str()),
            "definition" => Value::str(&self.definition),
            "definitionMarkup" => Value::str(&self.definition_markup),
            "frameRelations" => Value::Deferred,
            "FE" => Value::List(
                self.fes
                    .values()
                    .map(|fe| Value::entity(EntityKind::Fe, fe.id, &fe.name))
                    .collect(),
            ),
            "FEcoreSets" => Value::List(
                self.fe_core_sets
                    .iter()
                    .map(|set| Value::List(set.iter().map(|n| Value::str(n)).collect()))
                    .collect(),
            ),
            "lexUnit" => Value::List(
                self.lex_units
                    .values()
                    .map(|lu| Value::entity(EntityKind::Lu, lu.id, &lu.name))
                    .collect(),
            ),
            "semTypes" => Value::List(self.sem_types.iter().map(Value::semtype).collect()),
            "URL" => Value::Str(self.url()),
            _ => return None,
        })
    }
}

impl Record for FrameElement {
    fn kind(&self) -> EntityKind {
        EntityKind::Fe
    }

    fn attribute_names(&self) -> Vec<&str> {
        vec![
            "cBy",
            "cDate",
            "name",
            "ID",
            "_type",
            "abbrev",
            "coreType",
            "definition",
            "definitionMarkup",
            "semType",
            "frame",
        ]
    }

    fn get(&self, name: &str) -> Option<Value> {
        Some(match name {
            "cBy" => Value::str(&self.created_by),
            "cDate" => Value::str(&self.created_date),
            "name" => Value::str(&self.name),
            "ID" => Value::int(self.id),
            "_type" => Value::str(self.kind().as_str()),
            "abbrev" => Value::str(&self.abbrev),
            "coreType" => Value::str(self.core_type.as_str()),
            "definition" => Value::str(&self.definition),
            "definitionMarkup" => Value::str(&self.definition_markup),
            "semType" => self.sem_type().map_or(Value::Null, Value::semtype),
            "frame" => Value::entity(EntityKind::Frame, self.frame_id, &self.frame_name),
            _ => return None,
        })
    }
}

impl Record for LexicalUnit {
    fn kind(&self) -> EntityKind {
        EntityKind::Lu
    }

    fn attribute_names(&self) -> Vec<&str> {
        vec![
            "cBy",
            "cDate",
            "name",
            "ID",
            "_type",
            "POS",
            "status",
            "definition",
            "frame",
            "lexemes",
            "semTypes",
            "sentenceCount",
            "exemplars",
            "subCorpus",
            "URL",
        ]
    }

    fn get(&self, name: &str) -> Option<Value> {
        Some(match name {
            "cBy" => Value::str(&self.created_by),
            "cDate" => Value::str(&self.created_date),
            "name" => Value::str(&self.name),
            "ID" => Value::int(self.id),
            "_type" => Value::str(self.kind().as_str()),
            "POS" => Value::str(&self.pos),
            "status" => Value::str(&self.status),
            "definition" => Value::str(&self.definition),
            "frame" => Value::entity(EntityKind::Frame, self.frame_id, &self.frame_name),
            "lexemes" => Value::List(
                self.lexemes
                    .iter()
                    .map(|lx| {
                        Value::List(vec![
                            Value::str(&lx.form),
                            Value::str(&lx.pos),
                            Value::Bool(lx.headword),
                            Value::Bool(lx.break_before),
                        ])
                    })
                    .collect(),
            ),
            "semTypes" => Value::List(self.sem_types.iter().map(Value::semtype).collect()),
            "sentenceCount" => Value::List(vec![
                Value::int(self.sentence_count.annotated),
                Value::int(self.sentence_count.total),
            ]),
            "exemplars" | "subCorpus" => Value::Deferred,
            "URL" => Value::Str(self.url()),
            _ => return None,
        })
    }
}

impl Record for FrameRelationType {
    fn kind(&self) -> EntityKind {
        EntityKind::FrameRelationType
    }

    fn attribute_names(&self) -> Vec<&str> {
        vec![
            "name",
            "ID",
            "_type",
            "superFrameName",
            "subFrameName",
            "frameRelations",
        ]
    }

    fn get(&self, name: &str) -> Option<Value> {
        Some(match name {
            "name" => Value::str(&self.name),
            "ID" => Value::int(self.id),
            "_type" => Value::str(self.kind().as_str()),
            "superFrameName" => Value::str(&self.super_role),
            "subFrameName" => Value::str(&self.sub_role),
            "frameRelations" => Value::List(
                self.relations
                    .iter()
                    .map(|r| Value::entity(EntityKind::FrameRelation, r.id, &r.to_string()))
                    .collect(),
            ),
            _ => return None,
        })
    }
}

impl Record for FrameRelation {
    fn kind(&self) -> EntityKind {
        EntityKind::FrameRelation
    }

    fn attribute_names(&self) -> Vec<&str> {
        vec!["ID", "_type", "type", "superFrame", "subFrame", "feRelations"]
    }

    fn get(&self, name: &str) -> Option<Value> {
        Some(match name {
            "ID" => Value::int(self.id),
            "_type" => Value::str(self.kind().as_str()),
            "type" => match self.relation_type() {
                Some(t) => Value::entity(EntityKind::FrameRelationType, t.id, &t.name),
                None => Value::str(&self.type_name),
            },
            "superFrame" => Value::entity(EntityKind::Frame, self.super_frame_id, &self.super_frame_name),
            "subFrame" => Value::entity(EntityKind::Frame, self.sub_frame_id, &self.sub_frame_name),
            "feRelations" => Value::List(
                self.fe_relations
                    .iter()
                    .map(|r| Value::entity(EntityKind::FeRelation, r.id, &r.to_string()))
                    .collect(),
            ),
            _ => return None,
        })
    }
}

impl Record for FeRelation {
    fn kind(&self) -> EntityKind {
        EntityKind::FeRelation
    }

    fn attribute_names(&self) -> Vec<&str> {
        vec!["ID", "_type", "superFE", "subFE", "frameRelation"]
    }

    fn get(&self, name: &str) -> Option<Value> {
        Some(match name {
            "ID" => Value::int(self.id),
            "_type" => Value::str(self.kind().as_str()),
            "superFE" => Value::entity(EntityKind::Fe, self.super_fe_id, &self.super_fe_name),
            "subFE" => Value::entity(EntityKind::Fe, self.sub_fe_id, &self.sub_fe_name),
            "frameRelation" => match self.frame_relation() {
                Some(r) => Value::entity(EntityKind::FrameRelation, r.id, &r.to_string()),
                None => Value::Null,
            },
            _ => return None,
        })
    }
}

impl Record for SemType {
    fn kind(&self) -> EntityKind {
        EntityKind::SemType
    }

    fn attribute_names(&self) -> Vec<&str> {
        vec!["name", "ID", "_type", "abbrev", "definition", "superType", "subTypes"]
    }

    fn get(&self, name: &str) -> Option<Value> {
        Some(match name {
            "name" => Value::str(&self.name),
            "ID" => Value::int(self.id),
            "_type" => Value::str(self.kind().as_str()),
            "abbrev" => Value::str(&self.abbrev),
            "definition" => Value::str(&self.definition),
            "superType" => Value::opt_int(self.super_type),
            "subTypes" => Value::List(self.sub_types.iter().map(|&id| Value::int(id)).collect()),
            _ => return None,
        })
    }
}

impl Record for Sentence {
    fn kind(&self) -> EntityKind {
        if self.is_exemplar() {
            EntityKind::Sentence
        } else {
            EntityKind::FullTextSentence
        }
    }

    fn attribute_names(&self) -> Vec<&str> {
        let mut names = vec![
            "ID",
            "_type",
            "text",
            "sentNo",
            "aPos",
            "POS",
            "POS_tagset",
            "annotationSet",
        ];
        match &self.source {
            SentenceSource::Exemplar { .. } => {
                names.extend(["LU", "frame", "Target", "FE", "GF", "PT"]);
                if let Some(layer) = self.frame_set().and_then(|s| s.pos_specific_layer()) {
                    names.push(layer.name.as_str());
                }
            }
            SentenceSource::FullText { .. } => {
                names.extend(["docID", "corpusName", "paragNo"]);
            }
        }
        names
    }

    fn get(&self, name: &str) -> Option<Value> {
        let frame_set = self.frame_set().filter(|_| self.is_exemplar());
        Some(match (name, &self.source) {
            ("ID", _) => Value::int(self.id),
            ("_type", _) => Value::str(self.kind().as_str()),
            ("text", _) => Value::str(&self.text),
            ("sentNo", _) => Value::int(self.sent_no),
            ("aPos", _) => Value::int(self.a_pos),
            ("POS", _) => Value::List(self.pos.iter().map(Value::span_label).collect()),
            ("POS_tagset", _) => Value::str(&self.pos_tagset),
            ("annotationSet", _) => Value::List(
                self.annotation_sets
                    .iter()
                    .map(|a| Value::entity(EntityKind::AnnotationSet, a.id, a.status.as_str()))
                    .collect(),
            ),
            ("LU", SentenceSource::Exemplar { lu_id, lu_name, .. }) => Value::entity(EntityKind::Lu, *lu_id, lu_name),
            (
                "frame",
                SentenceSource::Exemplar {
                    frame_id, frame_name, ..
                },
            ) => Value::entity(EntityKind::Frame, *frame_id, frame_name),
            ("Target" | "FE" | "GF" | "PT", SentenceSource::Exemplar { .. }) => match frame_set {
                Some(set) => set.get(name)?,
                None => Value::List(Vec::new()),
            },
            ("docID", SentenceSource::FullText { doc_id, .. }) => Value::int(*doc_id),
            ("corpusName", SentenceSource::FullText { corpus_name, .. }) => Value::str(corpus_name),
            ("paragNo", SentenceSource::FullText { paragraph_no, .. }) => Value::int(*paragraph_no),
            (other, SentenceSource::Exemplar { .. }) => {
                let layer = frame_set.and_then(|s| s.pos_specific_layer())?;
                if layer.name != other {
                    return None;
                }
                Value::List(
                    layer
                        .labels
                        .iter()
                        .filter_map(|l| {
                            l.span.map(|s| {
                                Value::List(vec![
                                    Value::int(s.start as i64),
                                    Value::int(s.end as i64),
                                    Value::str(&l.name),
                                ])
                            })
                        })
                        .collect(),
                )
            }
            _ => return None,
        })
    }
}

impl Record for AnnotationSet {
    fn kind(&self) -> EntityKind {
        EntityKind::AnnotationSet
    }

    fn attribute_names(&self) -> Vec<&str> {
        let mut names = vec![
            "ID",
            "_type",
            "status",
            "luName",
            "luID",
            "frameName",
            "frameID",
            "LU",
            "frame",
            "Target",
            "FE",
            "GF",
            "PT",
        ];
        names.extend(self.other_layers.keys().map(String::as_str));
        names.extend(["layers", "text", "sent"]);
        names
    }

    fn get(&self, name: &str) -> Option<Value> {
        Some(match name {
            "ID" => Value::int(self.id),
            "_type" => Value::str(self.kind().as_str()),
            "status" => Value::str(self.status.as_str()),
            "luName" => Value::opt_str(self.lu_name.as_ref()),
            "luID" => Value::opt_int(self.lu_id),
            "frameName" => Value::opt_str(self.frame_name.as_ref()),
            "frameID" => Value::opt_int(self.frame_id),
            "LU" => match (self.lu_id, &self.lu_name) {
                (Some(id), Some(name)) => Value::entity(EntityKind::Lu, id, name),
                _ => Value::Null,
            },
            "frame" => match (self.frame_id, &self.frame_name) {
                (Some(id), Some(name)) => Value::entity(EntityKind::Frame, id, name),
                _ => Value::Null,
            },
            "layers" => Value::List(self.layers.iter().map(|l| Value::str(&l.name)).collect()),
            "text" => match self.sentence() {
                Some(s) => Value::str(&s.text),
                None => Value::Null,
            },
            "Target" => Value::List(self.target.iter().map(Value::span).collect()),
            "FE" => {
                let overt = self
                    .fe
                    .overt
                    .iter()
                    .map(|s| {
                        Value::List(vec![
                            Value::int(s.span.start as i64),
                            Value::int(s.span.end as i64),
                            Value::str(&s.name),
                        ])
                    })
                    .collect();
                let null = self
                    .fe
                    .null
                    .iter()
                    .map(|n| Value::List(vec![Value::str(&n.name), Value::str(n.kind.as_str())]))
                    .collect();
                Value::List(vec![Value::List(overt), Value::List(null)])
            }
            "GF" => Value::List(self.gf.iter().map(Value::span_label).collect()),
            "PT" => Value::List(self.pt.iter().map(Value::span_label).collect()),
            "sent" => match self.sentence() {
                Some(s) => Value::entity(s.kind(), s.id, &s.text),
                None => Value::Null,
            },
            other => {
                let labels = self.other_layers.get(other)?;
                Value::List(
                    labels
                        .iter()
                        .map(|l| match l.span {
                            Some(s) => Value::List(vec![
                                Value::int(s.start as i64),
                                Value::int(s.end as i64),
                                Value::str(&l.name),
                            ]),
                            None => Value::str(&l.name),
                        })
                        .collect(),
                )
            }
        })
    }
}

impl Record for Document {
    fn kind(&self) -> EntityKind {
        EntityKind::Document
    }

    fn attribute_names(&self) -> Vec<&str> {
        vec![
            "ID",
            "_type",
            "name",
            "description",
            "corpusID",
            "corpusName",
            "sentence",
        ]
    }

    fn get(&self, name: &str) -> Option<Value> {
        Some(match name {
            "ID" => Value::int(self.id),
            "_type" => Value::str(self.kind().as_str()),
            "name" => Value::str(&self.name),
            "description" => Value::str(&self.description),
            "corpusID" => Value::int(self.corpus_id),
            "corpusName" => Value::str(&self.corpus_name),
            "sentence" => Value::List(
                self.sentences
                    .iter()
                    .map(|s| Value::entity(EntityKind::FullTextSentence, s.id, &s.text))
                    .collect(),
            ),
            _ => return None,
        })
    }
}
