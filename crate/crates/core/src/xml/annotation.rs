use std::sync::{Arc, Weak};

use indexmap::IndexMap;
use roxmltree::Node;

use super::{child, children, decode, expect_root, parse_document, text_of, Ctx};
use crate::error::Result;
use crate::model::{
    AnnotationSet, AnnotationStatus, Document, FeAnnotation, FeSpan, Label, Layer, LuExemplars, NullFe, Sentence,
    SentenceSource, Span, SpanLabel, SubCorpus,
};

/// Part-of-speech tagsets recognised in sentence-level annotation.
const TAGSETS: &[&str] = &["BNC", "PENN"];

/// Reads one `lu/lu<ID>.xml` file: the LU's exemplar sentences grouped by
/// subcorpus. The valence section is skipped.
pub fn parse_lu_file(bytes: &[u8], origin: &str) -> Result<LuExemplars> {
    let ctx = Ctx::new(origin);
    let doc = parse_document(decode(bytes, origin)?, origin)?;
    let root = expect_root(&doc, ctx, "lexUnit")?;
    let lu = LuInfo {
        id: ctx.id(root, "ID")?,
        name: ctx.nonempty_attr(root, "name")?.to_string(),
        frame_id: ctx.id(root, "frameID")?,
        frame_name: ctx.nonempty_attr(root, "frame")?.to_string(),
    };

    let mut sub_corpora = Vec::new();
    for sc in children(root, "subCorpus") {
        let name = sc.attribute("name").unwrap_or_default().to_string();
        let mut sentences = Vec::new();
        for node in children(sc, "sentence") {
            let raw = read_sentence(ctx, node, Some(&lu))?;
            let source = SentenceSource::Exemplar {
                lu_id: lu.id,
                lu_name: lu.name.clone(),
                frame_id: lu.frame_id,
                frame_name: lu.frame_name.clone(),
                sub_corpus: name.clone(),
            };
            sentences.push(build_sentence(raw, source, Weak::new()));
        }
        sub_corpora.push(SubCorpus { name, sentences });
    }
    Ok(LuExemplars {
        lu_id: lu.id,
        sub_corpora,
    })
}

/// Reads one `fulltext/<Name>.xml` document. Sentences and their frame
/// annotation sets keep file order.
pub fn parse_fulltext_file(bytes: &[u8], origin: &str) -> Result<Arc<Document>> {
    let ctx = Ctx::new(origin);
    let doc = parse_document(decode(bytes, origin)?, origin)?;
    let root = expect_root(&doc, ctx, "fullTextAnnotation")?;
    let corpus = child(root, "header")
        .and_then(|h| child(h, "corpus"))
        .ok_or_else(|| ctx.parse_error(root, "missing <header><corpus> element"))?;
    let document =
        child(corpus, "document").ok_or_else(|| ctx.parse_error(corpus, "missing <document> element in header"))?;

    let id = ctx.id(document, "ID")?;
    let name = ctx.nonempty_attr(document, "name")?.to_string();
    let corpus_id = ctx.num(corpus, "ID")?;
    let corpus_name = ctx.attr(corpus, "name")?.to_string();

    let mut raws = Vec::new();
    for node in children(root, "sentence") {
        let paragraph_no = ctx.opt_num(node, "paragNo")?.unwrap_or(0);
        raws.push((read_sentence(ctx, node, None)?, paragraph_no));
    }

    Ok(Arc::new_cyclic(|weak: &Weak<Document>| Document {
        id,
        name: name.clone(),
        description: document.attribute("description").unwrap_or_default().to_string(),
        corpus_id,
        corpus_name: corpus_name.clone(),
        sentences: raws
            .into_iter()
            .map(|(raw, paragraph_no)| {
                let source = SentenceSource::FullText {
                    doc_id: id,
                    doc_name: name.clone(),
                    corpus_id,
                    corpus_name: corpus_name.clone(),
                    paragraph_no,
                };
                build_sentence(raw, source, weak.clone())
            })
            .collect(),
    }))
}

struct LuInfo {
    id: u32,
    name: String,
    frame_id: u32,
    frame_name: String,
}

struct RawSentence {
    id: u32,
    text: String,
    sent_no: u32,
    a_pos: u32,
    sentence_level: RawSet,
    frame_sets: Vec<RawSet>,
}

struct RawSet {
    id: u32,
    status: AnnotationStatus,
    created_date: String,
    lu_id: Option<u32>,
    lu_name: Option<String>,
    frame_id: Option<u32>,
    frame_name: Option<String>,
    layers: Vec<Layer>,
}

impl RawSet {
    fn has_layer(&self, name: &str) -> bool {
        self.layers.iter().any(|l| l.name == name)
    }
}

fn read_sentence(ctx: Ctx, node: Node, lu: Option<&LuInfo>) -> Result<RawSentence> {
    let id = ctx.id(node, "ID")?;
    let text = child(node, "text").map(text_of).unwrap_or_default();
    let text_len = text.chars().count();

    let mut sentence_level: Option<RawSet> = None;
    let mut frame_sets = Vec::new();
    for set_node in children(node, "annotationSet") {
        let mut set = read_set(ctx, set_node, text_len)?;
        let is_frame_set =
            set.lu_name.is_some() || set.frame_name.is_some() || set.has_layer("Target") || set.has_layer("FE");
        if !is_frame_set {
            match &mut sentence_level {
                Some(first) => first.layers.append(&mut set.layers),
                None => sentence_level = Some(set),
            }
            continue;
        }
        if let Some(lu) = lu {
            set.lu_id.get_or_insert(lu.id);
            set.lu_name.get_or_insert_with(|| lu.name.clone());
            set.frame_id.get_or_insert(lu.frame_id);
            set.frame_name.get_or_insert_with(|| lu.frame_name.clone());
        }
        let has_target = set
            .layers
            .iter()
            .filter(|l| l.name == "Target")
            .any(|l| l.labels.iter().any(|lb| lb.span.is_some()));
        if set.status == AnnotationStatus::Manual && !has_target {
            return Err(ctx.integrity(set_node, format!("MANUAL annotation set {} has no target", set.id)));
        }
        frame_sets.push(set);
    }

    Ok(RawSentence {
        id,
        text,
        sent_no: ctx.opt_num(node, "sentNo")?.unwrap_or(0),
        a_pos: ctx.opt_num(node, "aPos")?.unwrap_or(0),
        // A sentence without sentence-level annotation still gets slot 0.
        sentence_level: sentence_level.unwrap_or(RawSet {
            id: 0,
            status: AnnotationStatus::Unann,
            created_date: String::new(),
            lu_id: None,
            lu_name: None,
            frame_id: None,
            frame_name: None,
            layers: Vec::new(),
        }),
        frame_sets,
    })
}

fn read_set(ctx: Ctx, node: Node, text_len: usize) -> Result<RawSet> {
    let mut layers = Vec::new();
    for layer_node in children(node, "layer") {
        let name = ctx.attr(layer_node, "name")?.to_string();
        let rank = ctx.opt_num(layer_node, "rank")?.unwrap_or(1);
        let is_fe = name == "FE";
        let mut labels = Vec::new();
        for label_node in children(layer_node, "label") {
            if let Some(label) = read_label(ctx, label_node, is_fe, text_len)? {
                labels.push(label);
            }
        }
        layers.push(Layer { name, rank, labels });
    }
    Ok(RawSet {
        id: ctx.id(node, "ID")?,
        status: AnnotationStatus::parse(node.attribute("status").unwrap_or_default()),
        created_date: node.attribute("cDate").unwrap_or_default().to_string(),
        lu_id: ctx.opt_num(node, "luID")?,
        lu_name: node.attribute("luName").map(str::to_string),
        frame_id: ctx.opt_num(node, "frameID")?,
        frame_name: node.attribute("frameName").map(str::to_string),
        layers,
    })
}

fn read_label(ctx: Ctx, node: Node, is_fe: bool, text_len: usize) -> Result<Option<Label>> {
    let name = ctx.attr(node, "name")?.to_string();
    let start: Option<usize> = ctx.opt_num(node, "start")?;
    let end: Option<usize> = ctx.opt_num(node, "end")?;
    let span = match (start, end) {
        (Some(start), Some(end)) => {
            if end < start {
                return Err(ctx.integrity(node, format!("label {name:?} ends ({end}) before it starts ({start})")));
            }
            if end > text_len {
                return Err(ctx.integrity(
                    node,
                    format!("label {name:?} span {start}-{end} exceeds text length {text_len}"),
                ));
            }
            Some(Span::new(start, end))
        }
        (None, None) => None,
        _ => {
            return Err(ctx.integrity(node, format!("label {name:?} has only one of start/end")));
        }
    };
    let itype = match node.attribute("itype") {
        Some(raw) => Some(raw.parse().map_err(|msg: String| ctx.integrity(node, msg))?),
        None => None,
    };
    if is_fe {
        if span.is_some() && itype.is_some() {
            return Err(ctx.integrity(node, format!("FE label {name:?} has both a span and an itype")));
        }
        if span.is_none() && itype.is_none() {
            return Ok(None);
        }
    }
    Ok(Some(Label {
        name,
        span,
        itype,
        fe_id: ctx.opt_num(node, "feID")?,
    }))
}

fn build_sentence(raw: RawSentence, source: SentenceSource, document: Weak<Document>) -> Arc<Sentence> {
    let (pos_tagset, pos) = raw
        .sentence_level
        .layers
        .iter()
        .find(|l| TAGSETS.contains(&l.name.as_str()))
        .map(|l| {
            let tags = l
                .spans()
                .map(|(span, name)| SpanLabel {
                    span,
                    name: name.to_string(),
                })
                .collect();
            (l.name.clone(), tags)
        })
        .unwrap_or_default();

    Arc::new_cyclic(|weak: &Weak<Sentence>| {
        let sets = std::iter::once(raw.sentence_level)
            .chain(raw.frame_sets)
            .enumerate()
            .map(|(index, set)| Arc::new(build_set(set, index, weak.clone())))
            .collect();
        Sentence {
            id: raw.id,
            text: raw.text,
            sent_no: raw.sent_no,
            a_pos: raw.a_pos,
            pos,
            pos_tagset,
            annotation_sets: sets,
            source,
            document,
        }
    })
}

fn build_set(raw: RawSet, index: usize, sentence: Weak<Sentence>) -> AnnotationSet {
    let mut layers_by_rank: Vec<&Layer> = raw.layers.iter().collect();
    layers_by_rank.sort_by_key(|l| l.rank);

    let mut target = Vec::new();
    let mut fe = FeAnnotation::default();
    let mut gf = Vec::new();
    let mut pt = Vec::new();
    let mut other_layers: IndexMap<String, Vec<Label>> = IndexMap::new();
    for layer in &raw.layers {
        if !matches!(layer.name.as_str(), "Target" | "FE" | "GF" | "PT") {
            other_layers
                .entry(layer.name.clone())
                .or_default()
                .extend(layer.labels.iter().cloned());
        }
    }
    for layer in layers_by_rank {
        match layer.name.as_str() {
            "Target" => target.extend(layer.spans().map(|(s, _)| s)),
            "GF" => gf.extend(span_labels(layer)),
            "PT" => pt.extend(span_labels(layer)),
            "FE" => {
                for label in &layer.labels {
                    match (label.span, label.itype) {
                        (Some(span), _) => fe.overt.push(FeSpan {
                            span,
                            name: label.name.clone(),
                            rank: layer.rank,
                            fe_id: label.fe_id,
                        }),
                        (None, Some(kind)) => fe.null.push(NullFe {
                            name: label.name.clone(),
                            kind,
                            rank: layer.rank,
                            fe_id: label.fe_id,
                        }),
                        (None, None) => {}
                    }
                }
            }
            _ => {}
        }
    }

    AnnotationSet {
        id: raw.id,
        status: raw.status,
        created_date: raw.created_date,
        lu_id: raw.lu_id,
        lu_name: raw.lu_name,
        frame_id: raw.frame_id,
        frame_name: raw.frame_name,
        layers: raw.layers,
        target,
        fe,
        gf,
        pt,
        other_layers,
        index,
        sentence,
    }
}

fn span_labels(layer: &Layer) -> impl Iterator<Item = SpanLabel> + '_ {
    layer.spans().map(|(span, name)| SpanLabel {
        span,
        name: name.to_string(),
    })
}
