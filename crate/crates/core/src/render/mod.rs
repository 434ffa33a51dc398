//! Human-readable text displays of lexicon entities and annotated sentences.

pub mod viz;
pub mod wrap;

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::model::{
    AnnotationSet, CoreType, Document, FeRelation, Frame, FrameElement, FrameRelation, LexicalUnit, SemType, Sentence,
    SentenceSource,
};
use crate::store::Store;

pub use viz::{Row, RowKind, Segment, Visualization};

const INDENT: &str = "  ";

/// Layout settings for displays.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DisplayOptions {
    width: usize,
}

impl DisplayOptions {
    pub const DEFAULT_WIDTH: usize = 65;
    pub const MIN_WIDTH: usize = 20;

    /// Options wrapping prose and sentence drawings at `width` columns,
    /// not counting the indent of prose blocks.
    pub fn new(width: usize) -> Result<Self> {
        if width < Self::MIN_WIDTH {
            return Err(Error::InvalidOption(format!(
                "wrap width must be at least {}, got {width}",
                Self::MIN_WIDTH
            )));
        }
        Ok(DisplayOptions { width })
    }

    pub fn width(&self) -> usize {
        self.width
    }
}

impl Default for DisplayOptions {
    fn default() -> Self {
        DisplayOptions {
            width: Self::DEFAULT_WIDTH,
        }
    }
}

/// Produces displays. Some need the store to resolve relations, semantic
/// types or LU definitions.
#[derive(Clone, Copy)]
pub struct Renderer<'s> {
    store: &'s Store,
    opts: DisplayOptions,
}

impl<'s> Renderer<'s> {
    pub fn new(store: &'s Store, opts: DisplayOptions) -> Self {
        Renderer { store, opts }
    }

    pub fn options(&self) -> DisplayOptions {
        self.opts
    }

    fn block(&self, text: &str) -> String {
        wrap::indented_block(text, self.opts.width, INDENT)
    }

    pub fn frame(&self, frame: &Frame) -> Result<String> {
        let relations = self.store.frame_relations(Some(frame.id.into()), None, None)?;
        let mut out = String::new();
        writeln!(out, "frame ({}): {}\n", frame.id, frame.name).unwrap();
        writeln!(out, "[URL] {}\n", frame.url()).unwrap();
        out.push_str("[definition]\n");
        out.push_str(&self.block(&frame.definition));
        writeln!(out, "\n[semTypes] {} semantic types", frame.sem_types.len()).unwrap();
        if !frame.sem_types.is_empty() {
            let names: Vec<String> = frame
                .sem_types
                .iter()
                .map(|st| format!("{} ({})", st.name, st.id))
                .collect();
            out.push_str(&self.block(&names.join(", ")));
        }
        writeln!(out, "\n[frameRelations] {} frame relations", relations.len()).unwrap();
        for rel in &relations {
            writeln!(out, "{INDENT}{rel}").unwrap();
        }
        writeln!(out, "\n[lexUnit] {} lexical units", frame.lex_units.len()).unwrap();
        let mut lus: Vec<&LexicalUnit> = frame.lex_units.values().map(|lu| lu.as_ref()).collect();
        lus.sort_by(|a, b| a.name.cmp(&b.name));
        let lus: Vec<String> = lus.iter().map(|lu| format!("{} ({})", lu.name, lu.id)).collect();
        out.push_str(&self.block(&lus.join(", ")));
        writeln!(out, "\n\n[FE] {} frame elements", frame.fes.len()).unwrap();
        for core_type in CoreType::ALL {
            let mut fes: Vec<String> = frame
                .fes
                .values()
                .filter(|fe| fe.core_type == core_type)
                .map(|fe| format!("{} ({})", fe.name, fe.id))
                .collect();
            if fes.is_empty() {
                continue;
            }
            fes.sort();
            writeln!(out, "{:>16}: {}", core_type.as_str(), fes.join(", ")).unwrap();
        }
        writeln!(
            out,
            "\n[FEcoreSets] {} frame element core sets",
            frame.fe_core_sets.len()
        )
        .unwrap();
        for set in &frame.fe_core_sets {
            writeln!(out, "{INDENT}{}", set.join(", ")).unwrap();
        }
        Ok(out)
    }

    /// Reads the LU's annotation file for the subcorpus listing.
    pub fn lu(&self, lu: &LexicalUnit) -> Result<String> {
        let exemplars = self.store.exemplars_of(lu.id)?;
        let mut out = String::new();
        writeln!(out, "lexical unit ({}): {}\n", lu.id, lu.name).unwrap();
        out.push_str("[definition]\n");
        out.push_str(&self.block(&lu.definition));
        writeln!(out, "\n[frame] {} ({})", lu.frame_name, lu.frame_id).unwrap();
        writeln!(out, "\n[POS] {}", lu.pos).unwrap();
        writeln!(out, "\n[status] {}", lu.status).unwrap();
        let lexemes: Vec<String> = lu.lexemes.iter().map(|l| format!("{}/{}", l.form, l.pos)).collect();
        writeln!(out, "\n[lexemes] {}", lexemes.join(" ")).unwrap();
        writeln!(out, "\n[semTypes] {} semantic types", lu.sem_types.len()).unwrap();
        if !lu.sem_types.is_empty() {
            let names: Vec<String> = lu
                .sem_types
                .iter()
                .map(|st| format!("{} ({})", st.name, st.id))
                .collect();
            out.push_str(&self.block(&names.join(", ")));
        }
        writeln!(out, "\n[URL] {}", lu.url()).unwrap();
        writeln!(
            out,
            "\n[sentenceCount] {} annotated, {} total",
            lu.sentence_count.annotated, lu.sentence_count.total
        )
        .unwrap();
        writeln!(out, "\n[subCorpus] {} subcorpora", exemplars.sub_corpora.len()).unwrap();
        let mut names: Vec<&str> = exemplars.sub_corpora.iter().map(|s| s.name.as_str()).collect();
        names.sort_unstable();
        out.push_str(&self.block(&names.join(", ")));
        writeln!(out, "\n[exemplars] {} sentences across all subcorpora", exemplars.len()).unwrap();
        Ok(out)
    }

    pub fn fe(&self, fe: &FrameElement) -> String {
        let mut out = String::new();
        writeln!(out, "frame element ({}): {}", fe.id, fe.name).unwrap();
        writeln!(out, "{INDENT}of {} ({})\n", fe.frame_name, fe.frame_id).unwrap();
        out.push_str("[definition]\n");
        out.push_str(&self.block(&fe.definition));
        writeln!(out, "\n[abbrev] {}", fe.abbrev).unwrap();
        writeln!(out, "\n[coreType] {}", fe.core_type).unwrap();
        match fe.sem_type() {
            Some(st) => writeln!(out, "\n[semType] {} ({})", st.name, st.id).unwrap(),
            None => out.push_str("\n[semType] None\n"),
        }
        out
    }

    pub fn semtype(&self, st: &SemType) -> Result<String> {
        let registry = self.store.semtype_registry()?;
        let name_of = |id| {
            registry
                .by_id(id)
                .map_or_else(|| format!("? ({id})"), |t| format!("{} ({})", t.name, t.id))
        };
        let mut out = String::new();
        writeln!(out, "semantic type ({}): {}\n", st.id, st.name).unwrap();
        writeln!(out, "[abbrev] {}\n", st.abbrev).unwrap();
        out.push_str("[definition]\n");
        out.push_str(&self.block(&st.definition));
        match st.super_type {
            Some(id) => writeln!(out, "\n[superType] {}", name_of(id)).unwrap(),
            None => out.push_str("\n[superType] None\n"),
        }
        writeln!(out, "\n[subTypes] {} subtypes", st.sub_types.len()).unwrap();
        let subs: Vec<String> = st.sub_types.iter().map(|&id| name_of(id)).collect();
        out.push_str(&self.block(&subs.join(", ")));
        Ok(out)
    }

    pub fn frame_relation(&self, rel: &FrameRelation) -> String {
        let mut out = format!("{rel}\n\n[feRelations] {} FE relations\n", rel.fe_relations.len());
        for fer in &rel.fe_relations {
            writeln!(out, "{INDENT}{} -> {}", fer.super_fe_name, fer.sub_fe_name).unwrap();
        }
        out
    }

    pub fn fe_relation(&self, fer: &FeRelation) -> String {
        format!("{fer}\n")
    }

    /// Exemplar or full-text display, whichever fits the sentence.
    pub fn sentence(&self, sentence: &Sentence) -> Result<String> {
        if sentence.is_exemplar() {
            Ok(self.exemplar_sentence(sentence))
        } else {
            self.fulltext_sentence(sentence)
        }
    }

    pub fn exemplar_sentence(&self, sentence: &Sentence) -> String {
        let mut out = String::new();
        writeln!(out, "exemplar sentence ({}):", sentence.id).unwrap();
        writeln!(out, "[sentNo] {}", sentence.sent_no).unwrap();
        writeln!(out, "[aPos] {}\n", sentence.a_pos).unwrap();
        let set = sentence.frame_set();
        if let Some(set) = set {
            write_lu_and_frame(&mut out, set);
        }
        writeln!(
            out,
            "[annotationSet] {} annotation sets\n",
            sentence.annotation_sets.len()
        )
        .unwrap();
        writeln!(out, "[POS] {} tags\n", sentence.pos.len()).unwrap();
        writeln!(out, "[POS_tagset] {}\n", sentence.pos_tagset).unwrap();
        match set {
            Some(set) => {
                out.push_str(&self.set_body(&sentence.text, set));
            }
            None => {
                out.push_str("[text]\n\n");
                out.push_str(&viz::plain(&sentence.text).render(self.opts.width));
            }
        }
        out
    }

    /// GF and PT counts, the layer summary and the drawing of one set.
    fn set_body(&self, text: &str, set: &AnnotationSet) -> String {
        let mut out = String::new();
        writeln!(out, "[GF] {} relations\n", set.gf.len()).unwrap();
        writeln!(out, "[PT] {} phrases\n", set.pt.len()).unwrap();
        out.push_str("[text] + [Target] + [FE]");
        if let Some(layer) = set.pos_specific_layer() {
            write!(out, " + [{}]", layer.name).unwrap();
        }
        out.push_str("\n\n");
        out.push_str(&viz::annotation_set(text, set).render(self.opts.width));
        out
    }

    pub fn fulltext_sentence(&self, sentence: &Sentence) -> Result<String> {
        let doc_name = match &sentence.source {
            SentenceSource::FullText { doc_name, .. } => doc_name.as_str(),
            SentenceSource::Exemplar { .. } => "",
        };
        let mut out = String::new();
        writeln!(out, "full-text sentence ({}) in {}:\n\n", sentence.id, doc_name).unwrap();
        writeln!(out, "[POS] {} tags\n", sentence.pos.len()).unwrap();
        writeln!(out, "[POS_tagset] {}\n", sentence.pos_tagset).unwrap();
        out.push_str("[text] + [annotationSet]\n\n");
        out.push_str(&self.visualize_fulltext(sentence)?.render(self.opts.width));
        Ok(out)
    }

    /// The aligned drawing of a sentence without the metadata block.
    pub fn visualize(&self, sentence: &Sentence) -> Result<Visualization> {
        if sentence.is_exemplar() {
            Ok(match sentence.frame_set() {
                Some(set) => viz::annotation_set(&sentence.text, set),
                None => viz::plain(&sentence.text),
            })
        } else {
            self.visualize_fulltext(sentence)
        }
    }

    fn visualize_fulltext(&self, sentence: &Sentence) -> Result<Visualization> {
        let index = self.store.lu_index()?;
        Ok(viz::full_text(sentence, |set| {
            set.lu_id
                .and_then(|id| index.get(id))
                .is_none_or(|entry| entry.status == "Problem")
        }))
    }

    pub fn annotation_set(&self, set: &AnnotationSet) -> String {
        let mut out = String::new();
        writeln!(out, "annotation set ({}):\n", set.id).unwrap();
        writeln!(out, "[status] {}\n", set.status.as_str()).unwrap();
        let sentence = set.sentence();
        if set.is_frame_set() {
            write_lu_and_frame(&mut out, set);
            let text = sentence.as_ref().map_or("", |s| s.text.as_str());
            out.push_str(&self.set_body(text, set));
        } else {
            let names: Vec<&str> = set.layers.iter().map(|l| l.name.as_str()).collect();
            writeln!(out, "[layers] {}", names.join(", ")).unwrap();
        }
        out
    }

    /// Metadata, then one `[offset] text` line per sentence.
    pub fn document(&self, doc: &Document) -> String {
        let mut out = String::new();
        writeln!(out, "full-text document ({}) {}:\n", doc.id, doc.name).unwrap();
        writeln!(out, "[corpusName] {}\n", doc.corpus_name).unwrap();
        out.push_str("[description]\n");
        out.push_str(&self.block(&doc.description));
        if !doc.sentences.is_empty() {
            writeln!(out, "\n[sentence] {} sentences", doc.sentences.len()).unwrap();
            for (offset, sentence) in doc.sentences.iter().enumerate() {
                writeln!(out, "[{offset}] {}", sentence.text).unwrap();
            }
        }
        out
    }
}

fn write_lu_and_frame(out: &mut String, set: &AnnotationSet) {
    let id = |v: Option<u32>| v.map_or_else(|| "?".to_string(), |v| v.to_string());
    let frame = set.frame_name.as_deref().unwrap_or("?");
    writeln!(
        out,
        "[LU] ({}) {} in {}\n",
        id(set.lu_id),
        set.lu_name.as_deref().unwrap_or("?"),
        frame
    )
    .unwrap();
    writeln!(out, "[frame] ({}) {}\n", id(set.frame_id), frame).unwrap();
}
