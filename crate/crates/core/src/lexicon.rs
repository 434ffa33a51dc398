//! Pattern search and exact lookup of frames, lexical units and frame
//! elements.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use regex::Regex;

use crate::error::{Error, Result};
use crate::model::{Frame, FrameElement, FrameId, LexicalUnit, LuId};
use crate::store::{FrameKey, Store};

/// A regular expression searched anywhere in an entry name. A leading
/// `(?i)` makes it case-insensitive; `^` and `$` anchor as usual.
#[derive(Debug, Clone)]
pub struct SearchPattern {
    source: String,
    regex: Regex,
}

impl SearchPattern {
    pub fn new(pattern: &str) -> Result<Self> {
        let regex = Regex::new(pattern).map_err(|e| Error::Pattern {
            pattern: pattern.to_string(),
            source: Box::new(e),
        })?;
        Ok(SearchPattern {
            source: pattern.to_string(),
            regex,
        })
    }

    pub fn as_str(&self) -> &str {
        &self.source
    }

    pub fn is_match(&self, name: &str) -> bool {
        self.regex.is_match(name)
    }
}

pub(crate) fn compile(pattern: Option<&str>) -> Result<Option<SearchPattern>> {
    pattern.map(SearchPattern::new).transpose()
}

pub(crate) fn matches(pattern: &Option<SearchPattern>, name: &str) -> bool {
    pattern.as_ref().is_none_or(|p| p.is_match(name))
}

/// Name and one-line description of every public query operation.
pub const OPERATIONS: &[(&str, &str)] = &[
    ("frames", "frames(pattern) - frames whose name matches the pattern"),
    ("frame", "frame(name_or_id) - a single frame by exact name or ID"),
    (
        "lus",
        "lus(pattern, frame) - lexical units matching the pattern, optionally within frames",
    ),
    ("lu", "lu(id) - a single lexical unit by ID"),
    (
        "fes",
        "fes(pattern, frame) - frame elements matching the pattern, optionally within frames",
    ),
    (
        "frame_ids_and_names",
        "frame_ids_and_names(pattern) - map of frame IDs to names, from the index only",
    ),
    (
        "frames_by_lemma",
        "frames_by_lemma(pattern) - frames having an LU whose name matches",
    ),
    ("help", "help() - this summary"),
    (
        "frame_relations",
        "frame_relations(frame, frame2, type) - frame-to-frame relations",
    ),
    (
        "fe_relations",
        "fe_relations(frame, frame2, type) - FE-to-FE relations of matching frame relations",
    ),
    ("frame_relation_types", "frame_relation_types() - all relation types"),
    ("semtypes", "semtypes() - all semantic types"),
    ("semtype", "semtype(key) - a semantic type by name, abbreviation or ID"),
    (
        "semtype_inherits",
        "semtype_inherits(sub, super) - whether sub is super or one of its descendants",
    ),
    (
        "propagate_semtypes",
        "propagate_semtypes() - copy FE semantic types along FE relations",
    ),
    (
        "annotations",
        "annotations(lu_pattern, exemplars, full_text) - frame annotation sets",
    ),
    ("exemplars", "exemplars(lu_pattern) - lexicographic exemplar sentences"),
    ("ft_sents", "ft_sents(doc_pattern) - sentences of full-text documents"),
    ("sents", "sents() - every sentence, exemplars first"),
    ("doc", "doc(id) - a full-text document by ID"),
    ("docs", "docs(pattern) - full-text documents whose name matches"),
];

/// How the `frame` argument of [`Store::lus`] and [`Store::fes`] selects
/// frames: digits are an ID, an exact frame name selects that frame, and
/// anything else is a pattern over frame names.
fn frame_filter(store: &Store, frame: Option<&str>) -> Result<Option<BTreeSet<FrameId>>> {
    let Some(frame) = frame else {
        return Ok(None);
    };
    if let Some(entry) = store.frame_entry(&FrameKey::from(frame)) {
        return Ok(Some(BTreeSet::from([entry.id])));
    }
    if frame.bytes().all(|b| b.is_ascii_digit()) && !frame.is_empty() {
        return Ok(Some(BTreeSet::new()));
    }
    let pattern = SearchPattern::new(frame)?;
    Ok(Some(
        store
            .frame_index()
            .iter()
            .filter(|e| pattern.is_match(&e.name))
            .map(|e| e.id)
            .collect(),
    ))
}

impl Store {
    /// Frames whose names match, ordered by ID. No pattern returns all.
    pub fn frames(&self, pattern: Option<&str>) -> Result<Vec<Arc<Frame>>> {
        let ids = self.frame_ids_and_names(pattern)?;
        ids.into_keys().map(|id| self.get_frame(id)).collect()
    }

    /// A frame by exact, case-sensitive name or by ID.
    pub fn frame(&self, key: impl Into<FrameKey>) -> Result<Arc<Frame>> {
        self.get_frame(key)
    }

    /// ID to name map of matching frames. Reads only the frame index.
    pub fn frame_ids_and_names(&self, pattern: Option<&str>) -> Result<BTreeMap<FrameId, String>> {
        let pattern = compile(pattern)?;
        Ok(self
            .frame_index()
            .iter()
            .filter(|e| matches(&pattern, &e.name))
            .map(|e| (e.id, e.name.clone()))
            .collect())
    }

    /// LUs whose full `lemma.pos` name matches, restricted to the frames
    /// selected by `frame`, ordered by ID.
    pub fn lus(&self, pattern: Option<&str>, frame: Option<&str>) -> Result<Vec<Arc<LexicalUnit>>> {
        let pattern = compile(pattern)?;
        let frames = frame_filter(self, frame)?;
        let ids: Vec<LuId> = self
            .lu_index()?
            .entries
            .iter()
            .filter(|e| frames.as_ref().is_none_or(|f| f.contains(&e.frame_id)))
            .filter(|e| matches(&pattern, &e.name))
            .map(|e| e.id)
            .collect();
        ids.into_iter().map(|id| self.get_lu(id)).collect()
    }

    pub fn lu(&self, id: LuId) -> Result<Arc<LexicalUnit>> {
        self.get_lu(id)
    }

    /// FEs whose names match, ordered by (frame ID, FE ID). Without a frame
    /// restriction every frame file is loaded.
    pub fn fes(&self, pattern: Option<&str>, frame: Option<&str>) -> Result<Vec<Arc<FrameElement>>> {
        let pattern = compile(pattern)?;
        let frames: Vec<FrameId> = match frame_filter(self, frame)? {
            Some(ids) => ids.into_iter().collect(),
            None => self.frame_ids_and_names(None)?.into_keys().collect(),
        };
        let mut out = Vec::new();
        for id in frames {
            let frame = self.get_frame(id)?;
            let mut fes: Vec<_> = frame
                .fes
                .values()
                .filter(|fe| matches(&pattern, &fe.name))
                .cloned()
                .collect();
            fes.sort_by_key(|fe| fe.id);
            out.extend(fes);
        }
        Ok(out)
    }

    /// Frames with at least one LU whose name matches, ordered by ID.
    pub fn frames_by_lemma(&self, pattern: &str) -> Result<Vec<Arc<Frame>>> {
        let pattern = SearchPattern::new(pattern)?;
        let ids: BTreeSet<FrameId> = self
            .lu_index()?
            .entries
            .iter()
            .filter(|e| pattern.is_match(&e.name))
            .map(|e| e.frame_id)
            .collect();
        ids.into_iter().map(|id| self.get_frame(id)).collect()
    }

    /// One line per public operation.
    pub fn help_summary(&self) -> String {
        help_summary()
    }
}

pub fn help_summary() -> String {
    let mut out = String::from("Available operations:\n");
    for (_, line) in OPERATIONS {
        out.push_str("  ");
        out.push_str(line);
        out.push('\n');
    }
    out
}
