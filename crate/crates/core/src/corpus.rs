//! Access to annotated sentences: exemplars, full-text documents and the
//! frame annotation sets they carry.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::error::Result;
use crate::lexicon::{compile, matches, SearchPattern};
use crate::model::{AnnotationSet, Document, DocumentId, LuId, Sentence};
use crate::store::Store;

impl Store {
    fn matching_lu_ids(&self, pattern: &Option<SearchPattern>) -> Result<Vec<LuId>> {
        Ok(self
            .lu_index()?
            .entries
            .iter()
            .filter(|e| matches(pattern, &e.name))
            .map(|e| e.id)
            .collect())
    }

    /// Exemplar sentences of one LU, ordered by sentence ID.
    fn sorted_exemplars(&self, lu: LuId) -> Result<Vec<Arc<Sentence>>> {
        let mut sentences: Vec<_> = self.exemplars_of(lu)?.sentences().cloned().collect();
        sentences.sort_by_key(|s| s.id);
        Ok(sentences)
    }

    /// Frame annotation sets whose LU name matches. Exemplar sets come
    /// first, then full-text sets, each group ordered by (sentence ID, set
    /// ID). Sets of every status are included.
    pub fn annotations(
        &self,
        lu_pattern: Option<&str>,
        exemplars: bool,
        full_text: bool,
    ) -> Result<Vec<Arc<AnnotationSet>>> {
        let pattern = compile(lu_pattern)?;
        let mut out = Vec::new();
        if exemplars {
            let mut sets = Vec::new();
            for id in self.matching_lu_ids(&pattern)? {
                for sentence in self.exemplars_of(id)?.sentences() {
                    sets.extend(sentence.frame_sets().iter().cloned());
                }
            }
            out.extend(sorted_sets(sets));
        }
        if full_text {
            let mut sets = Vec::new();
            for doc in self.docs(None)? {
                for sentence in &doc.sentences {
                    sets.extend(
                        sentence
                            .frame_sets()
                            .iter()
                            .filter(|set| match (&pattern, &set.lu_name) {
                                (None, _) => true,
                                (Some(p), Some(name)) => p.is_match(name),
                                (Some(_), None) => false,
                            })
                            .cloned(),
                    );
                }
            }
            out.extend(sorted_sets(sets));
        }
        Ok(out)
    }

    /// Exemplar sentences of the matching LUs, ordered by (LU ID, sentence
    /// ID).
    pub fn exemplars(&self, lu_pattern: Option<&str>) -> Result<Vec<Arc<Sentence>>> {
        let pattern = compile(lu_pattern)?;
        let mut out = Vec::new();
        for id in self.matching_lu_ids(&pattern)? {
            out.extend(self.sorted_exemplars(id)?);
        }
        Ok(out)
    }

    /// Sentences of the matching documents, documents by ID and sentences
    /// in file order.
    pub fn ft_sents(&self, doc_pattern: Option<&str>) -> Result<Vec<Arc<Sentence>>> {
        Ok(self
            .docs(doc_pattern)?
            .iter()
            .flat_map(|d| d.sentences.iter().cloned())
            .collect())
    }

    /// Every sentence: exemplars in the order of [`Store::exemplars`], then
    /// full-text sentences in the order of [`Store::ft_sents`]. Files are read
    /// only as the iteration reaches them.
    pub fn sents(&self) -> Sents {
        Sents {
            store: self.clone(),
            stage: Stage::Start,
            buffer: VecDeque::new(),
        }
    }

    pub fn doc(&self, id: DocumentId) -> Result<Arc<Document>> {
        self.get_document(id)
    }

    /// Documents whose name matches, ordered by ID.
    pub fn docs(&self, pattern: Option<&str>) -> Result<Vec<Arc<Document>>> {
        let pattern = compile(pattern)?;
        let ids: Vec<DocumentId> = self
            .document_index()?
            .entries
            .iter()
            .filter(|e| matches(&pattern, &e.name))
            .map(|e| e.id)
            .collect();
        ids.into_iter().map(|id| self.get_document(id)).collect()
    }
}

fn sorted_sets(mut sets: Vec<Arc<AnnotationSet>>) -> Vec<Arc<AnnotationSet>> {
    sets.sort_by_key(|set| (set.sentence().map_or(0, |s| s.id), set.id));
    sets
}

enum Stage {
    Start,
    Exemplars(VecDeque<LuId>),
    FullText(VecDeque<DocumentId>),
    Done,
}

/// Lazy iterator returned by [`Store::sents`].
pub struct Sents {
    store: Store,
    stage: Stage,
    buffer: VecDeque<Arc<Sentence>>,
}

impl Sents {
    fn advance(&mut self) -> Result<()> {
        self.stage = match std::mem::replace(&mut self.stage, Stage::Done) {
            Stage::Start => Stage::Exemplars(self.store.lu_index()?.entries.iter().map(|e| e.id).collect()),
            Stage::Exemplars(mut lus) => match lus.pop_front() {
                Some(id) => {
                    self.buffer.extend(self.store.sorted_exemplars(id)?);
                    Stage::Exemplars(lus)
                }
                None => Stage::FullText(self.store.document_index()?.entries.iter().map(|e| e.id).collect()),
            },
            Stage::FullText(mut docs) => match docs.pop_front() {
                Some(id) => {
                    self.buffer
                        .extend(self.store.get_document(id)?.sentences.iter().cloned());
                    Stage::FullText(docs)
                }
                None => Stage::Done,
            },
            Stage::Done => Stage::Done,
        };
        Ok(())
    }
}

impl Iterator for Sents {
    type Item = Result<Arc<Sentence>>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if let Some(sentence) = self.buffer.pop_front() {
                return Some(Ok(sentence));
            }
            if matches!(self.stage, Stage::Done) {
                return None;
            }
            if let Err(e) = self.advance() {
                return Some(Err(e));
            }
        }
    }
}
