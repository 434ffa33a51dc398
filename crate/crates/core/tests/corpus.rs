mod common;

use std::collections::BTreeSet;

use framelex::model::{AnnotationStatus, NullInstantiation, SentenceSource, Span};
use proptest::prelude::*;

#[test]
fn exemplar_index_twenty_is_the_revenge_sentence() {
    let store = common::open();
    let lu = store.frame("Revenge").unwrap().lu("revenge.n").unwrap().clone();
    let exemplars = store.exemplars_of(lu.id).unwrap();
    let sentence = exemplars.get(20).unwrap();
    assert_eq!(sentence.id, 929548);
    assert_eq!(
        sentence.text,
        "A short while later Joseph had his revenge on Watney 's ."
    );
    assert_eq!(sentence.annotation_sets.len(), 2);
}

#[test]
fn revenge_sentence_layers() {
    let store = common::open();
    let exemplars = store.exemplars_of(6067).unwrap();
    let sentence = exemplars.get(20).unwrap();
    let set = sentence.frame_set().unwrap();
    let overt: Vec<_> = set
        .fe
        .overt
        .iter()
        .map(|fe| (fe.name.as_str(), fe.span.slice(&sentence.text)))
        .collect();
    assert_eq!(
        overt,
        [
            ("Time", "A short while later"),
            ("Avenger", "Joseph"),
            ("Avenger", "his"),
            ("Offender", "on Watney 's")
        ]
    );
    assert_eq!(set.fe.null_kind("Injury"), Some(NullInstantiation::Dni));
    assert_eq!(set.target, [Span::new(35, 41)]);
    assert_eq!(set.target[0].slice(&sentence.text), "revenge");
    assert_eq!(set.gf.len(), 4);
    assert_eq!(set.pt.len(), 4);
    assert_eq!(set.pos_specific_layer().unwrap().name, "Noun");
    assert_eq!(sentence.pos_tagset, "BNC");
    assert_eq!(sentence.pos.len(), 12);
}

#[test]
fn every_exemplar_has_one_frame_set() {
    let store = common::open();
    for sentence in store.exemplars(None).unwrap() {
        assert!(sentence.is_exemplar());
        assert_eq!(sentence.frame_sets().len(), 1, "sentence {}", sentence.id);
        assert!(!sentence.annotation_sets[0].is_frame_set());
    }
}

#[test]
fn fulltext_sets_keep_file_order() {
    let store = common::open();
    let doc = store.doc(23).unwrap();
    let sentence = &doc.sentences[1];
    assert_eq!(sentence.id, 4148528);
    let frames: Vec<_> = sentence
        .frame_sets()
        .iter()
        .map(|s| s.frame_name.as_deref().unwrap())
        .collect();
    assert_eq!(frames, ["Process_start", "Revenge", "Seeking", "Becoming_aware"]);
    let aware = &sentence.frame_sets()[3];
    let pieces: Vec<_> = aware.target.iter().map(|s| s.slice(&sentence.text)).collect();
    assert_eq!(pieces, ["find", "out"]);
    assert!(store
        .lu_index()
        .unwrap()
        .get(sentence.frame_sets()[2].lu_id.unwrap())
        .is_none());
    match &sentence.source {
        SentenceSource::FullText { doc_name, .. } => assert_eq!(doc_name, "Tiger_Of_San_Pedro"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn target_offsets_select_target_words() {
    let store = common::open();
    for sentence in store.sents() {
        let sentence = sentence.unwrap();
        let len = sentence.char_len();
        for set in sentence.frame_sets() {
            for span in &set.target {
                assert!(span.end <= len);
                let word = span.slice(&sentence.text);
                assert_eq!(word.trim(), word, "sentence {}", sentence.id);
                assert!(!word.is_empty());
            }
        }
    }
}

#[test]
fn sents_yields_exemplars_then_fulltext() {
    let store = common::open();
    let all: Vec<_> = store.sents().map(|s| s.unwrap()).collect();
    let exemplars = store.exemplars(None).unwrap();
    let fulltext = store.ft_sents(None).unwrap();
    assert_eq!(all.len(), exemplars.len() + fulltext.len());
    let ids: Vec<_> = all.iter().map(|s| s.id).collect();
    let expected: Vec<_> = exemplars.iter().chain(&fulltext).map(|s| s.id).collect();
    assert_eq!(ids, expected);
}

#[test]
fn sents_reads_files_as_it_goes() {
    let store = common::open();
    let first = store.sents().next().unwrap().unwrap();
    assert!(first.is_exemplar());
    let log = store.access_log();
    assert_eq!(log.iter().filter(|p| p.starts_with("lu/")).count(), 1, "{log:?}");
    assert!(log.iter().all(|p| !p.starts_with("fulltext/")));
}

#[test]
fn docs_and_ft_sents() {
    let store = common::open();
    let docs = store.docs(None).unwrap();
    assert_eq!(docs.iter().map(|d| d.id).collect::<Vec<_>>(), [23, 561, 562]);
    assert!(store.doc(562).unwrap().sentences.is_empty());
    let tiger = store.ft_sents(Some("Tiger")).unwrap();
    assert_eq!(tiger.len(), 4);
    assert!(tiger.iter().all(|s| s.doc_id() == Some(23)));
    assert!(store.ft_sents(Some("^$")).unwrap().is_empty());
}

#[test]
fn unannotated_sets_are_reported() {
    let store = common::open();
    let doc = store.doc(23).unwrap();
    let woke = &doc.sentences[2];
    assert_eq!(woke.frame_sets()[0].status, AnnotationStatus::Unann);
    assert!(woke.frame_sets()[0].fe.is_empty());
}

#[test]
fn annotations_include_both_sources() {
    let store = common::open();
    let sets = store.annotations(Some("^revenge\\.n$"), true, true).unwrap();
    let exemplar = sets.iter().filter(|s| s.sentence().unwrap().is_exemplar()).count();
    assert_eq!(exemplar, store.exemplars(Some("^revenge\\.n$")).unwrap().len());
    assert!(sets.iter().any(|s| s.sentence().unwrap().id == 4148528));
    let first_fulltext = sets.iter().position(|s| !s.sentence().unwrap().is_exemplar()).unwrap();
    assert!(sets[first_fulltext..]
        .iter()
        .all(|s| !s.sentence().unwrap().is_exemplar()));
    assert!(store.annotations(None, false, false).unwrap().is_empty());
}

fn keys(sets: &[std::sync::Arc<framelex::model::AnnotationSet>]) -> Vec<(u32, u32)> {
    sets.iter().map(|s| (s.sentence().unwrap().id, s.id)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 20, ..ProptestConfig::default() })]

    #[test]
    fn annotations_partition_by_source(p in proptest::option::of("(\\^)?[a-z]{0,2}(\\.)?[nv]?")) {
        let store = common::open();
        let p = p.as_deref();
        let both = keys(&store.annotations(p, true, true).unwrap());
        let ex = keys(&store.annotations(p, true, false).unwrap());
        let ft = keys(&store.annotations(p, false, true).unwrap());
        let ex_set: BTreeSet<_> = ex.iter().collect();
        let ft_set: BTreeSet<_> = ft.iter().collect();
        prop_assert!(ex_set.is_disjoint(&ft_set));
        let joined: Vec<_> = ex.iter().chain(&ft).copied().collect();
        prop_assert_eq!(both, joined);
    }
}
