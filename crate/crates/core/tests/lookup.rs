mod common;

use std::collections::BTreeSet;

use framelex::{Error, ErrorCategory, Store, OPERATIONS};
use proptest::prelude::*;
use regex::Regex;

fn ids<T>(items: &[std::sync::Arc<T>], id: impl Fn(&T) -> u32) -> BTreeSet<u32> {
    items.iter().map(|x| id(x)).collect()
}

#[test]
fn frames_by_case_insensitive_pattern() {
    let store = common::open();
    let frames = store.frames(Some("(?i)creat")).unwrap();
    let names: Vec<_> = frames.iter().map(|f| (f.id, f.name.as_str())).collect();
    assert_eq!(names, [(268, "Cooking_creation"), (1658, "Create_physical_artwork")]);
    assert_eq!(frames[0].to_string(), "<frame ID=268 name=Cooking_creation>");
}

#[test]
fn lus_by_pattern_include_known_entries() {
    let store = common::open();
    let lus = store.lus(Some(r".+en\.v"), None).unwrap();
    let found = ids(&lus, |lu| lu.id);
    assert!(found.is_superset(&BTreeSet::from([5331, 7544])));
    assert_eq!(lus[0].to_string(), "<lu ID=5331 name=awaken.v>");
    assert!(lus.windows(2).all(|w| w[0].id < w[1].id));
}

#[test]
fn frame_ids_and_names_reads_no_frame_files() {
    let store = common::open();
    let map = store.frame_ids_and_names(Some("(?i)creat")).unwrap();
    assert_eq!(map.len(), 2);
    assert_eq!(map[&268], "Cooking_creation");
    assert_eq!(map[&1658], "Create_physical_artwork");
    assert_eq!(store.access_log(), ["frameIndex.xml"]);
}

#[test]
fn no_pattern_returns_everything() {
    let store = common::open();
    assert_eq!(store.frames(None).unwrap().len(), store.frame_index().len());
    assert_eq!(
        store.lus(None, None).unwrap().len(),
        store.lu_index().unwrap().entries.len()
    );
}

#[test]
fn frame_by_name_is_exact() {
    let store = common::open();
    assert_eq!(store.frame("Revenge").unwrap().id, 347);
    assert_eq!(store.frame(347).unwrap().name, "Revenge");
    assert_eq!(store.frame("347").unwrap().name, "Revenge");
    assert!(store.frame("revenge").unwrap_err().is_lookup_failure());
    assert!(store.frame("Reven").unwrap_err().is_lookup_failure());
}

#[test]
fn missing_entries_are_lookup_failures() {
    let store = common::open();
    let errors = [
        store.frame("NoSuchFrame").unwrap_err(),
        store.lu(1).unwrap_err(),
        store.semtype("X").unwrap_err(),
        store.doc(99999).unwrap_err(),
    ];
    for err in errors {
        assert!(matches!(err, Error::NotFound { .. }), "{err}");
        assert_eq!(err.category(), ErrorCategory::Lookup);
    }
}

#[test]
fn bad_patterns_are_usage_errors() {
    let store = common::open();
    for err in [
        store.frames(Some("(")).unwrap_err(),
        store.lus(Some("[a-"), None).unwrap_err(),
        store.fes(Some("*"), None).unwrap_err(),
        store.docs(Some("(?x")).unwrap_err(),
    ] {
        assert_eq!(err.category(), ErrorCategory::Usage, "{err}");
    }
}

#[test]
fn lus_and_fes_restricted_to_a_frame() {
    let store = common::open();
    let lus = store.lus(None, Some("Revenge")).unwrap();
    assert_eq!(lus.len(), 18);
    assert!(lus.iter().all(|lu| lu.frame_id == 347));
    assert_eq!(store.lus(Some("^rev"), Some("347")).unwrap().len(), 4);
    assert!(store.lus(None, Some("999999")).unwrap().is_empty());

    let fes = store.fes(Some("^Time$"), None).unwrap();
    let frames: Vec<_> = fes.iter().map(|fe| fe.frame_id).collect();
    assert!(frames.windows(2).all(|w| w[0] <= w[1]));
    assert!(fes.iter().all(|fe| fe.name == "Time"));
    let revenge = store.fes(None, Some("Revenge")).unwrap();
    assert_eq!(revenge.len(), 14);
    assert!(revenge.windows(2).all(|w| w[0].id < w[1].id));
}

#[test]
fn frames_by_lemma_follows_lu_names() {
    let store = common::open();
    let frames = store.frames_by_lemma("^find").unwrap();
    assert_eq!(ids(&frames, |f| f.id), BTreeSet::from([30]));
}

#[test]
fn help_names_every_operation() {
    let store = common::open();
    let help = store.help_summary();
    for (name, _) in OPERATIONS {
        assert!(help.contains(&format!("{name}(")), "{name}");
    }
}

/// Loads every frame file and filters in memory.
struct Oracle {
    frames: Vec<(u32, String)>,
    lus: Vec<(u32, String, u32)>,
    fes: Vec<(u32, String, u32)>,
}

impl Oracle {
    fn build(store: &Store) -> Oracle {
        let mut oracle = Oracle {
            frames: Vec::new(),
            lus: Vec::new(),
            fes: Vec::new(),
        };
        for entry in store.frame_index() {
            let frame = store.frame(entry.id).unwrap();
            oracle.frames.push((frame.id, frame.name.clone()));
            for lu in frame.lex_units.values() {
                oracle.lus.push((lu.id, lu.name.clone(), frame.id));
            }
            for fe in frame.fes.values() {
                oracle.fes.push((fe.id, fe.name.clone(), frame.id));
            }
        }
        oracle
    }

    fn frames(&self, re: &Regex) -> BTreeSet<u32> {
        self.frames
            .iter()
            .filter(|(_, n)| re.is_match(n))
            .map(|(id, _)| *id)
            .collect()
    }

    fn within(&self, frame: Option<&str>) -> BTreeSet<u32> {
        match frame {
            None => self.frames.iter().map(|(id, _)| *id).collect(),
            Some(f) => match self.frames.iter().find(|(id, n)| n == f || id.to_string() == f) {
                Some((id, _)) => BTreeSet::from([*id]),
                None => self.frames(&Regex::new(f).unwrap()),
            },
        }
    }

    fn lus(&self, re: &Regex, frame: Option<&str>) -> BTreeSet<u32> {
        let frames = self.within(frame);
        self.lus
            .iter()
            .filter(|(_, n, f)| re.is_match(n) && frames.contains(f))
            .map(|(id, ..)| *id)
            .collect()
    }

    fn fes(&self, re: &Regex, frame: Option<&str>) -> BTreeSet<u32> {
        let frames = self.within(frame);
        self.fes
            .iter()
            .filter(|(_, n, f)| re.is_match(n) && frames.contains(f))
            .map(|(id, ..)| *id)
            .collect()
    }
}

fn pattern() -> impl Strategy<Value = String> {
    let atom = prop_oneof![
        "[a-z]{1,3}",
        "[A-Z][a-z]{0,2}",
        Just(".".to_string()),
        Just(r"\.v".to_string()),
        Just(r"\.n".to_string()),
        Just("_".to_string()),
        Just("[aeiou]".to_string()),
        Just("e+".to_string()),
    ];
    (
        any::<bool>(),
        any::<bool>(),
        proptest::collection::vec(atom, 1..4),
        any::<bool>(),
    )
        .prop_map(|(ci, start, atoms, end)| {
            format!(
                "{}{}{}{}",
                if ci { "(?i)" } else { "" },
                if start { "^" } else { "" },
                atoms.join(""),
                if end { "$" } else { "" }
            )
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, ..ProptestConfig::default() })]

    #[test]
    fn searches_match_a_full_scan(p in pattern(), frame in proptest::option::of(prop_oneof![
        Just("Revenge".to_string()),
        Just("30".to_string()),
        Just("(?i)event".to_string()),
        Just("^C".to_string()),
    ])) {
        let store = common::open();
        let oracle = Oracle::build(&store);
        let re = Regex::new(&p).unwrap();
        let frame = frame.as_deref();
        prop_assert_eq!(ids(&store.frames(Some(&p)).unwrap(), |f| f.id), oracle.frames(&re));
        prop_assert_eq!(ids(&store.lus(Some(&p), frame).unwrap(), |lu| lu.id), oracle.lus(&re, frame));
        prop_assert_eq!(ids(&store.fes(Some(&p), frame).unwrap(), |fe| fe.id), oracle.fes(&re, frame));
        let map = store.frame_ids_and_names(Some(&p)).unwrap();
        prop_assert_eq!(map.keys().copied().collect::<BTreeSet<_>>(), oracle.frames(&re));
    }
}
