//! Acceptance checks, one line per criterion. Runs without the test harness
//! so the lines show up in `cargo test` output.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::panic;
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{fixture_dir, framelex, golden};
use framelex::model::{SemTypeId, Sentence};
use framelex::render::viz::{FE_MARK, SUPPORT_MARK, TARGET_MARK};
use framelex::render::{RowKind, Visualization};
use framelex::{DisplayOptions, Renderer, Store, DATA_ENV};
use framelex_cli::commands::Counts;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use regex::Regex;

enum Outcome {
    Pass,
    Fail(String),
    Skip(String),
}

type Check = Result<(), String>;

type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn open() -> Store {
    Store::open(fixture_dir()).expect("fixture opens")
}

fn renderer(store: &Store) -> Renderer<'_> {
    Renderer::new(store, DisplayOptions::default())
}

fn sentence(store: &Store, id: u32) -> std::sync::Arc<Sentence> {
    store
        .sents()
        .map(|s| s.unwrap())
        .find(|s| s.id == id)
        .unwrap_or_else(|| panic!("sentence {id} in fixture"))
}

fn golden_frame() -> Check {
    let started = Instant::now();
    let store = open();
    let text = renderer(&store).frame(&store.frame("Revenge").unwrap()).unwrap();
    let elapsed = started.elapsed();
    ensure!(text == golden("frame_revenge.txt"), "display differs from golden");
    ensure!(text.starts_with("frame (347): Revenge\n"), "header");
    for needle in [
        "[lexUnit] 18 lexical units",
        "[FE] 14 frame elements",
        "[FEcoreSets] 2 frame element core sets",
        "[frameRelations] 1 frame relations",
    ] {
        ensure!(text.contains(needle), "missing {needle:?}");
    }
    let relation_lines = text
        .lines()
        .filter(|l| l.starts_with("  <") && l.contains(" -- "))
        .count();
    ensure!(relation_lines == 1, "{relation_lines} relation lines");
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(())
}

fn golden_exemplar() -> Check {
    let store = open();
    let text = renderer(&store).sentence(&sentence(&store, 929548)).unwrap();
    ensure!(text == golden("exemplar_929548.txt"), "display differs from golden");
    for needle in ["^^^", "[Injury:DNI]", "(Avenge=Avenger, sup=supp, Ave=Avenger)"] {
        ensure!(text.contains(needle), "missing {needle:?}");
    }
    Ok(())
}

fn golden_fulltext() -> Check {
    let store = open();
    let text = renderer(&store).sentence(&sentence(&store, 4148528)).unwrap();
    ensure!(text == golden("fulltext_4148528.txt"), "display differs from golden");
    ensure!(text.contains("[3] ?"), "missing \"[3] ?\"");
    let lines: Vec<&str> = text.lines().collect();
    let row = lines
        .iter()
        .position(|l| l.contains("find him out"))
        .ok_or("no line with \"find him out\"")?;
    let (words, marks) = (lines[row], lines[row + 1]);
    let col = |w: &str| words.find(w).unwrap();
    let marked = |from: usize, len: usize| {
        marks
            .get(from..from + len)
            .is_some_and(|m| m.chars().all(|c| c == TARGET_MARK))
    };
    ensure!(marked(col("find "), 4), "\"find\" not marked");
    ensure!(marked(col(" out ") + 1, 3), "\"out\" not marked");
    let him = col(" him ") + 1;
    ensure!(
        marks.get(him..him + 3).is_none_or(|m| m.trim().is_empty()),
        "\"him\" marked"
    );
    Ok(())
}

fn lookup_reproduction() -> Check {
    let store = open();
    let ids =
        |frames: Vec<std::sync::Arc<framelex::model::Frame>>| frames.iter().map(|f| f.id).collect::<BTreeSet<_>>();
    ensure!(
        ids(store.frames(Some("(?i)creat")).unwrap()) == BTreeSet::from([268, 1658]),
        "frames"
    );
    let lus: BTreeSet<u32> = store
        .lus(Some(r".+en\.v"), None)
        .unwrap()
        .iter()
        .map(|lu| lu.id)
        .collect();
    ensure!(lus.is_superset(&BTreeSet::from([5331, 7544])), "lus gave {lus:?}");

    let fresh = open();
    let map = fresh.frame_ids_and_names(Some("(?i)creat")).unwrap();
    let expected = BTreeMap::from([
        (268, "Cooking_creation".to_string()),
        (1658, "Create_physical_artwork".to_string()),
    ]);
    ensure!(map == expected, "frame_ids_and_names gave {map:?}");
    let frame_reads = fresh.access_log().iter().filter(|p| p.starts_with("frame/")).count();
    ensure!(frame_reads == 0, "{frame_reads} frame file reads");
    Ok(())
}

fn laziness() -> Check {
    let run = || {
        let store = open();
        let after_open = store.access_log();
        renderer(&store).frame(&store.frame("Revenge").unwrap()).unwrap();
        (after_open, store.access_log())
    };
    let (after_open, log) = run();
    ensure!(after_open == ["frameIndex.xml"], "open read {after_open:?}");
    let extra = &log[after_open.len()..];
    ensure!(extra.len() <= 3, "read {extra:?}");
    ensure!(
        !extra.iter().any(|p| p.starts_with("lu/")),
        "read an LU file: {extra:?}"
    );
    ensure!(run().1 == log, "access log differs between runs");
    Ok(())
}

/// Names straight from the frame files, with no help from the store.
struct Scan {
    frames: Vec<(u32, String)>,
    lus: Vec<(u32, String)>,
    fes: Vec<(u32, String)>,
}

impl Scan {
    fn read(root: &Path) -> Scan {
        let mut scan = Scan {
            frames: Vec::new(),
            lus: Vec::new(),
            fes: Vec::new(),
        };
        for entry in fs::read_dir(root.join("frame")).unwrap() {
            let xml = fs::read_to_string(entry.unwrap().path()).unwrap();
            let doc = roxmltree::Document::parse(&xml).unwrap();
            let attrs = |n: roxmltree::Node| {
                (
                    n.attribute("ID").unwrap().parse().unwrap(),
                    n.attribute("name").unwrap().to_string(),
                )
            };
            let root = doc.root_element();
            scan.frames.push(attrs(root));
            for child in root.children().filter(|n| n.is_element()) {
                match child.tag_name().name() {
                    "FE" => scan.fes.push(attrs(child)),
                    "lexUnit" => scan.lus.push(attrs(child)),
                    _ => {}
                }
            }
        }
        scan
    }
}

fn filter(items: &[(u32, String)], re: &Regex) -> BTreeSet<u32> {
    items
        .iter()
        .filter(|(_, n)| re.is_match(n))
        .map(|(id, _)| *id)
        .collect()
}

/// A valid regular expression built from pieces of real names and a few
/// operators.
fn random_pattern(rng: &mut StdRng, words: &[&str]) -> String {
    let mut pattern = String::new();
    if rng.gen_bool(0.3) {
        pattern.push_str("(?i)");
    }
    if rng.gen_bool(0.2) {
        pattern.push('^');
    }
    for _ in 0..rng.gen_range(1..=2) {
        let word: Vec<char> = words[rng.gen_range(0..words.len())].chars().collect();
        let start = rng.gen_range(0..word.len());
        let end = rng.gen_range(start + 1..=word.len().min(start + 4));
        let piece: String = word[start..end].iter().collect();
        pattern.push_str(&regex::escape(&piece));
        match rng.gen_range(0..5) {
            0 => pattern.push_str(".*"),
            1 => pattern.push('.'),
            2 => pattern.push_str("[a-m]"),
            _ => {}
        }
    }
    if rng.gen_bool(0.2) {
        pattern.push('$');
    }
    pattern
}

fn oracle_equivalence() -> Check {
    let started = Instant::now();
    let store = open();
    let scan = Scan::read(&fixture_dir());
    let words: Vec<&str> = scan
        .frames
        .iter()
        .chain(&scan.lus)
        .chain(&scan.fes)
        .map(|(_, n)| n.as_str())
        .collect();
    let mut rng = StdRng::seed_from_u64(6);
    for _ in 0..100 {
        let pattern = random_pattern(&mut rng, &words);
        let re = Regex::new(&pattern).unwrap();
        let frames: BTreeSet<u32> = store.frames(Some(&pattern)).unwrap().iter().map(|f| f.id).collect();
        let lus: BTreeSet<u32> = store.lus(Some(&pattern), None).unwrap().iter().map(|l| l.id).collect();
        let fes: BTreeSet<u32> = store.fes(Some(&pattern), None).unwrap().iter().map(|f| f.id).collect();
        ensure!(frames == filter(&scan.frames, &re), "frames differ for {pattern:?}");
        ensure!(lus == filter(&scan.lus, &re), "lus differ for {pattern:?}");
        ensure!(fes == filter(&scan.fes, &re), "fes differ for {pattern:?}");
    }
    let elapsed = started.elapsed();
    ensure!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    Ok(())
}

fn fe_semtypes(store: &Store) -> BTreeMap<u32, Option<SemTypeId>> {
    store
        .frames(None)
        .unwrap()
        .iter()
        .flat_map(|f| {
            f.fes
                .values()
                .map(|fe| (fe.id, fe.sem_type().map(|st| st.id)))
                .collect::<Vec<_>>()
        })
        .collect()
}

fn propagation() -> Check {
    let store = open();
    let before = fe_semtypes(&store);
    let changed = store.propagate_semtypes().unwrap();
    let after = fe_semtypes(&store);
    let avenger = store.frame("Revenge").unwrap().fe("Avenger").unwrap().clone();
    let sentient = store.semtype("Sentient").unwrap();
    ensure!(
        avenger.sem_type().map(|st| st.id) == Some(sentient.id),
        "Avenger has {:?}",
        avenger.sem_type()
    );
    ensure!(changed > 0, "first call changed nothing");
    ensure!(
        store.propagate_semtypes().unwrap() == 0,
        "second call changed something"
    );
    for (fe, old) in &before {
        if old.is_some() {
            ensure!(after[fe] == *old, "FE {fe} changed from {old:?} to {:?}", after[fe]);
        }
    }
    let gained = before
        .iter()
        .filter(|(fe, old)| old.is_none() && after[*fe].is_some())
        .count();
    ensure!(gained == changed, "returned {changed} but {gained} FEs gained a type");
    Ok(())
}

fn semtype_order() -> Check {
    let store = open();
    let types = store.semtypes().unwrap();
    ensure!(types.len() <= 20, "{} types", types.len());
    let names: Vec<&str> = types.iter().map(|t| t.name.as_str()).collect();
    let inherits = |a: &str, b: &str| store.semtype_inherits(a, b).unwrap();
    for &a in &names {
        ensure!(inherits(a, a), "{a} does not inherit from itself");
        for &b in &names {
            if a != b && inherits(a, b) {
                ensure!(!inherits(b, a), "{a} and {b} inherit from each other");
            }
            for &c in &names {
                if inherits(a, b) && inherits(b, c) {
                    ensure!(inherits(a, c), "{a} < {b} < {c} but not {a} < {c}");
                }
            }
        }
    }
    let chain = names
        .iter()
        .filter(|a| names.iter().filter(|b| inherits(a, b)).count() >= 3)
        .count();
    ensure!(chain > 0, "fixture has no chain of three types");
    Ok(())
}

fn error_contract() -> Check {
    let store = open();
    let failures = [
        store.frame("NoSuchFrame").map(|_| ()),
        store.lu(1).map(|_| ()),
        store.semtype("X").map(|_| ()),
        store.doc(99999).map(|_| ()),
    ];
    for (i, result) in failures.into_iter().enumerate() {
        match result {
            Err(e) if e.is_lookup_failure() => {}
            other => return Err(format!("case {i}: {other:?}")),
        }
    }
    for args in [
        ["frame", "NoSuchFrame"],
        ["lu", "1"],
        ["semtype", "X"],
        ["doc", "99999"],
    ] {
        let code = framelex(&args).status.code();
        ensure!(code == Some(1), "{args:?} exited with {code:?}");
    }
    Ok(())
}

fn annotation_partition() -> Check {
    let store = open();
    let names: Vec<String> = store
        .lu_index()
        .unwrap()
        .entries
        .iter()
        .map(|e| e.name.clone())
        .collect();
    let words: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut rng = StdRng::seed_from_u64(10);
    let ids = |sets: Vec<std::sync::Arc<framelex::model::AnnotationSet>>| sets.iter().map(|s| s.id).collect::<Vec<_>>();
    for _ in 0..20 {
        let pattern = random_pattern(&mut rng, &words);
        let all = ids(store.annotations(Some(&pattern), true, true).unwrap());
        let ex = ids(store.annotations(Some(&pattern), true, false).unwrap());
        let ft = ids(store.annotations(Some(&pattern), false, true).unwrap());
        let ex_set: BTreeSet<u32> = ex.iter().copied().collect();
        ensure!(ft.iter().all(|id| !ex_set.contains(id)), "overlap for {pattern:?}");
        let union: Vec<u32> = ex.iter().chain(&ft).copied().collect();
        ensure!(all == union, "union differs for {pattern:?}");
    }
    for sentence in store.exemplars(None).unwrap() {
        let n = sentence.frame_sets().len();
        ensure!(n == 1, "exemplar {} has {n} frame sets", sentence.id);
    }
    Ok(())
}

/// Offsets each marker character should cover, read off the annotation.
fn expected_marks(sentence: &Sentence) -> BTreeMap<char, BTreeSet<usize>> {
    let mut out: BTreeMap<char, BTreeSet<usize>> = BTreeMap::new();
    let mut add = |c: char, span: framelex::model::Span| out.entry(c).or_default().extend(span.start..=span.end);
    if sentence.is_exemplar() {
        let Some(set) = sentence.frame_set() else {
            return out;
        };
        set.target.iter().for_each(|&t| add(TARGET_MARK, t));
        set.fe.overt.iter().for_each(|fe| add(FE_MARK, fe.span));
        if let Some(layer) = set.pos_specific_layer() {
            layer
                .spans()
                .filter(|(_, name)| *name != "X")
                .for_each(|(span, _)| add(SUPPORT_MARK, span));
        }
    } else {
        for set in sentence.frame_sets() {
            set.target.iter().for_each(|&t| add(TARGET_MARK, t));
        }
    }
    out
}

fn check_alignment(sentence: &Sentence, viz: &Visualization, width: usize) -> Check {
    let columns = viz.columns();
    let mut found: BTreeMap<char, BTreeSet<usize>> = BTreeMap::new();
    for segment in viz.segments(width) {
        let mut markers: Vec<char> = Vec::new();
        for (kind, line) in &segment.lines {
            let cells: Vec<char> = line.chars().collect();
            let offset = |j: usize| columns[segment.columns.start + j];
            match kind {
                RowKind::Text => {}
                RowKind::Marker => {
                    for (j, &c) in cells.iter().enumerate().filter(|(_, c)| **c != ' ') {
                        let at = offset(j).ok_or(format!("marker on padding in {}", sentence.id))?;
                        found.entry(c).or_default().insert(at);
                    }
                    markers = cells;
                }
                RowKind::Label | RowKind::Index => {
                    for (j, _) in cells.iter().enumerate().filter(|(_, c)| **c != ' ') {
                        let under_marker = markers.get(j).is_some_and(|m| *m != ' ');
                        let padding = *kind == RowKind::Index && offset(j).is_none();
                        ensure!(under_marker || padding, "{kind:?} off its marker in {}", sentence.id);
                    }
                }
            }
        }
    }
    ensure!(
        found == expected_marks(sentence),
        "markers misplaced in {} at width {width}",
        sentence.id
    );
    Ok(())
}

fn alignment() -> Check {
    let store = open();
    let r = renderer(&store);
    let mut checked = 0;
    for sentence in store.sents() {
        let sentence = sentence.unwrap();
        let viz = r.visualize(&sentence).unwrap();
        for width in [20, 40, 65, 120] {
            check_alignment(&sentence, &viz, width)?;
        }
        checked += 1;
    }
    ensure!(checked > 0, "no sentences");
    Ok(())
}

fn real_data() -> Outcome {
    let Some(root) = std::env::var_os(DATA_ENV).filter(|v| !v.is_empty()) else {
        return Outcome::Skip(format!("{DATA_ENV} not set"));
    };
    let started = Instant::now();
    let store = match Store::open(&root) {
        Ok(store) => store,
        Err(e) => return Outcome::Fail(format!("open: {e}")),
    };
    let opened = started.elapsed();
    if opened >= Duration::from_secs(5) {
        return Outcome::Fail(format!("open took {opened:?}"));
    }
    match Counts::collect(&store) {
        Ok(c) if c.frames >= 1000 && c.lexical_units >= 10000 => Outcome::Pass,
        Ok(c) => Outcome::Fail(format!("{} frames, {} LUs", c.frames, c.lexical_units)),
        Err(e) => Outcome::Fail(format!("stats: {e}")),
    }
}

fn guarded(check: fn() -> Check) -> Outcome {
    match panic::catch_unwind(check) {
        Ok(Ok(())) => Outcome::Pass,
        Ok(Err(reason)) => Outcome::Fail(reason),
        Err(payload) => {
            let message = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Outcome::Fail(format!("panicked: {message}"))
        }
    }
}

fn main() -> ExitCode {
    panic::set_hook(Box::new(|_| {}));
    let checks: &[Criterion] = &[
        ("golden frame display", golden_frame),
        ("golden exemplar display", golden_exemplar),
        ("golden full-text display", golden_fulltext),
        ("lookup reproduction", lookup_reproduction),
        ("laziness", laziness),
        ("oracle equivalence", oracle_equivalence),
        ("semantic type propagation", propagation),
        ("semantic type order", semtype_order),
        ("error contract", error_contract),
        ("annotation partition", annotation_partition),
        ("alignment", alignment),
    ];
    let outcomes = checks
        .iter()
        .map(|&(name, check)| (name, guarded(check)))
        .chain([("real data smoke", real_data())]);
    let mut failed = 0;
    for (i, (name, outcome)) in outcomes.enumerate() {
        match outcome {
            Outcome::Pass => println!("criterion {:>2} PASS {name}", i + 1),
            Outcome::Skip(why) => println!("criterion {:>2} SKIP {name}: {why}", i + 1),
            Outcome::Fail(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
