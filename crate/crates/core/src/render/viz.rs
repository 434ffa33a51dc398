//! Column-aligned drawings of annotation spans under sentence text.

use std::collections::BTreeMap;
use std::ops::Range;

use crate::model::{AnnotationSet, AnnotationStatus, Sentence, Span};

use super::wrap::break_lines;

pub const FE_MARK: char = '-';
pub const TARGET_MARK: char = '*';
pub const SUPPORT_MARK: char = '^';

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowKind {
    Text,
    Marker,
    Label,
    Index,
}

/// One line of the unwrapped drawing. Every row has one cell per column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub kind: RowKind,
    pub cells: Vec<char>,
}

/// A wrapped slice of the drawing: the columns it covers and the rows that
/// have something to show there, right-trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub columns: Range<usize>,
    pub lines: Vec<(RowKind, String)>,
}

/// A sentence with annotation rows aligned under it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Visualization {
    columns: Vec<Option<usize>>,
    breakable: Vec<bool>,
    rows: Vec<Row>,
    footer: Vec<String>,
}

impl Visualization {
    /// Maps each column to the text character it shows; `None` for padding
    /// inserted to fit a wide index label.
    pub fn columns(&self) -> &[Option<usize>] {
        &self.columns
    }

    /// The text row followed by the annotation rows, tier by tier.
    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn footer(&self) -> &[String] {
        &self.footer
    }

    /// Cuts every row at the line breaks of the text row. Rows that are
    /// blank within a segment are left out of it.
    pub fn segments(&self, width: usize) -> Vec<Segment> {
        break_lines(&self.breakable, width, false)
            .into_iter()
            .map(|range| {
                let lines = self
                    .rows
                    .iter()
                    .filter_map(|row| {
                        let line: String = row.cells[range.clone()].iter().collect();
                        let line = line.trim_end().to_string();
                        (row.kind == RowKind::Text || !line.is_empty()).then_some((row.kind, line))
                    })
                    .collect();
                Segment { columns: range, lines }
            })
            .collect()
    }

    /// Segments separated by blank lines, then the footer.
    pub fn render(&self, width: usize) -> String {
        let mut out = String::new();
        for (i, segment) in self.segments(width).iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            for (_, line) in &segment.lines {
                out.push_str(line);
                out.push('\n');
            }
        }
        for line in &self.footer {
            out.push_str(line);
            out.push('\n');
        }
        out
    }
}

/// A span drawn on one tier.
#[derive(Debug, Clone)]
struct Mark {
    span: Span,
    marker: char,
    label: Option<String>,
    index: Option<String>,
}

/// Truncated labels and the full names they stand for, in first-use order.
#[derive(Default)]
struct Abbreviations {
    entries: Vec<(String, String)>,
}

impl Abbreviations {
    /// `full` cut to `width` characters. A cut that collides with a
    /// different name gets a numeric suffix.
    fn shorten(&mut self, full: &str, width: usize) -> String {
        let chars: Vec<char> = full.chars().collect();
        if chars.len() <= width {
            return full.to_string();
        }
        let mut short: String = chars[..width].iter().collect();
        let mut n = 0;
        loop {
            match self.entries.iter().find(|(s, _)| *s == short) {
                Some((_, f)) if f == full => return short,
                Some(_) => {
                    n += 1;
                    let suffix = n.to_string();
                    let keep = width.saturating_sub(suffix.len());
                    short = chars[..keep].iter().collect::<String>() + &suffix;
                }
                None => {
                    self.entries.push((short.clone(), full.to_string()));
                    return short;
                }
            }
        }
    }

    fn footer_line(&self) -> Option<String> {
        if self.entries.is_empty() {
            return None;
        }
        let pairs: Vec<String> = self.entries.iter().map(|(s, f)| format!("{s}={f}")).collect();
        Some(format!(" ({})", pairs.join(", ")))
    }
}

/// Places marks on tiers so that marks on one tier never overlap, using
/// the first tier with room.
fn stack(marks: Vec<Mark>) -> Vec<Vec<Mark>> {
    let mut tiers: Vec<Vec<Mark>> = Vec::new();
    for mark in marks {
        match tiers
            .iter_mut()
            .find(|tier| tier.iter().all(|m| !m.span.overlaps(&mark.span)))
        {
            Some(tier) => tier.push(mark),
            None => tiers.push(vec![mark]),
        }
    }
    tiers
}

fn assemble(text: &str, tiers: &[Vec<Mark>], index_rows: bool, mut footer: Vec<String>) -> Visualization {
    let mut chars: Vec<char> = text.chars().collect();
    let spaces: Vec<bool> = chars.iter().map(|c| c.is_whitespace()).collect();
    for c in chars.iter_mut() {
        if c.is_whitespace() {
            *c = ' ';
        }
    }
    let needed = tiers.iter().flatten().map(|m| m.span.end + 1).max().unwrap_or(0);
    let mut spaces = spaces;
    while chars.len() < needed {
        chars.push(' ');
        spaces.push(true);
    }

    // Extra columns after a span whose index label is wider than the span.
    let mut pad: BTreeMap<usize, usize> = BTreeMap::new();
    for mark in tiers.iter().flatten() {
        if let Some(index) = &mark.index {
            let extra = index.chars().count().saturating_sub(mark.span.width());
            if extra > 0 {
                let slot = pad.entry(mark.span.end).or_default();
                *slot = (*slot).max(extra);
            }
        }
    }

    let mut columns = Vec::new();
    let mut breakable = Vec::new();
    let mut column_of = Vec::with_capacity(chars.len());
    for (offset, &space) in spaces.iter().enumerate() {
        column_of.push(columns.len());
        columns.push(Some(offset));
        breakable.push(space);
        for _ in 0..pad.get(&offset).copied().unwrap_or(0) {
            columns.push(None);
            breakable.push(false);
        }
    }
    let blank = vec![' '; columns.len()];

    let mut rows = vec![Row {
        kind: RowKind::Text,
        cells: columns.iter().map(|c| c.map_or(' ', |o| chars[o])).collect(),
    }];
    let mut abbreviations = Abbreviations::default();
    for tier in tiers {
        let mut order: Vec<&Mark> = tier.iter().collect();
        order.sort_by_key(|m| m.span.start);
        let mut markers = blank.clone();
        let mut labels = blank.clone();
        let mut indices = blank.clone();
        for mark in order {
            for offset in mark.span.start..=mark.span.end {
                markers[column_of[offset]] = mark.marker;
            }
            let start = column_of[mark.span.start];
            if let Some(label) = &mark.label {
                let short = abbreviations.shorten(label, mark.span.width());
                write_at(&mut labels, start, &short);
            }
            if let Some(index) = &mark.index {
                write_at(&mut indices, start, index);
            }
        }
        rows.push(Row {
            kind: RowKind::Marker,
            cells: markers,
        });
        rows.push(Row {
            kind: RowKind::Label,
            cells: labels,
        });
        if index_rows {
            rows.push(Row {
                kind: RowKind::Index,
                cells: indices,
            });
        }
    }
    footer.extend(abbreviations.footer_line());
    Visualization {
        columns,
        breakable,
        rows,
        footer,
    }
}

fn write_at(cells: &mut [char], start: usize, s: &str) {
    for (cell, c) in cells[start..].iter_mut().zip(s.chars()) {
        *cell = c;
    }
}

/// Support and copula labels as drawn: lower case, hyphens dropped.
fn support_label(name: &str) -> String {
    name.to_lowercase().replace('-', "")
}

/// The text alone, wrapped like an annotated sentence.
pub fn plain(text: &str) -> Visualization {
    assemble(text, &[], false, Vec::new())
}

/// Drawing of one frame annotation set over its sentence: FE spans, the
/// target and support words on the first tier, with further tiers for
/// overlaps and for FE layers of higher rank. Null instantiations and
/// label abbreviations go to the footer.
pub fn annotation_set(text: &str, set: &AnnotationSet) -> Visualization {
    let fe_marks = |rank: u32| -> Vec<Mark> {
        let mut marks: Vec<Mark> = set
            .fe
            .overt
            .iter()
            .filter(|fe| fe.rank == rank)
            .map(|fe| Mark {
                span: fe.span,
                marker: FE_MARK,
                label: Some(fe.name.clone()),
                index: None,
            })
            .collect();
        marks.sort_by_key(|m| m.span.start);
        marks
    };

    let mut support: Vec<Mark> = set
        .pos_specific_layer()
        .map(|layer| {
            layer
                .spans()
                .filter(|(_, name)| *name != "X")
                .map(|(span, name)| Mark {
                    span,
                    marker: SUPPORT_MARK,
                    label: Some(support_label(name)),
                    index: None,
                })
                .collect()
        })
        .unwrap_or_default();
    support.sort_by_key(|m| m.span.start);

    let primary = fe_marks(1);
    let separate_support = support
        .iter()
        .any(|s| primary.iter().any(|fe| fe.span.overlaps(&s.span)));

    let mut tiers = Vec::new();
    let mut first_band = primary;
    if separate_support {
        tiers.extend(stack(support));
    } else {
        first_band.extend(support);
        first_band.sort_by_key(|m| m.span.start);
    }
    let band_start = tiers.len();
    tiers.extend(stack(first_band));

    let targets: Vec<Mark> = set
        .target
        .iter()
        .map(|&span| Mark {
            span,
            marker: TARGET_MARK,
            label: None,
            index: None,
        })
        .collect();
    if !targets.is_empty() {
        match tiers.get_mut(band_start) {
            Some(tier) if targets.iter().all(|t| tier.iter().all(|m| !m.span.overlaps(&t.span))) => {
                tier.extend(targets);
            }
            _ => tiers.extend(stack(targets)),
        }
    }
    for rank in 2..=set.fe_ranks() {
        tiers.extend(stack(fe_marks(rank)));
    }

    let mut null: Vec<_> = set.fe.null.iter().collect();
    null.sort_by_key(|n| n.rank);
    let footer = null.into_iter().map(|n| format!("[{}:{}]", n.name, n.kind)).collect();
    assemble(text, &tiers, false, footer)
}

/// Drawing of every frame annotation set of a full-text sentence: targets
/// marked with the frame name and the 1-based set index. `undefined_lu`
/// decides which sets get the `?` flag.
pub fn full_text(sentence: &Sentence, undefined_lu: impl Fn(&AnnotationSet) -> bool) -> Visualization {
    struct Target {
        span: Span,
        frame: String,
        index: Option<String>,
    }

    let mut targets: Vec<Target> = Vec::new();
    for (n, set) in sentence.frame_sets().iter().enumerate() {
        let mut index = format!("[{}]", n + 1);
        let unann = set.status == AnnotationStatus::Unann;
        let undefined = undefined_lu(set);
        if unann || undefined {
            index.push(' ');
            if unann {
                index.push('!');
            }
            if undefined {
                index.push('?');
            }
        }
        let frame = set.frame_name.clone().unwrap_or_default();
        for (k, &span) in set.target.iter().enumerate() {
            targets.push(Target {
                span,
                frame: frame.clone(),
                // Only the first piece of a discontinuous target is labeled.
                index: (k == 0).then(|| index.clone()),
            });
        }
    }
    targets.sort_by(|a, b| (a.span.start, a.span.end, &a.frame).cmp(&(b.span.start, b.span.end, &b.frame)));

    // Sets sharing a target and a frame are drawn once with joined indices.
    let mut merged: Vec<Target> = Vec::new();
    for target in targets {
        match merged.last_mut() {
            Some(prev) if prev.span == target.span && prev.frame == target.frame => {
                prev.index = match (prev.index.take(), target.index) {
                    (Some(a), Some(b)) => Some((a + &b).replace(" !", "! ").replace(" ?", "? ")),
                    (a, b) => a.or(b),
                };
            }
            _ => merged.push(target),
        }
    }

    let marks = merged
        .into_iter()
        .map(|t| Mark {
            span: t.span,
            marker: TARGET_MARK,
            label: t.index.is_some().then_some(t.frame),
            index: t.index,
        })
        .collect();
    assemble(&sentence.text, &stack(marks), true, Vec::new())
}
