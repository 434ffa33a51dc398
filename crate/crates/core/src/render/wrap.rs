//! Greedy line breaking shared by prose blocks and aligned annotation rows.

use std::collections::VecDeque;
use std::ops::Range;

/// Splits a row of cells into lines of at most `width` cells.
///
/// `breakable[i]` marks cells that are whitespace; lines break only between
/// a whitespace run and a non-whitespace run, except that a run longer than
/// the whole width is cut to fill the current line. With `drop_whitespace`
/// a whitespace run is not kept at the end of a line or at the start of a
/// later line; without it the returned ranges tile the input exactly.
pub fn break_lines(breakable: &[bool], width: usize, drop_whitespace: bool) -> Vec<Range<usize>> {
    let width = width.max(1);
    let mut chunks: VecDeque<Range<usize>> = VecDeque::new();
    let mut start = 0;
    for i in 1..=breakable.len() {
        if i == breakable.len() || breakable[i] != breakable[start] {
            chunks.push_back(start..i);
            start = i;
        }
    }

    let is_space = |r: &Range<usize>| breakable[r.start];
    let mut lines = Vec::new();
    while !chunks.is_empty() {
        let mut line: Vec<Range<usize>> = Vec::new();
        let mut len = 0;
        if drop_whitespace && !lines.is_empty() && chunks.front().is_some_and(is_space) {
            chunks.pop_front();
        }
        while let Some(chunk) = chunks.front() {
            if len + chunk.len() > width {
                break;
            }
            len += chunk.len();
            line.push(chunks.pop_front().unwrap());
        }
        if let Some(chunk) = chunks.front_mut() {
            if chunk.len() > width {
                let take = width - len;
                line.push(chunk.start..chunk.start + take);
                chunk.start += take;
            }
        }
        if drop_whitespace && line.last().is_some_and(|r| !r.is_empty() && is_space(r)) {
            line.pop();
        }
        let line: Vec<_> = line.into_iter().filter(|r| !r.is_empty()).collect();
        if let (Some(first), Some(last)) = (line.first(), line.last()) {
            lines.push(first.start..last.end);
        }
    }
    lines
}

/// Wraps prose to `width` columns, breaking at whitespace.
pub fn fill(text: &str, width: usize) -> Vec<String> {
    let chars: Vec<char> = text.chars().map(|c| if c.is_whitespace() { ' ' } else { c }).collect();
    let breakable: Vec<bool> = chars.iter().map(|&c| c == ' ').collect();
    // Leading whitespace on the first line is kept, as the rest of a line is.
    break_lines(&breakable, width, true)
        .into_iter()
        .map(|r| chars[r].iter().collect())
        .collect()
}

/// Wraps prose and prefixes every line with `indent`, one line per entry.
pub fn indented_block(text: &str, width: usize, indent: &str) -> String {
    let mut out = String::new();
    for line in fill(text, width) {
        out.push_str(indent);
        out.push_str(&line);
        out.push('\n');
    }
    out
}
