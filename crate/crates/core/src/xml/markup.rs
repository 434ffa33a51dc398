/// Converts definition markup to plain text.
///
/// Tags are removed without leaving a gap, character entities are decoded,
/// and whitespace runs become single spaces. A `<` that does not start a
/// tag (or is never closed) is kept as text.
pub fn strip_markup(markup: &str) -> String {
    let untagged = remove_tags(markup);
    let decoded = decode_entities(&untagged);
    decoded.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn remove_tags(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut rest = s;
    while let Some(pos) = rest.find('<') {
        out.push_str(&rest[..pos]);
        let after = &rest[pos + 1..];
        let starts_tag = after
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || matches!(c, '/' | '!' | '?'));
        match after.find('>') {
            Some(close) if starts_tag => rest = &after[close + 1..],
            _ => {
                out.push('<');
                rest = after;
            }
        }
    }
    out.push_str(rest);
    out
}

fn decode_entities(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut rest = s;
    while let Some(pos) = rest.find('&') {
        out.push_str(&rest[..pos]);
        let after = &rest[pos + 1..];
        let decoded = after
            .find(';')
            .filter(|&end| end <= 10)
            .and_then(|end| entity(&after[..end]).map(|c| (c, end)));
        match decoded {
            Some((c, end)) => {
                out.push(c);
                rest = &after[end + 1..];
            }
            None => {
                out.push('&');
                rest = after;
            }
        }
    }
    out.push_str(rest);
    out
}

fn entity(name: &str) -> Option<char> {
    match name {
        "lt" => Some('<'),
        "gt" => Some('>'),
        "amp" => Some('&'),
        "quot" => Some('"'),
        "apos" => Some('\''),
        _ => {
            let code = if let Some(hex) = name.strip_prefix("#x").or_else(|| name.strip_prefix("#X")) {
                u32::from_str_radix(hex, 16).ok()?
            } else {
                name.strip_prefix('#')?.parse().ok()?
            };
            char::from_u32(code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn removes_tags() {
        assert_eq!(
            strip_markup("<def-root>This frame concerns <fen>Avenger</fen></def-root>"),
            "This frame concerns Avenger"
        );
    }

    #[test]
    fn collapses_whitespace() {
        assert_eq!(strip_markup("a  b\n c"), "a b c");
        assert_eq!(strip_markup("  \t "), "");
    }

    #[test]
    fn adjacent_tags_leave_no_gap() {
        assert_eq!(strip_markup("the<fen>Punishment</fen>"), "thePunishment");
    }

    #[test]
    fn decodes_entities_after_tag_removal() {
        assert_eq!(
            strip_markup("a &lt;b&gt; &amp; &#65;&#x42; &quot;q&apos;"),
            "a <b> & AB \"q'"
        );
        assert_eq!(strip_markup("AT&T &bogus; &"), "AT&T &bogus; &");
    }

    #[test]
    fn stray_angle_brackets_are_text() {
        assert_eq!(strip_markup("x < y and 3<4"), "x < y and 3<4");
        assert_eq!(strip_markup("open <tag never closed"), "open <tag never closed");
    }

    proptest! {
        #[test]
        fn output_has_no_tags_or_runs(s in "[a-z <>/&;  \n]{0,60}") {
            let out = strip_markup(&s);
            prop_assert!(!out.contains("  "));
            prop_assert_eq!(out.trim(), out.as_str());
            prop_assert_eq!(strip_markup(&out), strip_markup(&strip_markup(&out)));
        }

        #[test]
        fn plain_words_survive(words in proptest::collection::vec("[a-zA-Z0-9.,']{1,8}", 0..10)) {
            let text = words.join(" ");
            prop_assert_eq!(strip_markup(&format!("<ex>{text}</ex>")), text);
        }
    }
}
