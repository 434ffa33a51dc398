//! Parsers for the files of a FrameNet 1.7 style data directory.
//!
//! Every parser takes the raw bytes of one file plus an `origin` string
//! (normally the path relative to the data root) used in error messages.
//! Elements and attributes outside the documented subset are ignored.

mod annotation;
mod frame;
mod index;
mod markup;
mod registry;

use std::str::FromStr;

use roxmltree::{Document, Node, ParsingOptions};

use crate::error::{Error, Result};

pub use annotation::{parse_fulltext_file, parse_lu_file};
pub use frame::parse_frame_file;
pub use index::{
    parse_frame_index, parse_fulltext_index, parse_lu_index, DocumentIndexEntry, FrameIndexEntry, LuIndexEntry,
};
pub use markup::strip_markup;
pub use registry::{parse_relations_file, parse_semtypes_file};

pub(crate) fn parse_document<'a>(text: &'a str, origin: &str) -> Result<Document<'a>> {
    let options = ParsingOptions {
        allow_dtd: true,
        ..ParsingOptions::default()
    };
    Document::parse_with_options(text, options).map_err(|e| Error::Parse {
        origin: origin.to_string(),
        line: e.pos().row,
        message: e.to_string(),
    })
}

pub(crate) fn decode<'a>(bytes: &'a [u8], origin: &str) -> Result<&'a str> {
    std::str::from_utf8(bytes).map_err(|e| {
        let line = bytes[..e.valid_up_to()].iter().filter(|&&b| b == b'\n').count() as u32 + 1;
        Error::Parse {
            origin: origin.to_string(),
            line,
            message: format!("invalid UTF-8: {e}"),
        }
    })
}

/// Context for reading one parsed file: carries the origin for messages.
#[derive(Clone, Copy)]
pub(crate) struct Ctx<'o> {
    pub origin: &'o str,
}

impl<'o> Ctx<'o> {
    pub fn new(origin: &'o str) -> Self {
        Ctx { origin }
    }

    pub fn line(&self, node: Node) -> u32 {
        node.document().text_pos_at(node.range().start).row
    }

    pub fn parse_error(&self, node: Node, message: impl Into<String>) -> Error {
        Error::Parse {
            origin: self.origin.to_string(),
            line: self.line(node),
            message: message.into(),
        }
    }

    pub fn integrity(&self, node: Node, message: impl AsRef<str>) -> Error {
        Error::integrity(self.origin, format!("line {}: {}", self.line(node), message.as_ref()))
    }

    pub fn attr<'a>(&self, node: Node<'a, '_>, name: &str) -> Result<&'a str> {
        node.attribute(name)
            .ok_or_else(|| self.parse_error(node, format!("<{}> lacks attribute {name}", node.tag_name().name())))
    }

    pub fn nonempty_attr<'a>(&self, node: Node<'a, '_>, name: &str) -> Result<&'a str> {
        let value = self.attr(node, name)?;
        if value.is_empty() {
            return Err(self.parse_error(node, format!("<{}> has empty attribute {name}", node.tag_name().name())));
        }
        Ok(value)
    }

    pub fn num<T: FromStr>(&self, node: Node, name: &str) -> Result<T> {
        let raw = self.attr(node, name)?;
        raw.trim()
            .parse()
            .map_err(|_| self.parse_error(node, format!("attribute {name}={raw:?} is not a number")))
    }

    pub fn opt_num<T: FromStr>(&self, node: Node, name: &str) -> Result<Option<T>> {
        match node.attribute(name) {
            None => Ok(None),
            Some(_) => self.num(node, name).map(Some),
        }
    }

    /// Positive integer ID attribute.
    pub fn id(&self, node: Node, name: &str) -> Result<u32> {
        let id: u32 = self.num(node, name)?;
        if id == 0 {
            return Err(self.parse_error(node, format!("attribute {name} must be positive")));
        }
        Ok(id)
    }
}

pub(crate) fn children<'a, 'i>(node: Node<'a, 'i>, name: &'static str) -> impl Iterator<Item = Node<'a, 'i>> {
    node.children()
        .filter(move |c| c.is_element() && c.tag_name().name() == name)
}

pub(crate) fn child<'a, 'i>(node: Node<'a, 'i>, name: &'static str) -> Option<Node<'a, 'i>> {
    children(node, name).next()
}

/// Concatenated text content of an element (entities already decoded).
pub(crate) fn text_of(node: Node) -> String {
    node.descendants()
        .filter(|n| n.is_text())
        .filter_map(|n| n.text())
        .collect()
}

pub(crate) fn expect_root<'a, 'i>(doc: &'a Document<'i>, ctx: Ctx, name: &str) -> Result<Node<'a, 'i>> {
    let root = doc.root_element();
    if root.tag_name().name() != name {
        return Err(ctx.parse_error(
            root,
            format!("expected <{name}> root element, found <{}>", root.tag_name().name()),
        ));
    }
    Ok(root)
}

pub(crate) fn parse_bool(value: Option<&str>) -> bool {
    matches!(value, Some("true") | Some("1"))
}
