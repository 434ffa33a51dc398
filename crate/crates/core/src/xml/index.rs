use std::collections::HashSet;

use super::{children, decode, expect_root, parse_document, Ctx};
use crate::error::Result;
use crate::model::{DocumentId, FrameId, LuId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameIndexEntry {
    pub id: FrameId,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LuIndexEntry {
    pub id: LuId,
    pub name: String,
    pub frame_id: FrameId,
    pub frame_name: String,
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocumentIndexEntry {
    pub id: DocumentId,
    pub name: String,
    pub description: String,
    pub corpus_id: u32,
    pub corpus_name: String,
}

/// Reads `frameIndex.xml`. Entries come back in file order.
pub fn parse_frame_index(bytes: &[u8], origin: &str) -> Result<Vec<FrameIndexEntry>> {
    let ctx = Ctx::new(origin);
    let doc = parse_document(decode(bytes, origin)?, origin)?;
    let root = expect_root(&doc, ctx, "frameIndex")?;
    let mut ids = HashSet::new();
    let mut names = HashSet::new();
    let mut entries = Vec::new();
    for node in children(root, "frame") {
        let id = ctx.id(node, "ID")?;
        let name = ctx.nonempty_attr(node, "name")?;
        if !ids.insert(id) {
            return Err(ctx.integrity(node, format!("duplicate frame ID {id}")));
        }
        if !names.insert(name) {
            return Err(ctx.integrity(node, format!("duplicate frame name {name:?}")));
        }
        entries.push(FrameIndexEntry {
            id,
            name: name.to_string(),
        });
    }
    Ok(entries)
}

/// Reads `luIndex.xml`. Entries come back in file order.
pub fn parse_lu_index(bytes: &[u8], origin: &str) -> Result<Vec<LuIndexEntry>> {
    let ctx = Ctx::new(origin);
    let doc = parse_document(decode(bytes, origin)?, origin)?;
    let root = expect_root(&doc, ctx, "luIndex")?;
    let mut ids = HashSet::new();
    let mut entries = Vec::new();
    for node in children(root, "lu") {
        let id = ctx.id(node, "ID")?;
        if !ids.insert(id) {
            return Err(ctx.integrity(node, format!("duplicate LU ID {id}")));
        }
        entries.push(LuIndexEntry {
            id,
            name: ctx.nonempty_attr(node, "name")?.to_string(),
            frame_id: ctx.id(node, "frameID")?,
            frame_name: ctx.nonempty_attr(node, "frameName")?.to_string(),
            status: node.attribute("status").unwrap_or_default().to_string(),
        });
    }
    Ok(entries)
}

/// Reads `fulltextIndex.xml`, flattening corpora into document entries.
pub fn parse_fulltext_index(bytes: &[u8], origin: &str) -> Result<Vec<DocumentIndexEntry>> {
    let ctx = Ctx::new(origin);
    let doc = parse_document(decode(bytes, origin)?, origin)?;
    let root = expect_root(&doc, ctx, "fulltextIndex")?;
    let mut ids = HashSet::new();
    let mut entries = Vec::new();
    for corpus in children(root, "corpus") {
        let corpus_id = ctx.num(corpus, "ID")?;
        let corpus_name = ctx.attr(corpus, "name")?;
        for node in children(corpus, "document") {
            let id = ctx.id(node, "ID")?;
            if !ids.insert(id) {
                return Err(ctx.integrity(node, format!("duplicate document ID {id}")));
            }
            entries.push(DocumentIndexEntry {
                id,
                name: ctx.nonempty_attr(node, "name")?.to_string(),
                description: node.attribute("description").unwrap_or_default().to_string(),
                corpus_id,
                corpus_name: corpus_name.to_string(),
            });
        }
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn empty_frame_index() {
        assert!(parse_frame_index(b"<frameIndex/>", "f").unwrap().is_empty());
    }

    #[test]
    fn frame_index_keeps_file_order() {
        let xml = br#"<frameIndex xmlns="http://framenet.icsi.berkeley.edu">
            <legend/>
            <frame name="B" ID="9"/>
            <frame name="A" ID="3" cDate="x"/>
        </frameIndex>"#;
        let entries = parse_frame_index(xml, "f").unwrap();
        let got: Vec<_> = entries.iter().map(|e| (e.id, e.name.as_str())).collect();
        assert_eq!(got, [(9, "B"), (3, "A")]);
    }

    #[test]
    fn duplicate_frame_id_is_integrity_error() {
        let xml = br#"<frameIndex><frame name="A" ID="1"/><frame name="B" ID="1"/></frameIndex>"#;
        assert!(matches!(parse_frame_index(xml, "f"), Err(Error::Integrity { .. })));
    }

    #[test]
    fn missing_name_is_parse_error() {
        let xml = br#"<frameIndex>
<frame ID="1"/></frameIndex>"#;
        match parse_frame_index(xml, "f").unwrap_err() {
            Error::Parse { line, message, .. } => {
                assert_eq!(line, 2);
                assert!(message.contains("name"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn wrong_root_is_rejected() {
        assert!(matches!(
            parse_frame_index(b"<luIndex/>", "f"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn lu_index_entries() {
        let xml = br#"<luIndex><legend><statusType name="x"/></legend>
            <lu status="Created" frameName="Revenge" frameID="347" name="revenge.n" ID="6067" hasAnnotation="true"/>
        </luIndex>"#;
        let entries = parse_lu_index(xml, "l").unwrap();
        assert_eq!(
            entries,
            [LuIndexEntry {
                id: 6067,
                name: "revenge.n".into(),
                frame_id: 347,
                frame_name: "Revenge".into(),
                status: "Created".into(),
            }]
        );
    }

    #[test]
    fn fulltext_index_flattens_corpora() {
        let xml = br#"<fulltextIndex>
            <corpus name="C1" ID="1"><document name="D1" ID="10" description="first"/></corpus>
            <corpus name="C2" ID="2"><document name="D2" ID="20"/><document name="D3" ID="30"/></corpus>
        </fulltextIndex>"#;
        let entries = parse_fulltext_index(xml, "x").unwrap();
        let got: Vec<_> = entries
            .iter()
            .map(|e| (e.id, e.name.as_str(), e.corpus_name.as_str()))
            .collect();
        assert_eq!(got, [(10, "D1", "C1"), (20, "D2", "C2"), (30, "D3", "C2")]);
        assert_eq!(entries[0].description, "first");
    }
}
