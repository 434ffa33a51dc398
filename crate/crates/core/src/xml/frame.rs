use std::collections::HashSet;
use std::sync::{Arc, Weak};

use indexmap::IndexMap;
use once_cell::sync::OnceCell;
use roxmltree::Node;

use super::{child, children, decode, expect_root, parse_bool, parse_document, strip_markup, text_of, Ctx};
use crate::error::Result;
use crate::model::{CoreType, Frame, FrameElement, Lexeme, LexicalUnit, SemTypeRef, SentenceCount};

/// Reads one `frame/<Name>.xml` file. FEs and LUs keep file order; LU
/// exemplars are not part of this file.
pub fn parse_frame_file(bytes: &[u8], origin: &str) -> Result<Arc<Frame>> {
    let ctx = Ctx::new(origin);
    let doc = parse_document(decode(bytes, origin)?, origin)?;
    let root = expect_root(&doc, ctx, "frame")?;

    let id = ctx.id(root, "ID")?;
    let name = ctx.nonempty_attr(root, "name")?.to_string();
    let definition_markup = child(root, "definition").map(text_of).unwrap_or_default();
    let sem_types = sem_type_refs(ctx, root)?;

    let fe_nodes: Vec<_> = children(root, "FE").collect();
    let mut fe_names = HashSet::new();
    for node in &fe_nodes {
        let fe_name = ctx.nonempty_attr(*node, "name")?;
        if !fe_names.insert(fe_name) {
            return Err(ctx.integrity(*node, format!("duplicate FE name {fe_name:?} in frame {name}")));
        }
    }

    let mut fe_core_sets = Vec::new();
    for set in children(root, "FEcoreSet") {
        let mut members = Vec::new();
        for member in children(set, "memberFE") {
            let member_name = ctx.nonempty_attr(member, "name")?;
            if !fe_names.contains(member_name) {
                return Err(ctx.integrity(
                    member,
                    format!("core set member {member_name:?} is not an FE of frame {name}"),
                ));
            }
            members.push(member_name.to_string());
        }
        fe_core_sets.push(members);
    }

    // Everything that can fail is read before the cyclic construction.
    let mut fe_parts = Vec::with_capacity(fe_nodes.len());
    for node in &fe_nodes {
        fe_parts.push(read_fe(ctx, *node)?);
    }
    let mut lu_parts = Vec::new();
    let mut lu_names = HashSet::new();
    for node in children(root, "lexUnit") {
        let part = read_lu(ctx, node)?;
        if !lu_names.insert(part.name.clone()) {
            return Err(ctx.integrity(node, format!("duplicate LU name {:?} in frame {name}", part.name)));
        }
        lu_parts.push(part);
    }

    Ok(Arc::new_cyclic(|weak: &Weak<Frame>| {
        let fes = fe_parts
            .into_iter()
            .map(|p| {
                let fe = FrameElement {
                    id: p.id,
                    name: p.name,
                    abbrev: p.abbrev,
                    core_type: p.core_type,
                    definition: strip_markup(&p.definition_markup),
                    definition_markup: p.definition_markup,
                    created_by: p.created_by,
                    created_date: p.created_date,
                    sem_type: p.sem_type.map(OnceCell::with_value).unwrap_or_default(),
                    frame: weak.clone(),
                    frame_id: id,
                    frame_name: name.clone(),
                };
                (fe.name.clone(), Arc::new(fe))
            })
            .collect::<IndexMap<_, _>>();
        let lex_units = lu_parts
            .into_iter()
            .map(|p| {
                let lu = LexicalUnit {
                    id: p.id,
                    name: p.name,
                    pos: p.pos,
                    status: p.status,
                    definition: p.definition,
                    lexemes: p.lexemes,
                    sentence_count: p.sentence_count,
                    sem_types: p.sem_types,
                    created_by: p.created_by,
                    created_date: p.created_date,
                    frame: weak.clone(),
                    frame_id: id,
                    frame_name: name.clone(),
                };
                (lu.name.clone(), Arc::new(lu))
            })
            .collect::<IndexMap<_, _>>();
        Frame {
            id,
            name: name.clone(),
            definition: strip_markup(&definition_markup),
            definition_markup,
            created_by: root.attribute("cBy").unwrap_or_default().to_string(),
            created_date: root.attribute("cDate").unwrap_or_default().to_string(),
            fes,
            fe_core_sets,
            lex_units,
            sem_types,
        }
    }))
}

struct FeParts {
    id: u32,
    name: String,
    abbrev: String,
    core_type: CoreType,
    definition_markup: String,
    created_by: String,
    created_date: String,
    sem_type: Option<SemTypeRef>,
}

fn read_fe(ctx: Ctx, node: Node) -> Result<FeParts> {
    let core_raw = ctx.attr(node, "coreType")?;
    let core_type = core_raw.parse().map_err(|msg: String| ctx.integrity(node, msg))?;
    Ok(FeParts {
        id: ctx.id(node, "ID")?,
        name: ctx.nonempty_attr(node, "name")?.to_string(),
        abbrev: node.attribute("abbrev").unwrap_or_default().to_string(),
        core_type,
        definition_markup: child(node, "definition").map(text_of).unwrap_or_default(),
        created_by: node.attribute("cBy").unwrap_or_default().to_string(),
        created_date: node.attribute("cDate").unwrap_or_default().to_string(),
        sem_type: sem_type_refs(ctx, node)?.into_iter().next(),
    })
}

struct LuParts {
    id: u32,
    name: String,
    pos: String,
    status: String,
    definition: String,
    lexemes: Vec<Lexeme>,
    sentence_count: SentenceCount,
    sem_types: Vec<SemTypeRef>,
    created_by: String,
    created_date: String,
}

fn read_lu(ctx: Ctx, node: Node) -> Result<LuParts> {
    let name = ctx.nonempty_attr(node, "name")?;
    if !has_pos_suffix(name) {
        return Err(ctx.integrity(node, format!("LU name {name:?} lacks a .pos suffix")));
    }
    let sentence_count = match child(node, "sentenceCount") {
        Some(sc) => {
            let count = SentenceCount {
                annotated: ctx.opt_num(sc, "annotated")?.unwrap_or(0),
                total: ctx.opt_num(sc, "total")?.unwrap_or(0),
            };
            if count.annotated > count.total {
                return Err(ctx.integrity(
                    sc,
                    format!(
                        "LU {name}: annotated count {} exceeds total {}",
                        count.annotated, count.total
                    ),
                ));
            }
            count
        }
        None => SentenceCount::default(),
    };
    let mut lexemes = Vec::new();
    for lx in children(node, "lexeme") {
        lexemes.push(Lexeme {
            form: ctx.attr(lx, "name")?.to_string(),
            pos: lx.attribute("POS").unwrap_or_default().to_string(),
            headword: parse_bool(lx.attribute("headword")),
            break_before: parse_bool(lx.attribute("breakBefore")),
            order: ctx.opt_num(lx, "order")?.unwrap_or(0),
        });
    }
    Ok(LuParts {
        id: ctx.id(node, "ID")?,
        name: name.to_string(),
        pos: node.attribute("POS").unwrap_or_default().to_string(),
        status: node.attribute("status").unwrap_or_default().to_string(),
        definition: child(node, "definition")
            .map(|d| strip_markup(&text_of(d)))
            .unwrap_or_default(),
        lexemes,
        sentence_count,
        sem_types: sem_type_refs(ctx, node)?,
        created_by: node.attribute("cBy").unwrap_or_default().to_string(),
        created_date: node.attribute("cDate").unwrap_or_default().to_string(),
    })
}

fn sem_type_refs(ctx: Ctx, node: Node) -> Result<Vec<SemTypeRef>> {
    children(node, "semType")
        .map(|st| {
            Ok(SemTypeRef {
                id: ctx.id(st, "ID")?,
                name: ctx.attr(st, "name")?.to_string(),
            })
        })
        .collect()
}

pub(crate) fn has_pos_suffix(name: &str) -> bool {
    name.rsplit_once('.')
        .is_some_and(|(lemma, pos)| !lemma.is_empty() && !pos.is_empty())
}
