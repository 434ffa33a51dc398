use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Weak};

use super::{child, children, decode, expect_root, parse_document, strip_markup, text_of, Ctx};
use crate::error::Result;
use crate::model::{FeRelation, FrameRelation, FrameRelationType, SemType, SemTypeId};

struct RelationParts {
    id: u32,
    super_frame_id: u32,
    super_frame_name: String,
    sub_frame_id: u32,
    sub_frame_name: String,
    fe_relations: Vec<FeRelationParts>,
}

struct FeRelationParts {
    id: u32,
    super_fe_id: u32,
    super_fe_name: String,
    sub_fe_id: u32,
    sub_fe_name: String,
}

/// Reads `frRelation.xml` into relation types with their relations and FE
/// relations linked together. Frames are referenced by ID and name only.
pub fn parse_relations_file(bytes: &[u8], origin: &str) -> Result<Vec<Arc<FrameRelationType>>> {
    let ctx = Ctx::new(origin);
    let doc = parse_document(decode(bytes, origin)?, origin)?;
    let root = expect_root(&doc, ctx, "frameRelations")?;
    let mut type_names = HashSet::new();
    let mut relation_ids = HashSet::new();
    let mut types = Vec::new();
    for type_node in children(root, "frameRelationType") {
        let type_id = ctx.id(type_node, "ID")?;
        let type_name = ctx.nonempty_attr(type_node, "name")?.to_string();
        if !type_names.insert(type_name.clone()) {
            return Err(ctx.integrity(type_node, format!("duplicate relation type {type_name:?}")));
        }
        let super_role = type_node.attribute("superFrameName").unwrap_or_default().to_string();
        let sub_role = type_node.attribute("subFrameName").unwrap_or_default().to_string();

        let mut parts = Vec::new();
        for rel in children(type_node, "frameRelation") {
            let id = ctx.id(rel, "ID")?;
            if !relation_ids.insert(id) {
                return Err(ctx.integrity(rel, format!("duplicate frame relation ID {id}")));
            }
            let super_frame_id = ctx.id(rel, "supID")?;
            let sub_frame_id = ctx.id(rel, "subID")?;
            if type_name == "Inheritance" && super_frame_id == sub_frame_id {
                return Err(ctx.integrity(rel, format!("relation {id} makes a frame inherit from itself")));
            }
            let mut fe_relations = Vec::new();
            for fer in children(rel, "FERelation") {
                fe_relations.push(FeRelationParts {
                    id: ctx.id(fer, "ID")?,
                    super_fe_id: ctx.id(fer, "supID")?,
                    super_fe_name: ctx.nonempty_attr(fer, "superFEName")?.to_string(),
                    sub_fe_id: ctx.id(fer, "subID")?,
                    sub_fe_name: ctx.nonempty_attr(fer, "subFEName")?.to_string(),
                });
            }
            parts.push(RelationParts {
                id,
                super_frame_id,
                super_frame_name: ctx.nonempty_attr(rel, "superFrameName")?.to_string(),
                sub_frame_id,
                sub_frame_name: ctx.nonempty_attr(rel, "subFrameName")?.to_string(),
                fe_relations,
            });
        }

        types.push(Arc::new_cyclic(|weak_type: &Weak<FrameRelationType>| {
            let relations = parts
                .into_iter()
                .map(|p| {
                    Arc::new_cyclic(|weak_rel: &Weak<FrameRelation>| FrameRelation {
                        id: p.id,
                        type_name: type_name.clone(),
                        super_role: super_role.clone(),
                        sub_role: sub_role.clone(),
                        super_frame_id: p.super_frame_id,
                        super_frame_name: p.super_frame_name,
                        sub_frame_id: p.sub_frame_id,
                        sub_frame_name: p.sub_frame_name,
                        fe_relations: p
                            .fe_relations
                            .into_iter()
                            .map(|f| {
                                Arc::new(FeRelation {
                                    id: f.id,
                                    super_fe_id: f.super_fe_id,
                                    super_fe_name: f.super_fe_name,
                                    sub_fe_id: f.sub_fe_id,
                                    sub_fe_name: f.sub_fe_name,
                                    frame_relation: weak_rel.clone(),
                                })
                            })
                            .collect(),
                        relation_type: weak_type.clone(),
                    })
                })
                .collect();
            FrameRelationType {
                id: type_id,
                name: type_name.clone(),
                super_role: super_role.clone(),
                sub_role: sub_role.clone(),
                relations,
            }
        }));
    }
    Ok(types)
}

/// Reads `semTypes.xml`. The super-type links must form a forest; each
/// node's `sub_types` is filled in as the inverse of `super_type`.
pub fn parse_semtypes_file(bytes: &[u8], origin: &str) -> Result<Vec<Arc<SemType>>> {
    let ctx = Ctx::new(origin);
    let doc = parse_document(decode(bytes, origin)?, origin)?;
    let root = expect_root(&doc, ctx, "semTypes")?;

    let mut nodes = Vec::new();
    let mut position: HashMap<SemTypeId, usize> = HashMap::new();
    let mut names = HashSet::new();
    for node in children(root, "semType") {
        let id = ctx.id(node, "ID")?;
        let name = ctx.nonempty_attr(node, "name")?.to_string();
        if position.insert(id, nodes.len()).is_some() {
            return Err(ctx.integrity(node, format!("duplicate semantic type ID {id}")));
        }
        if !names.insert(name.clone()) {
            return Err(ctx.integrity(node, format!("duplicate semantic type name {name:?}")));
        }
        // Only the first superType link is kept.
        let super_type = match child(node, "superType") {
            Some(st) => Some((ctx.id(st, "supID")?, st)),
            None => None,
        };
        nodes.push((
            node,
            SemType {
                id,
                name,
                abbrev: node.attribute("abbrev").unwrap_or_default().to_string(),
                definition: child(node, "definition")
                    .map(|d| strip_markup(&text_of(d)))
                    .unwrap_or_default(),
                super_type: super_type.map(|(sup, _)| sup),
                sub_types: Vec::new(),
            },
            super_type.map(|(_, n)| n),
        ));
    }

    for (node, st, link) in &nodes {
        if let Some(sup) = st.super_type {
            if !position.contains_key(&sup) {
                return Err(ctx.integrity(
                    link.unwrap_or(*node),
                    format!("semantic type {} names missing super type {sup}", st.name),
                ));
            }
        }
    }

    // Walk up from every node; a walk longer than the node count has looped.
    for (node, st, _) in &nodes {
        let mut current = st.super_type;
        let mut steps = 0;
        while let Some(id) = current {
            steps += 1;
            if id == st.id || steps > nodes.len() {
                return Err(ctx.integrity(*node, format!("semantic type {} is its own ancestor", st.name)));
            }
            current = nodes[position[&id]].1.super_type;
        }
    }

    let mut types: Vec<SemType> = nodes.into_iter().map(|(_, st, _)| st).collect();
    let links: Vec<(SemTypeId, SemTypeId)> = types
        .iter()
        .filter_map(|st| st.super_type.map(|sup| (sup, st.id)))
        .collect();
    for (sup, sub) in links {
        types[position[&sup]].sub_types.push(sub);
    }
    Ok(types.into_iter().map(Arc::new).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn empty_registries() {
        assert!(parse_relations_file(b"<frameRelations/>", "r").unwrap().is_empty());
        assert!(parse_semtypes_file(b"<semTypes/>", "s").unwrap().is_empty());
    }

    #[test]
    fn relations_are_linked() {
        let xml = br#"<frameRelations>
          <frameRelationType superFrameName="Parent" subFrameName="Child" name="Inheritance" ID="1">
            <frameRelation subFrameName="B" superFrameName="A" subID="2" supID="1" ID="10">
              <FERelation subFEName="y" superFEName="x" subID="20" supID="11" ID="100"/>
            </frameRelation>
          </frameRelationType>
          <frameRelationType superFrameName="Complex" subFrameName="Component" name="Subframe" ID="2"/>
        </frameRelations>"#;
        let types = parse_relations_file(xml, "r").unwrap();
        assert_eq!(types.len(), 2);
        let rel = &types[0].relations[0];
        assert_eq!(rel.to_string(), "<Parent=A -- Inheritance -> Child=B>");
        assert!(Arc::ptr_eq(&rel.relation_type().unwrap(), &types[0]));
        let fer = &rel.fe_relations[0];
        assert!(Arc::ptr_eq(&fer.frame_relation().unwrap(), rel));
        assert_eq!(fer.to_string(), "<Parent=A.x -- Inheritance -> Child=B.y>");
        assert!(types[1].relations.is_empty());
    }

    #[test]
    fn self_inheritance_is_rejected() {
        let xml = br#"<frameRelations><frameRelationType name="Inheritance" ID="1">
            <frameRelation subFrameName="A" superFrameName="A" subID="1" supID="1" ID="10"/>
        </frameRelationType></frameRelations>"#;
        assert!(matches!(parse_relations_file(xml, "r"), Err(Error::Integrity { .. })));
    }

    #[test]
    fn single_root_semtype() {
        let types =
            parse_semtypes_file(br#"<semTypes><semType name="Root" ID="1" abbrev="R"/></semTypes>"#, "s").unwrap();
        assert_eq!(types.len(), 1);
        assert!(types[0].super_type.is_none());
        assert!(types[0].sub_types.is_empty());
    }

    #[test]
    fn sub_types_invert_super_types() {
        let xml = br#"<semTypes>
            <semType name="C" ID="3"><superType supID="1"/></semType>
            <semType name="A" ID="1"/>
            <semType name="B" ID="2"><superType supID="1"/><superType supID="3"/></semType>
        </semTypes>"#;
        let types = parse_semtypes_file(xml, "s").unwrap();
        assert_eq!(types[1].sub_types, [3, 2]);
        assert_eq!(types[2].super_type, Some(1));
    }

    #[test]
    fn dangling_super_type_is_rejected() {
        let xml = br#"<semTypes><semType name="A" ID="1"><superType supID="9"/></semType></semTypes>"#;
        assert!(matches!(parse_semtypes_file(xml, "s"), Err(Error::Integrity { .. })));
    }

    #[test]
    fn cycles_are_rejected() {
        let xml = br#"<semTypes>
            <semType name="A" ID="1"><superType supID="3"/></semType>
            <semType name="B" ID="2"><superType supID="1"/></semType>
            <semType name="C" ID="3"><superType supID="2"/></semType>
        </semTypes>"#;
        assert!(matches!(parse_semtypes_file(xml, "s"), Err(Error::Integrity { .. })));
        let selfloop = br#"<semTypes><semType name="A" ID="1"><superType supID="1"/></semType></semTypes>"#;
        assert!(matches!(
            parse_semtypes_file(selfloop, "s"),
            Err(Error::Integrity { .. })
        ));
    }
}
