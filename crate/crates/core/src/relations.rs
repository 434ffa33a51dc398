//! Frame relations, FE relations and the semantic type hierarchy.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::model::{FeRelation, Frame, FrameElement, FrameId, FrameRelation, FrameRelationType, SemType};
use crate::store::{FrameKey, Store};

impl Store {
    fn frame_id_of(&self, key: &FrameKey) -> Result<FrameId> {
        self.frame_entry(key)
            .map(|e| e.id)
            .ok_or_else(|| Error::not_found("frame", key))
    }

    /// Frame-to-frame relations, ordered by relation ID.
    ///
    /// With one frame, relations in which it takes part on either side; with
    /// two, relations connecting them in either direction. `rtype` names a
    /// relation type. Frames are resolved through the index only.
    pub fn frame_relations(
        &self,
        frame: Option<FrameKey>,
        frame2: Option<FrameKey>,
        rtype: Option<&str>,
    ) -> Result<Vec<Arc<FrameRelation>>> {
        let (first, second) = match (frame, frame2) {
            (None, Some(only)) => (Some(only), None),
            pair => pair,
        };
        let first = first.map(|k| self.frame_id_of(&k)).transpose()?;
        let second = second.map(|k| self.frame_id_of(&k)).transpose()?;
        let registry = self.relation_registry()?;
        let type_name = match rtype {
            Some(name) => Some(
                registry
                    .relation_type(name)
                    .ok_or_else(|| Error::not_found("frame relation type", name))?
                    .name
                    .as_str(),
            ),
            None => None,
        };
        Ok(registry
            .relations
            .iter()
            .filter(|r| type_name.is_none_or(|t| r.type_name == t))
            .filter(|r| match (first, second) {
                (Some(a), Some(b)) => {
                    (r.super_frame_id == a && r.sub_frame_id == b) || (r.super_frame_id == b && r.sub_frame_id == a)
                }
                (Some(a), None) => r.involves(a),
                _ => true,
            })
            .cloned()
            .collect())
    }

    /// FE relations of the matching frame relations, ordered by (frame
    /// relation ID, FE relation ID).
    pub fn fe_relations(
        &self,
        frame: Option<FrameKey>,
        frame2: Option<FrameKey>,
        rtype: Option<&str>,
    ) -> Result<Vec<Arc<FeRelation>>> {
        let mut out = Vec::new();
        for rel in self.frame_relations(frame, frame2, rtype)? {
            let mut fers = rel.fe_relations.clone();
            fers.sort_by_key(|f| f.id);
            out.extend(fers);
        }
        Ok(out)
    }

    /// All relation types in registry order.
    pub fn frame_relation_types(&self) -> Result<Vec<Arc<FrameRelationType>>> {
        Ok(self.relation_registry()?.types.clone())
    }

    /// The super and sub frames of a relation, loading both frame files.
    pub fn relation_frames(&self, rel: &FrameRelation) -> Result<(Arc<Frame>, Arc<Frame>)> {
        Ok((self.get_frame(rel.super_frame_id)?, self.get_frame(rel.sub_frame_id)?))
    }

    /// The super and sub FEs of an FE relation.
    pub fn resolve_fe_relation(&self, fer: &FeRelation) -> Result<(Arc<FrameElement>, Arc<FrameElement>)> {
        let rel = fer
            .frame_relation()
            .ok_or_else(|| Error::not_found("frame relation", fer.id))?;
        let (sup, sub) = self.relation_frames(&rel)?;
        let find = |frame: &Frame, id, name: &str| {
            frame
                .fe_by_id(id)
                .or_else(|| frame.fe(name))
                .cloned()
                .ok_or_else(|| Error::not_found("frame element", format!("{}.{name}", frame.name)))
        };
        Ok((
            find(&sup, fer.super_fe_id, &fer.super_fe_name)?,
            find(&sub, fer.sub_fe_id, &fer.sub_fe_name)?,
        ))
    }

    /// All semantic types in registry order.
    pub fn semtypes(&self) -> Result<Vec<Arc<SemType>>> {
        Ok(self.semtype_registry()?.types.clone())
    }

    /// A semantic type by name, abbreviation or ID.
    pub fn semtype(&self, key: &str) -> Result<Arc<SemType>> {
        self.semtype_registry()?
            .lookup(key)
            .cloned()
            .ok_or_else(|| Error::not_found("semantic type", key))
    }

    /// True when `sup` is `sub` or one of its ancestors.
    pub fn semtype_inherits(&self, sub: &str, sup: &str) -> Result<bool> {
        let registry = self.semtype_registry()?;
        let sub = self.semtype(sub)?;
        let sup = self.semtype(sup)?;
        let mut current = Some(&sub);
        while let Some(st) = current {
            if st.id == sup.id {
                return Ok(true);
            }
            current = registry.super_type(st);
        }
        Ok(false)
    }

    /// Copies semantic types from super FEs to sub FEs along every FE
    /// relation until nothing changes. An FE that already has a type keeps
    /// it. Returns the number of FEs that gained a type.
    ///
    /// Loads every frame that takes part in a relation. Must not run while
    /// other threads read FE semantic types.
    pub fn propagate_semtypes(&self) -> Result<usize> {
        let registry = self.relation_registry()?;
        let mut pairs = Vec::new();
        for rel in &registry.relations {
            let (sup, sub) = match self.relation_frames(rel) {
                Ok(frames) => frames,
                Err(e) if e.is_lookup_failure() => continue,
                Err(e) => return Err(e),
            };
            for fer in &rel.fe_relations {
                let super_fe = sup.fe_by_id(fer.super_fe_id).or_else(|| sup.fe(&fer.super_fe_name));
                let sub_fe = sub.fe_by_id(fer.sub_fe_id).or_else(|| sub.fe(&fer.sub_fe_name));
                if let (Some(a), Some(b)) = (super_fe, sub_fe) {
                    pairs.push((a.clone(), b.clone()));
                }
            }
        }

        let mut total = 0;
        loop {
            let mut changed = 0;
            for (sup, sub) in &pairs {
                if let Some(st) = sup.sem_type() {
                    if sub.sem_type().is_none() && sub.assign_sem_type(st.clone()) {
                        changed += 1;
                    }
                }
            }
            if changed == 0 {
                return Ok(total);
            }
            total += changed;
        }
    }
}
