//! The database handle: index-driven lookup, on-demand file loading and a
//! cache that keeps every loaded object for the life of the store.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use once_cell::sync::OnceCell;

use crate::error::{Error, Result};
use crate::model::{
    Document, DocumentId, Frame, FrameId, FrameRelation, FrameRelationType, LexicalUnit, LuExemplars, LuId, SemType,
    SemTypeId,
};
use crate::xml::{self, DocumentIndexEntry, FrameIndexEntry, LuIndexEntry};

/// Environment variable naming the default data directory.
pub const DATA_ENV: &str = "FRAMELEX_DATA";

pub const FRAME_INDEX: &str = "frameIndex.xml";
pub const LU_INDEX: &str = "luIndex.xml";
pub const FULLTEXT_INDEX: &str = "fulltextIndex.xml";
pub const RELATIONS_FILE: &str = "frRelation.xml";
pub const SEMTYPES_FILE: &str = "semTypes.xml";

const REQUIRED_FILES: [&str; 5] = [FRAME_INDEX, LU_INDEX, FULLTEXT_INDEX, RELATIONS_FILE, SEMTYPES_FILE];

/// A frame reference by ID or by exact name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FrameKey {
    Id(FrameId),
    Name(String),
}

impl From<FrameId> for FrameKey {
    fn from(id: FrameId) -> Self {
        FrameKey::Id(id)
    }
}

/// A string of digits is taken as an ID, anything else as a name.
impl From<&str> for FrameKey {
    fn from(s: &str) -> Self {
        match s.parse() {
            Ok(id) if s.bytes().all(|b| b.is_ascii_digit()) => FrameKey::Id(id),
            _ => FrameKey::Name(s.to_string()),
        }
    }
}

impl From<&String> for FrameKey {
    fn from(s: &String) -> Self {
        FrameKey::from(s.as_str())
    }
}

impl From<&Frame> for FrameKey {
    fn from(f: &Frame) -> Self {
        FrameKey::Id(f.id)
    }
}

impl fmt::Display for FrameKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrameKey::Id(id) => write!(f, "{id}"),
            FrameKey::Name(name) => f.write_str(name),
        }
    }
}

#[derive(Debug)]
pub struct LuIndex {
    /// Sorted by LU ID.
    pub entries: Vec<LuIndexEntry>,
    by_id: HashMap<LuId, usize>,
}

impl LuIndex {
    fn new(mut entries: Vec<LuIndexEntry>) -> Self {
        entries.sort_by_key(|e| e.id);
        let by_id = entries.iter().enumerate().map(|(i, e)| (e.id, i)).collect();
        LuIndex { entries, by_id }
    }

    pub fn get(&self, id: LuId) -> Option<&LuIndexEntry> {
        self.by_id.get(&id).map(|&i| &self.entries[i])
    }
}

#[derive(Debug)]
pub struct DocumentIndex {
    /// Sorted by document ID.
    pub entries: Vec<DocumentIndexEntry>,
    by_id: HashMap<DocumentId, usize>,
}

impl DocumentIndex {
    fn new(mut entries: Vec<DocumentIndexEntry>) -> Self {
        entries.sort_by_key(|e| e.id);
        let by_id = entries.iter().enumerate().map(|(i, e)| (e.id, i)).collect();
        DocumentIndex { entries, by_id }
    }

    pub fn get(&self, id: DocumentId) -> Option<&DocumentIndexEntry> {
        self.by_id.get(&id).map(|&i| &self.entries[i])
    }
}

#[derive(Debug)]
pub struct RelationRegistry {
    /// File order.
    pub types: Vec<Arc<FrameRelationType>>,
    /// Every relation of every type, sorted by relation ID.
    pub relations: Vec<Arc<FrameRelation>>,
}

impl RelationRegistry {
    fn new(types: Vec<Arc<FrameRelationType>>) -> Self {
        let mut relations: Vec<_> = types.iter().flat_map(|t| t.relations.iter().cloned()).collect();
        relations.sort_by_key(|r| r.id);
        RelationRegistry { types, relations }
    }

    pub fn relation_type(&self, name: &str) -> Option<&Arc<FrameRelationType>> {
        self.types.iter().find(|t| t.name == name)
    }
}

#[derive(Debug)]
pub struct SemTypeRegistry {
    /// File order.
    pub types: Vec<Arc<SemType>>,
    by_id: HashMap<SemTypeId, usize>,
    by_name: HashMap<String, usize>,
    by_abbrev: HashMap<String, usize>,
}

impl SemTypeRegistry {
    fn new(types: Vec<Arc<SemType>>) -> Self {
        let mut by_id = HashMap::new();
        let mut by_name = HashMap::new();
        let mut by_abbrev = HashMap::new();
        for (i, st) in types.iter().enumerate() {
            by_id.insert(st.id, i);
            by_name.insert(st.name.clone(), i);
            if !st.abbrev.is_empty() {
                by_abbrev.entry(st.abbrev.clone()).or_insert(i);
            }
        }
        SemTypeRegistry {
            types,
            by_id,
            by_name,
            by_abbrev,
        }
    }

    pub fn by_id(&self, id: SemTypeId) -> Option<&Arc<SemType>> {
        self.by_id.get(&id).map(|&i| &self.types[i])
    }

    /// Looks a key up as a name, then an abbreviation, then a numeric ID.
    pub fn lookup(&self, key: &str) -> Option<&Arc<SemType>> {
        self.by_name
            .get(key)
            .or_else(|| self.by_abbrev.get(key))
            .map(|&i| &self.types[i])
            .or_else(|| key.parse().ok().and_then(|id| self.by_id(id)))
    }

    pub fn super_type(&self, st: &SemType) -> Option<&Arc<SemType>> {
        st.super_type.and_then(|id| self.by_id(id))
    }
}

/// Per-key cache where each key is initialised at most once, even under
/// concurrent first access. Failed loads are not cached.
struct KeyedCache<T> {
    cells: Mutex<HashMap<u32, Arc<OnceCell<Arc<T>>>>>,
}

impl<T> KeyedCache<T> {
    fn new() -> Self {
        KeyedCache {
            cells: Mutex::new(HashMap::new()),
        }
    }

    fn get_or_load(&self, key: u32, load: impl FnOnce() -> Result<Arc<T>>) -> Result<Arc<T>> {
        let cell = {
            let mut cells = self.cells.lock().unwrap_or_else(|e| e.into_inner());
            cells.entry(key).or_default().clone()
        };
        cell.get_or_try_init(load).cloned()
    }

    fn loaded(&self) -> Vec<Arc<T>> {
        let cells = self.cells.lock().unwrap_or_else(|e| e.into_inner());
        cells.values().filter_map(|c| c.get().cloned()).collect()
    }
}

struct Inner {
    root: PathBuf,
    frame_index: Vec<FrameIndexEntry>,
    frame_by_id: HashMap<FrameId, usize>,
    frame_by_name: HashMap<String, usize>,
    lu_index: OnceCell<LuIndex>,
    doc_index: OnceCell<DocumentIndex>,
    relations: OnceCell<RelationRegistry>,
    semtypes: OnceCell<SemTypeRegistry>,
    frames: KeyedCache<Frame>,
    exemplars: KeyedCache<LuExemplars>,
    documents: KeyedCache<Document>,
    access_log: Mutex<Vec<String>>,
}

/// Handle to one data directory. Cloning is cheap and shares the cache.
///
/// All lookups take `&self` and may be called from several threads at
/// once. The only mutating operation, semantic-type propagation, must not
/// run concurrently with readers that inspect FE semantic types.
#[derive(Clone)]
pub struct Store {
    inner: Arc<Inner>,
}

impl fmt::Debug for Store {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Store")
            .field("root", &self.inner.root)
            .field("frames", &self.inner.frame_index.len())
            .finish()
    }
}

impl Store {
    /// Opens a data directory, reading only `frameIndex.xml`.
    pub fn open(root: impl AsRef<Path>) -> Result<Store> {
        let root = root.as_ref().to_path_buf();
        if !root.is_dir() {
            return Err(Error::Open {
                path: root,
                message: "not a directory".into(),
            });
        }
        for name in REQUIRED_FILES {
            if !root.join(name).is_file() {
                return Err(Error::Open {
                    path: root,
                    message: format!("missing {name}"),
                });
            }
        }
        let inner = Inner {
            root,
            frame_index: Vec::new(),
            frame_by_id: HashMap::new(),
            frame_by_name: HashMap::new(),
            lu_index: OnceCell::new(),
            doc_index: OnceCell::new(),
            relations: OnceCell::new(),
            semtypes: OnceCell::new(),
            frames: KeyedCache::new(),
            exemplars: KeyedCache::new(),
            documents: KeyedCache::new(),
            access_log: Mutex::new(Vec::new()),
        };
        let bytes = inner.read(FRAME_INDEX)?;
        let frame_index = xml::parse_frame_index(&bytes, FRAME_INDEX)?;
        let frame_by_id = frame_index.iter().enumerate().map(|(i, e)| (e.id, i)).collect();
        let frame_by_name = frame_index
            .iter()
            .enumerate()
            .map(|(i, e)| (e.name.clone(), i))
            .collect();
        Ok(Store {
            inner: Arc::new(Inner {
                frame_index,
                frame_by_id,
                frame_by_name,
                ..inner
            }),
        })
    }

    /// Opens `root`, or the directory named by `FRAMELEX_DATA` when `root`
    /// is `None`.
    pub fn open_default(root: Option<&Path>) -> Result<Store> {
        match root {
            Some(path) => Store::open(path),
            None => match std::env::var_os(DATA_ENV) {
                Some(path) if !path.is_empty() => Store::open(PathBuf::from(path)),
                _ => Err(Error::Open {
                    path: PathBuf::new(),
                    message: format!("no data directory given and {DATA_ENV} is not set"),
                }),
            },
        }
    }

    pub fn root(&self) -> &Path {
        &self.inner.root
    }

    /// Relative paths of every file read so far, in read order.
    pub fn access_log(&self) -> Vec<String> {
        self.inner.access_log.lock().unwrap_or_else(|e| e.into_inner()).clone()
    }

    /// Frame index entries in file order.
    pub fn frame_index(&self) -> &[FrameIndexEntry] {
        &self.inner.frame_index
    }

    pub fn frame_entry(&self, key: &FrameKey) -> Option<&FrameIndexEntry> {
        let i = match key {
            FrameKey::Id(id) => self.inner.frame_by_id.get(id),
            FrameKey::Name(name) => self.inner.frame_by_name.get(name),
        }?;
        Some(&self.inner.frame_index[*i])
    }

    /// Loads (or returns the cached) frame. Names are case-sensitive.
    pub fn get_frame(&self, key: impl Into<FrameKey>) -> Result<Arc<Frame>> {
        let key = key.into();
        let entry = self.frame_entry(&key).ok_or_else(|| Error::not_found("frame", &key))?;
        self.inner.frames.get_or_load(entry.id, || {
            let path = format!("frame/{}.xml", entry.name);
            let bytes = self.inner.read(&path)?;
            let frame = xml::parse_frame_file(&bytes, &path)?;
            if frame.id != entry.id || frame.name != entry.name {
                return Err(Error::integrity(
                    &path,
                    format!(
                        "file declares frame {} ({}) but the index lists {} ({})",
                        frame.name, frame.id, entry.name, entry.id
                    ),
                ));
            }
            Ok(frame)
        })
    }

    pub fn lu_index(&self) -> Result<&LuIndex> {
        self.inner.lu_index.get_or_try_init(|| {
            let bytes = self.inner.read(LU_INDEX)?;
            Ok(LuIndex::new(xml::parse_lu_index(&bytes, LU_INDEX)?))
        })
    }

    /// The LU object owned by its frame; loads the frame file but not the
    /// LU's exemplar file.
    pub fn get_lu(&self, id: LuId) -> Result<Arc<LexicalUnit>> {
        let entry = self
            .lu_index()?
            .get(id)
            .ok_or_else(|| Error::not_found("lexical unit", id))?;
        let frame = self.get_frame(entry.frame_id)?;
        frame.lu_by_id(id).cloned().ok_or_else(|| {
            Error::integrity(
                LU_INDEX,
                format!("LU {id} is listed under frame {} but absent from its file", frame.name),
            )
        })
    }

    /// Exemplar sentences of an LU. An LU without an exemplar file has none.
    pub fn exemplars_of(&self, id: LuId) -> Result<Arc<LuExemplars>> {
        if self.lu_index()?.get(id).is_none() {
            return Err(Error::not_found("lexical unit", id));
        }
        self.inner.exemplars.get_or_load(id, || {
            let path = format!("lu/lu{id}.xml");
            let bytes = match self.inner.read_optional(&path)? {
                Some(bytes) => bytes,
                None => return Ok(Arc::new(LuExemplars::empty(id))),
            };
            let exemplars = xml::parse_lu_file(&bytes, &path)?;
            if exemplars.lu_id != id {
                return Err(Error::integrity(&path, format!("file declares LU {}", exemplars.lu_id)));
            }
            Ok(Arc::new(exemplars))
        })
    }

    pub fn document_index(&self) -> Result<&DocumentIndex> {
        self.inner.doc_index.get_or_try_init(|| {
            let bytes = self.inner.read(FULLTEXT_INDEX)?;
            Ok(DocumentIndex::new(xml::parse_fulltext_index(&bytes, FULLTEXT_INDEX)?))
        })
    }

    pub fn get_document(&self, id: DocumentId) -> Result<Arc<Document>> {
        let entry = self
            .document_index()?
            .get(id)
            .ok_or_else(|| Error::not_found("document", id))?;
        self.inner.documents.get_or_load(id, || {
            let path = format!("fulltext/{}.xml", entry.name);
            let bytes = self.inner.read(&path)?;
            let doc = xml::parse_fulltext_file(&bytes, &path)?;
            if doc.id != id {
                return Err(Error::integrity(&path, format!("file declares document {}", doc.id)));
            }
            Ok(doc)
        })
    }

    pub fn relation_registry(&self) -> Result<&RelationRegistry> {
        self.inner.relations.get_or_try_init(|| {
            let bytes = self.inner.read(RELATIONS_FILE)?;
            Ok(RelationRegistry::new(xml::parse_relations_file(
                &bytes,
                RELATIONS_FILE,
            )?))
        })
    }

    pub fn semtype_registry(&self) -> Result<&SemTypeRegistry> {
        self.inner.semtypes.get_or_try_init(|| {
            let bytes = self.inner.read(SEMTYPES_FILE)?;
            Ok(SemTypeRegistry::new(xml::parse_semtypes_file(&bytes, SEMTYPES_FILE)?))
        })
    }

    /// Frames loaded so far, in no particular order.
    pub fn loaded_frames(&self) -> Vec<Arc<Frame>> {
        self.inner.frames.loaded()
    }

    /// Whether two handles share one cache.
    pub fn same_store(&self, other: &Store) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }
}

impl Inner {
    fn read(&self, rel: &str) -> Result<Vec<u8>> {
        let path = self.root.join(rel);
        let bytes = fs::read(&path).map_err(|source| Error::Io { path, source })?;
        self.log(rel);
        Ok(bytes)
    }

    fn read_optional(&self, rel: &str) -> Result<Option<Vec<u8>>> {
        let path = self.root.join(rel);
        match fs::read(&path) {
            Ok(bytes) => {
                self.log(rel);
                Ok(Some(bytes))
            }
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
            Err(source) => Err(Error::Io { path, source }),
        }
    }

    fn log(&self, rel: &str) {
        self.access_log
            .lock()
            .unwrap_or_else(|e| e.into_inner())
            .push(rel.to_string());
    }
}
