//! Reader and query engine for lexical databases in the FrameNet 1.7 XML
//! layout.

mod corpus;
pub mod error;
pub mod lexicon;
pub mod model;
mod relations;
pub mod render;
pub mod store;
pub mod xml;

pub use corpus::Sents;
pub use error::{Error, ErrorCategory, Result};
pub use lexicon::{help_summary, SearchPattern, OPERATIONS};
pub use render::{DisplayOptions, Renderer};
pub use store::{FrameKey, Store, DATA_ENV};
