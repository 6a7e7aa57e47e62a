//! JSON documents for colored posets and windows.
//!
//! Every document carries a `version` field; documents with a missing or
//! unknown version are refused. Elements name their colors; covers are
//! `[lower, upper]` id pairs.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dynkin::{DiagramDoc, DynkinDiagram, DynkinError};
use crate::heapwindow::{PeriodicWindow, WindowError};
use crate::poset::{ColoredPoset, PosetError};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("document has no version field (expected {SCHEMA_VERSION})")]
    MissingVersion,
    #[error("unsupported document version {0} (expected {SCHEMA_VERSION})")]
    UnsupportedVersion(u32),
    #[error("element ids must be 0..{0} with each id once")]
    BadElementIds(usize),
    #[error("unknown color {0:?}")]
    UnknownColor(String),
    #[error(transparent)]
    Dynkin(#[from] DynkinError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Window(#[from] WindowError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementDoc {
    pub id: usize,
    pub color: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDoc {
    pub version: Option<u32>,
    pub diagram: DiagramDoc,
    pub elements: Vec<ElementDoc>,
    pub covers: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<Vec<usize>>,
}

pub fn diagram_to_doc(d: &DynkinDiagram) -> DiagramDoc {
    d.to_doc()
}

pub fn poset_to_doc(p: &ColoredPoset) -> PosetDoc {
    let d = p.diagram();
    PosetDoc {
        version: Some(SCHEMA_VERSION),
        diagram: d.to_doc(),
        elements: (0..p.len()).map(|x| ElementDoc { id: x, color: d.name(p.color(x)).to_string() }).collect(),
        covers: p.covers().iter().map(|&(x, y)| [x, y]).collect(),
        boundary: None,
    }
}

pub fn window_to_doc(w: &PeriodicWindow) -> PosetDoc {
    PosetDoc { boundary: Some(w.boundary().to_vec()), ..poset_to_doc(w.poset()) }
}

fn check_version(v: Option<u32>) -> Result<(), IoError> {
    match v {
        None => Err(IoError::MissingVersion),
        Some(SCHEMA_VERSION) => Ok(()),
        Some(other) => Err(IoError::UnsupportedVersion(other)),
    }
}

/// Builds the poset of a document. The coloring need not be surjective.
pub fn poset_from_doc(doc: &PosetDoc) -> Result<ColoredPoset, IoError> {
    check_version(doc.version)?;
    let d = DynkinDiagram::from_doc(doc.diagram.clone())?;
    let n = doc.elements.len();
    let mut coloring: Vec<Option<usize>> = vec![None; n];
    for e in &doc.elements {
        if e.id >= n || coloring[e.id].is_some() {
            return Err(IoError::BadElementIds(n));
        }
        coloring[e.id] = Some(d.index_of(&e.color).ok_or_else(|| IoError::UnknownColor(e.color.clone()))?);
    }
    let coloring = coloring.into_iter().map(|c| c.expect("every id seen once")).collect();
    let covers = doc.covers.iter().map(|&[x, y]| (x, y)).collect();
    Ok(ColoredPoset::with_partial_coloring(d, coloring, covers)?)
}

pub fn window_from_doc(doc: &PosetDoc) -> Result<PeriodicWindow, IoError> {
    let p = poset_from_doc(doc)?;
    Ok(PeriodicWindow::new(p, doc.boundary.clone().unwrap_or_default())?)
}

pub fn parse_doc(json: &str) -> Result<PosetDoc, IoError> {
    let doc: PosetDoc = serde_json::from_str(json)?;
    check_version(doc.version)?;
    Ok(doc)
}

pub fn parse_poset(json: &str) -> Result<ColoredPoset, IoError> {
    poset_from_doc(&parse_doc(json)?)
}

pub fn poset_to_json(p: &ColoredPoset) -> String {
    serde_json::to_string_pretty(&poset_to_doc(p)).expect("documents serialize")
}
