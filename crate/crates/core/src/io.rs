//! JSON input documents.
//!
//! A document is a diagram plus `"schema_version": 1`. Unknown fields are
//! rejected. Only structure is checked here; semantics are left to
//! [`validate`](crate::diagram::validate).

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{Diagram, EmbeddingAnnotation, IntersectionEdge, Orbit, SeparatrixRecord};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("at `{path}`: {message}")]
    Schema { path: String, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramDocument {
    pub schema_version: u32,
    pub name: String,
    pub orbits: Vec<Orbit>,
    pub edges: Vec<IntersectionEdge>,
    #[serde(default)]
    pub separatrices: Vec<SeparatrixRecord>,
    #[serde(default)]
    pub mirror_separatrices: Vec<SeparatrixRecord>,
    #[serde(default)]
    pub annotations: Vec<EmbeddingAnnotation>,
    #[serde(default)]
    pub mirror_annotations: Vec<EmbeddingAnnotation>,
    pub no_heteroclinic_curves: bool,
}

impl From<&Diagram> for DiagramDocument {
    fn from(d: &Diagram) -> Self {
        let d = d.clone();
        DiagramDocument {
            schema_version: SCHEMA_VERSION,
            name: d.name,
            orbits: d.orbits,
            edges: d.edges,
            separatrices: d.separatrices,
            mirror_separatrices: d.mirror_separatrices,
            annotations: d.annotations,
            mirror_annotations: d.mirror_annotations,
            no_heteroclinic_curves: d.no_heteroclinic_curves,
        }
    }
}

impl From<DiagramDocument> for Diagram {
    fn from(doc: DiagramDocument) -> Self {
        Diagram {
            name: doc.name,
            orbits: doc.orbits,
            edges: doc.edges,
            separatrices: doc.separatrices,
            mirror_separatrices: doc.mirror_separatrices,
            annotations: doc.annotations,
            mirror_annotations: doc.mirror_annotations,
            no_heteroclinic_curves: doc.no_heteroclinic_curves,
        }
    }
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> DocumentError {
    DocumentError::Schema {
        path: path.into(),
        message: message.into(),
    }
}

pub fn parse_document(bytes: &[u8]) -> Result<Diagram, DocumentError> {
    let mut de = serde_json::Deserializer::from_slice(bytes);
    let doc: DiagramDocument = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = match e.path().to_string() {
            p if p == "." => String::from("(document)"),
            p => p,
        };
        let inner = e.into_inner();
        if inner.is_data() {
            schema(path, strip_position(&inner))
        } else {
            DocumentError::Parse {
                line: inner.line(),
                column: inner.column(),
                message: strip_position(&inner),
            }
        }
    })?;
    de.end().map_err(|e| DocumentError::Parse {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e),
    })?;

    if doc.schema_version != SCHEMA_VERSION {
        return Err(schema(
            "schema_version",
            format!("expected {SCHEMA_VERSION}, found {}", doc.schema_version),
        ));
    }
    if doc.orbits.is_empty() {
        return Err(schema("orbits", "at least one orbit is required"));
    }
    let mut seen = HashSet::new();
    for (k, o) in doc.orbits.iter().enumerate() {
        if o.id.as_str().is_empty() {
            return Err(schema(format!("orbits[{k}].id"), "orbit id must be non-empty"));
        }
        if !seen.insert(&o.id) {
            return Err(schema(
                format!("orbits[{k}].id"),
                format!("duplicate orbit id `{}`", o.id),
            ));
        }
        if o.period == 0 {
            return Err(schema(format!("orbits[{k}].period"), "period must be at least 1"));
        }
        if o.index > 3 {
            return Err(schema(format!("orbits[{k}].index"), "index must be 0, 1, 2 or 3"));
        }
    }
    Ok(doc.into())
}

/// serde_json appends " at line L column C" to its messages; the position is
/// reported separately.
fn strip_position(e: &serde_json::Error) -> String {
    let msg = e.to_string();
    match msg.rfind(" at line ") {
        Some(at) => msg[..at].to_owned(),
        None => msg,
    }
}

/// Pretty-printed document for a diagram.
pub fn emit_document(diagram: &Diagram) -> String {
    serde_json::to_string_pretty(&DiagramDocument::from(diagram)).expect("document serializes")
}
