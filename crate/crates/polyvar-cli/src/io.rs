//! JSON input documents and their parsing.
//!
//! Schema (exact keys):
//!
//! ```json
//! {"kind": "polygon", "vertices": [[x, y, ...], ...]}
//! {"kind": "star", "center": [x, y, ...], "leaves": [[x, y, ...], ...]}
//! ```
//!
//! Dimension-agnostic and diff-friendly; numbers round-trip bit-exactly
//! through serialization.

use polyvar::families::Shape;
use polyvar::geometry::{Polygon, StarGraph};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum InputDocument {
    Polygon { vertices: Vec<Vec<f64>> },
    Star { center: Vec<f64>, leaves: Vec<Vec<f64>> },
}

impl InputDocument {
    pub fn from_shape(shape: &Shape) -> InputDocument {
        match shape {
            Shape::Polygon(p) => InputDocument::Polygon {
                vertices: p.vertices().to_vec(),
            },
            Shape::Star(g) => InputDocument::Star {
                center: g.center().clone(),
                leaves: g.leaves().to_vec(),
            },
        }
    }

    pub fn into_shape(self) -> Result<Shape, polyvar::Error> {
        match self {
            InputDocument::Polygon { vertices } => Polygon::new(vertices).map(Shape::Polygon),
            InputDocument::Star { center, leaves } => {
                StarGraph::new(center, leaves).map(Shape::Star)
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serialization cannot fail")
    }
}

/// Parse failure with the source location serde reports.
#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

pub fn parse_document(text: &str) -> Result<InputDocument, ParseError> {
    serde_json::from_str(text).map_err(|e| ParseError {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Loads and validates a document, rendering any failure as a
/// line-numbered message suitable for exit code 2.
pub fn load_shape(path: &Path) -> Result<Shape, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    let doc = parse_document(&text)
        .map_err(|e| format!("{}:{}:{}: {}", path.display(), e.line, e.column, e.message))?;
    doc.into_shape()
        .map_err(|e| format!("{}: {e}", path.display()))
}
