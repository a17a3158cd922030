use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::InputError;
use crate::exact::scalar::{format_scalar, parse_scalar};
use crate::exact::{RationalMatrix, Scalar};
use crate::faces::{Face, FaceComplex};
use crate::gkm::{GkmEdge, GkmGraph, GkmVertex};

pub const SCHEMA_VERSION: &str = "gkm-model/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub schema_version: String,
    pub torus_rank: usize,
    pub min_orbit_dim: usize,
    pub vertices: Vec<VertexDocument>,
    pub edges: Vec<EdgeDocument>,
    pub faces: Vec<FaceDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexDocument {
    pub id: String,
    pub isotropy_basis: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDocument {
    pub id: String,
    pub endpoints: [String; 2],
    pub weight_at_u: Vec<String>,
    pub weight_at_v: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceDocument {
    pub id: String,
    pub orbit_dim: usize,
    pub vertex_ids: Vec<String>,
    pub edge_ids: Vec<String>,
    pub isotropy_basis: Vec<Vec<String>>,
}

/// A parsed model: the GKM graph together with its face complex.
#[derive(Debug, Clone)]
pub struct Model {
    pub name: String,
    pub graph: Arc<GkmGraph>,
    pub complex: FaceComplex,
}

/// Strict parse of a model document. Structural checks happen in
/// [`Model::from_document`].
pub fn parse_model_str(text: &str) -> Result<ModelDocument, InputError> {
    let doc: ModelDocument = serde_json::from_str(text).map_err(|e| {
        let (line, column, message) = (e.line(), e.column(), e.to_string());
        match e.classify() {
            serde_json::error::Category::Data => InputError::Schema {
                line,
                column,
                message,
            },
            _ => InputError::Syntax {
                line,
                column,
                message,
            },
        }
    })?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(InputError::Value {
            path: "schema_version".into(),
            message: format!(
                "expected {SCHEMA_VERSION:?}, found {:?}",
                doc.schema_version
            ),
        });
    }
    Ok(doc)
}

/// Canonical text form: two-space indented JSON with a trailing newline.
pub fn to_canonical_json(doc: &ModelDocument) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("model documents always serialize");
    text.push('\n');
    text
}

fn scalars(path: &str, values: &[String]) -> Result<Vec<Scalar>, InputError> {
    values
        .iter()
        .enumerate()
        .map(|(i, s)| {
            parse_scalar(s).map_err(|e| InputError::Value {
                path: format!("{path}[{i}]"),
                message: e.to_string(),
            })
        })
        .collect()
}

fn matrix(path: &str, cols: usize, rows: &[Vec<String>]) -> Result<RationalMatrix, InputError> {
    let rows = rows
        .iter()
        .enumerate()
        .map(|(i, row)| scalars(&format!("{path}[{i}]"), row))
        .collect::<Result<Vec<_>, _>>()?;
    RationalMatrix::from_rows(cols, rows).map_err(|e| InputError::Value {
        path: path.into(),
        message: e.to_string(),
    })
}

fn strings(values: &[Scalar]) -> Vec<String> {
    values.iter().map(format_scalar).collect()
}

impl Model {
    pub fn from_document(name: &str, doc: &ModelDocument) -> Result<Model, InputError> {
        let r = doc.torus_rank;
        let vertices = doc
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| {
                Ok(GkmVertex {
                    id: v.id.clone(),
                    isotropy_basis: matrix(
                        &format!("vertices[{i}].isotropy_basis"),
                        r,
                        &v.isotropy_basis,
                    )?,
                })
            })
            .collect::<Result<Vec<_>, InputError>>()?;
        let edges = doc
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| {
                Ok(GkmEdge {
                    id: e.id.clone(),
                    endpoints: (e.endpoints[0].clone(), e.endpoints[1].clone()),
                    weight_at_u: scalars(&format!("edges[{i}].weight_at_u"), &e.weight_at_u)?,
                    weight_at_v: scalars(&format!("edges[{i}].weight_at_v"), &e.weight_at_v)?,
                })
            })
            .collect::<Result<Vec<_>, InputError>>()?;
        let faces = doc
            .faces
            .iter()
            .enumerate()
            .map(|(i, f)| {
                Ok(Face {
                    id: f.id.clone(),
                    orbit_dim: f.orbit_dim,
                    vertex_ids: f.vertex_ids.clone(),
                    edge_ids: f.edge_ids.clone(),
                    isotropy_basis: matrix(
                        &format!("faces[{i}].isotropy_basis"),
                        r,
                        &f.isotropy_basis,
                    )?,
                })
            })
            .collect::<Result<Vec<_>, InputError>>()?;
        let graph = GkmGraph::new(r, doc.min_orbit_dim, vertices, edges)
            .map_err(|e| InputError::Structure(e.to_string()))?;
        let graph = Arc::new(graph);
        let complex = FaceComplex::new(Arc::clone(&graph), faces)
            .map_err(|e| InputError::Structure(e.to_string()))?;
        Ok(Model {
            name: name.into(),
            graph,
            complex,
        })
    }

    pub fn to_document(&self) -> ModelDocument {
        let g = &self.graph;
        let rows = |m: &RationalMatrix| m.row_vecs().iter().map(|r| strings(r)).collect();
        ModelDocument {
            schema_version: SCHEMA_VERSION.into(),
            torus_rank: g.torus_rank(),
            min_orbit_dim: g.min_orbit_dim(),
            vertices: g
                .vertices()
                .iter()
                .map(|v| VertexDocument {
                    id: v.id.clone(),
                    isotropy_basis: rows(&v.isotropy_basis),
                })
                .collect(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeDocument {
                    id: e.id.clone(),
                    endpoints: [e.endpoints.0.clone(), e.endpoints.1.clone()],
                    weight_at_u: strings(&e.weight_at_u),
                    weight_at_v: strings(&e.weight_at_v),
                })
                .collect(),
            faces: self
                .complex
                .faces()
                .iter()
                .map(|f| FaceDocument {
                    id: f.id.clone(),
                    orbit_dim: f.orbit_dim,
                    vertex_ids: f.vertex_ids.clone(),
                    edge_ids: f.edge_ids.clone(),
                    isotropy_basis: rows(&f.isotropy_basis),
                })
                .collect(),
        }
    }
}
