//! Face poset of the orbit space: faces with their skeleta and isotropy,
//! the lambda vector, Thom class tuples and the face ring relations.

mod relations;
mod thom;
mod validate;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::exact::RationalMatrix;
use crate::gkm::GkmGraph;

pub use relations::{FaceRingReport, PairResidual, RelationOptions, SignSearch};
pub use thom::{SpanDegree, SpanReport, ThomMembership, ZeroDivisorReport};
pub use validate::{ComplexReport, FaceViolation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FaceError {
    #[error("structural error: {0}")]
    Structure(String),
    #[error("unknown face id {0:?}")]
    UnknownFace(String),
    #[error("face complex failed validation with {} violation(s)", .0.violations.len())]
    Invalid(ComplexReport),
    #[error("model inconsistency for faces {first} and {second}: {detail}")]
    Inconsistent {
        first: String,
        second: String,
        detail: String,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Gkm(#[from] crate::gkm::GkmError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: String,
    /// Dimension of the orbits in the interior of the face.
    pub orbit_dim: usize,
    pub vertex_ids: Vec<String>,
    pub edge_ids: Vec<String>,
    /// Rows span the isotropy algebra of the face; no rows for the top face.
    pub isotropy_basis: RationalMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceComplex {
    graph: Arc<GkmGraph>,
    faces: Vec<Face>,
    face_index: BTreeMap<String, usize>,
    vertex_sets: Vec<BTreeSet<usize>>,
    edge_sets: Vec<BTreeSet<usize>>,
}

impl FaceComplex {
    pub fn new(graph: Arc<GkmGraph>, faces: Vec<Face>) -> Result<Self, FaceError> {
        let r = graph.torus_rank();
        let b = graph.min_orbit_dim();
        let mut face_index = BTreeMap::new();
        let mut vertex_sets = Vec::with_capacity(faces.len());
        let mut edge_sets = Vec::with_capacity(faces.len());
        for (i, f) in faces.iter().enumerate() {
            let err = |msg: String| FaceError::Structure(format!("face {:?}: {msg}", f.id));
            if face_index.insert(f.id.clone(), i).is_some() {
                return Err(FaceError::Structure(format!(
                    "duplicate face id {:?}",
                    f.id
                )));
            }
            if f.orbit_dim < b || f.orbit_dim > r {
                return Err(err(format!("orbit_dim {} outside {b}..={r}", f.orbit_dim)));
            }
            let basis = &f.isotropy_basis;
            if basis.num_cols() != r || basis.num_rows() != r - f.orbit_dim {
                return Err(err(format!(
                    "isotropy basis must be {} x {r}, got {} x {}",
                    r - f.orbit_dim,
                    basis.num_rows(),
                    basis.num_cols()
                )));
            }
            let mut vs = BTreeSet::new();
            for id in &f.vertex_ids {
                let v = graph
                    .vertex_position(id)
                    .ok_or_else(|| err(format!("unknown vertex {id:?}")))?;
                if !vs.insert(v) {
                    return Err(err(format!("vertex {id:?} listed twice")));
                }
            }
            if vs.is_empty() {
                return Err(err("a face needs at least one vertex".into()));
            }
            let mut es = BTreeSet::new();
            for id in &f.edge_ids {
                let e = graph
                    .edge_position(id)
                    .ok_or_else(|| err(format!("unknown edge {id:?}")))?;
                if !es.insert(e) {
                    return Err(err(format!("edge {id:?} listed twice")));
                }
            }
            vertex_sets.push(vs);
            edge_sets.push(es);
        }
        Ok(FaceComplex {
            graph,
            faces,
            face_index,
            vertex_sets,
            edge_sets,
        })
    }

    pub fn graph(&self) -> &GkmGraph {
        &self.graph
    }

    pub fn shared_graph(&self) -> Arc<GkmGraph> {
        Arc::clone(&self.graph)
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_position(&self, id: &str) -> Option<usize> {
        self.face_index.get(id).copied()
    }

    pub fn face_vertices(&self, face: usize) -> &BTreeSet<usize> {
        &self.vertex_sets[face]
    }

    pub fn face_edges(&self, face: usize) -> &BTreeSet<usize> {
        &self.edge_sets[face]
    }

    /// Rank of the face in the poset: orbit dimension minus `b`.
    pub fn face_dim(&self, face: usize) -> usize {
        self.faces[face].orbit_dim - self.graph.min_orbit_dim()
    }

    /// Codimension in polynomial grading, `r - orbit_dim`: the degree of the
    /// Thom class.
    pub fn codim(&self, face: usize) -> usize {
        self.graph.torus_rank() - self.faces[face].orbit_dim
    }

    pub fn contains(&self, outer: usize, inner: usize) -> bool {
        self.vertex_sets[inner].is_subset(&self.vertex_sets[outer])
            && self.edge_sets[inner].is_subset(&self.edge_sets[outer])
    }

    /// Faces containing every vertex and edge of both arguments that are
    /// minimal under containment.
    pub fn minimal_upper_bounds(&self, f: usize, g: usize) -> Vec<usize> {
        let uppers: Vec<usize> = (0..self.faces.len())
            .filter(|&h| self.contains(h, f) && self.contains(h, g))
            .collect();
        uppers
            .iter()
            .copied()
            .filter(|&h| !uppers.iter().any(|&o| o != h && self.contains(h, o)))
            .collect()
    }

    /// The face with exactly this skeleton, if listed.
    pub fn face_with(&self, vertices: &BTreeSet<usize>, edges: &BTreeSet<usize>) -> Option<usize> {
        (0..self.faces.len())
            .find(|&f| &self.vertex_sets[f] == vertices && &self.edge_sets[f] == edges)
    }

    pub fn lambda_vector(&self) -> Result<LambdaVector, LambdaError> {
        let r = self.graph.torus_rank();
        let b = self.graph.min_orbit_dim();
        let mut counts = vec![0u64; r - b + 1];
        for f in &self.faces {
            counts[f.orbit_dim - b] += 1;
        }
        LambdaVector::new(r, b, counts)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LambdaError {
    #[error("need 0 <= b < r, got r = {r}, b = {b}")]
    Range { r: usize, b: usize },
    #[error("expected {expected} counts, got {found}")]
    Length { expected: usize, found: usize },
    #[error("orbit dimension {0} listed twice or out of range")]
    Index(usize),
    #[error("lambda_r must be 1, got {0}")]
    TopCount(u64),
}

/// Number of faces of each orbit dimension `b..=r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaVector {
    r: usize,
    b: usize,
    counts: Vec<u64>,
}

impl LambdaVector {
    /// `counts[j]` is the number of faces of orbit dimension `b + j`.
    pub fn new(r: usize, b: usize, counts: Vec<u64>) -> Result<Self, LambdaError> {
        if b >= r {
            return Err(LambdaError::Range { r, b });
        }
        if counts.len() != r - b + 1 {
            return Err(LambdaError::Length {
                expected: r - b + 1,
                found: counts.len(),
            });
        }
        if counts[r - b] != 1 {
            return Err(LambdaError::TopCount(counts[r - b]));
        }
        Ok(LambdaVector { r, b, counts })
    }

    /// Builds from `(orbit_dim, count)` pairs given in any order.
    pub fn from_pairs(r: usize, b: usize, pairs: &[(usize, u64)]) -> Result<Self, LambdaError> {
        if b >= r {
            return Err(LambdaError::Range { r, b });
        }
        let mut counts = vec![None; r - b + 1];
        for &(i, c) in pairs {
            if i < b || i > r || counts[i - b].is_some() {
                return Err(LambdaError::Index(i));
            }
            counts[i - b] = Some(c);
        }
        let counts: Option<Vec<u64>> = counts.into_iter().collect();
        match counts {
            Some(c) => Self::new(r, b, c),
            None => Err(LambdaError::Length {
                expected: r - b + 1,
                found: pairs.len(),
            }),
        }
    }

    pub fn torus_rank(&self) -> usize {
        self.r
    }

    pub fn min_orbit_dim(&self) -> usize {
        self.b
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// `lambda_i` for orbit dimension `i`.
    pub fn get(&self, i: usize) -> u64 {
        self.counts[i - self.b]
    }
}
