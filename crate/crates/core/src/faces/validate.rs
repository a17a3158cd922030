use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::FaceComplex;
use crate::gkm::restrict_covector;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FaceViolation {
    TopFace {
        detail: String,
    },
    VertexFace {
        vertex: String,
        found: usize,
    },
    DuplicateFace {
        first: String,
        second: String,
    },
    EdgeOutsideFace {
        face: String,
        edge: String,
    },
    Valence {
        face: String,
        vertex: String,
        found: usize,
        expected: usize,
    },
    Disconnected {
        face: String,
        components: usize,
    },
    IsotropyRank {
        face: String,
        rank: usize,
        expected: usize,
    },
    IsotropyContainment {
        face: String,
        item: String,
    },
    WeightConstancy {
        face: String,
        vertex: String,
        reference: String,
    },
    Join {
        first: String,
        second: String,
        bounds: Vec<String>,
    },
}

impl fmt::Display for FaceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FaceViolation::TopFace { detail } => write!(f, "top face: {detail}"),
            FaceViolation::VertexFace { vertex, found } => {
                write!(
                    f,
                    "vertex {vertex} is the vertex set of {found} rank-0 faces, expected 1"
                )
            }
            FaceViolation::DuplicateFace { first, second } => {
                write!(f, "faces {first} and {second} have the same skeleton")
            }
            FaceViolation::EdgeOutsideFace { face, edge } => {
                write!(
                    f,
                    "face {face}: edge {edge} has an endpoint outside the face"
                )
            }
            FaceViolation::Valence {
                face,
                vertex,
                found,
                expected,
            } => write!(
                f,
                "face {face}: vertex {vertex} has {found} edges in the face, expected {expected}"
            ),
            FaceViolation::Disconnected { face, components } => {
                write!(f, "face {face}: skeleton has {components} components")
            }
            FaceViolation::IsotropyRank {
                face,
                rank,
                expected,
            } => {
                write!(f, "face {face}: isotropy rank {rank}, expected {expected}")
            }
            FaceViolation::IsotropyContainment { face, item } => {
                write!(f, "face {face}: isotropy not contained in that of {item}")
            }
            FaceViolation::WeightConstancy {
                face,
                vertex,
                reference,
            } => write!(
                f,
                "face {face}: normal weights at {vertex} differ from those at {reference}"
            ),
            FaceViolation::Join {
                first,
                second,
                bounds,
            } => write!(
                f,
                "faces {first} and {second} meet but have {} minimal common faces",
                bounds.len()
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexReport {
    pub violations: Vec<FaceViolation>,
}

impl ComplexReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl FaceComplex {
    pub fn validate(&self) -> ComplexReport {
        let g = self.graph();
        let r = g.torus_rank();
        let mut out = Vec::new();
        let vid = |v: usize| g.vertices()[v].id.clone();
        let eid = |e: usize| g.edges()[e].id.clone();
        let fid = |f: usize| self.faces[f].id.clone();

        let all_vertices: BTreeSet<usize> = (0..g.num_vertices()).collect();
        let all_edges: BTreeSet<usize> = (0..g.edges().len()).collect();
        let tops: Vec<usize> = (0..self.faces.len())
            .filter(|&f| self.faces[f].orbit_dim == r)
            .collect();
        match tops.as_slice() {
            [t] => {
                if self.vertex_sets[*t] != all_vertices || self.edge_sets[*t] != all_edges {
                    out.push(FaceViolation::TopFace {
                        detail: format!("{} does not contain the whole graph", fid(*t)),
                    });
                }
            }
            _ => out.push(FaceViolation::TopFace {
                detail: format!("{} faces of orbit dimension {r}, expected 1", tops.len()),
            }),
        }

        for v in 0..g.num_vertices() {
            let found = (0..self.faces.len())
                .filter(|&f| {
                    self.face_dim(f) == 0
                        && self.vertex_sets[f].len() == 1
                        && self.vertex_sets[f].contains(&v)
                })
                .count();
            if found != 1 {
                out.push(FaceViolation::VertexFace {
                    vertex: vid(v),
                    found,
                });
            }
        }

        for a in 0..self.faces.len() {
            for b in a + 1..self.faces.len() {
                if self.vertex_sets[a] == self.vertex_sets[b]
                    && self.edge_sets[a] == self.edge_sets[b]
                {
                    out.push(FaceViolation::DuplicateFace {
                        first: fid(a),
                        second: fid(b),
                    });
                }
            }
        }

        for (f, face) in self.faces.iter().enumerate() {
            let vs = &self.vertex_sets[f];
            let es = &self.edge_sets[f];
            let dim = self.face_dim(f);
            for &e in es {
                let (u, v) = g.edge_ends(e);
                if !vs.contains(&u) || !vs.contains(&v) {
                    out.push(FaceViolation::EdgeOutsideFace {
                        face: fid(f),
                        edge: eid(e),
                    });
                }
            }
            for &v in vs {
                let found = g
                    .incident_edges(v)
                    .iter()
                    .filter(|e| es.contains(e))
                    .count();
                if found != dim {
                    out.push(FaceViolation::Valence {
                        face: fid(f),
                        vertex: vid(v),
                        found,
                        expected: dim,
                    });
                }
            }
            let verts: Vec<usize> = vs.iter().copied().collect();
            let edges: Vec<usize> = es.iter().copied().collect();
            let components = g.components_of(&verts, &edges).len();
            if components != 1 {
                out.push(FaceViolation::Disconnected {
                    face: fid(f),
                    components,
                });
            }

            let expected = r - face.orbit_dim;
            let rank = face.isotropy_basis.rank();
            if rank != expected {
                out.push(FaceViolation::IsotropyRank {
                    face: fid(f),
                    rank,
                    expected,
                });
                continue;
            }
            for &v in vs {
                let contained = g.vertices()[v]
                    .isotropy_basis
                    .row_space_contains(&face.isotropy_basis)
                    .unwrap_or(false);
                if !contained {
                    out.push(FaceViolation::IsotropyContainment {
                        face: fid(f),
                        item: vid(v),
                    });
                }
            }
            for &e in es {
                let contained = g
                    .edge_isotropy(e)
                    .map(|iso| {
                        iso.row_space_contains(&face.isotropy_basis)
                            .unwrap_or(false)
                    })
                    .unwrap_or(false);
                if !contained {
                    out.push(FaceViolation::IsotropyContainment {
                        face: fid(f),
                        item: eid(e),
                    });
                }
            }

            // Normal weights restricted to the face isotropy agree at all vertices.
            let normal_weights = |v: usize| -> Vec<Vec<crate::exact::Scalar>> {
                let mut ws: Vec<_> = g
                    .incident_edges(v)
                    .iter()
                    .filter(|e| !es.contains(e))
                    .map(|&e| restrict_covector(g.weight_at(e, v), &face.isotropy_basis))
                    .collect();
                ws.sort();
                ws
            };
            if let Some(&first) = vs.iter().next() {
                let reference = normal_weights(first);
                for &v in vs.iter().skip(1) {
                    if normal_weights(v) != reference {
                        out.push(FaceViolation::WeightConstancy {
                            face: fid(f),
                            vertex: vid(v),
                            reference: vid(first),
                        });
                    }
                }
            }
        }

        for a in 0..self.faces.len() {
            for b in a + 1..self.faces.len() {
                if self.vertex_sets[a].is_disjoint(&self.vertex_sets[b]) {
                    continue;
                }
                let bounds = self.minimal_upper_bounds(a, b);
                if bounds.len() != 1 {
                    out.push(FaceViolation::Join {
                        first: fid(a),
                        second: fid(b),
                        bounds: bounds.into_iter().map(fid).collect(),
                    });
                }
            }
        }
        ComplexReport { violations: out }
    }

    pub(crate) fn require_valid(&self) -> Result<(), super::FaceError> {
        let graph_report = self.graph().validate();
        if !graph_report.is_valid() {
            return Err(crate::gkm::GkmError::Invalid(graph_report).into());
        }
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(super::FaceError::Invalid(report))
        }
    }
}
