//! The graph of lowest-dimensional orbits and the cohomogeneity-one
//! submanifolds joining them, together with the algebra of vertex tuples
//! satisfying the pairwise edge restriction conditions.

mod algebra;
mod validate;

use std::collections::BTreeMap;

use crate::exact::matrix::dot;
use crate::exact::{ExactError, GradedPoly, RationalMatrix, Scalar};

pub(crate) use algebra::serial_requested;
pub use algebra::{HilbertFunction, VertexTuple};
pub use validate::{GraphViolation, ValidationReport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GkmError {
    #[error("structural error: {0}")]
    Structure(String),
    #[error("unknown edge id {0:?}")]
    UnknownEdge(String),
    #[error("unknown vertex id {0:?}")]
    UnknownVertex(String),
    #[error("graph failed validation with {} violation(s)", .0.violations.len())]
    Invalid(ValidationReport),
    #[error("edge {0:?} has degenerate isotropy data")]
    DegenerateEdge(String),
    #[error("bad vertex tuple: {0}")]
    Tuple(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GkmVertex {
    pub id: String,
    /// Rows span the isotropy algebra of the orbit inside the ambient torus
    /// algebra. Polynomials at this vertex use the dual coordinates.
    pub isotropy_basis: RationalMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GkmEdge {
    pub id: String,
    pub endpoints: (String, String),
    pub weight_at_u: Vec<Scalar>,
    pub weight_at_v: Vec<Scalar>,
}

/// Restriction data for one edge, computed once at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct EdgeGeometry {
    /// Canonical (reduced echelon) basis of the edge isotropy algebra.
    pub isotropy: RationalMatrix,
    /// Images of the endpoint coordinates as linear forms on the edge isotropy.
    pub restrict_u: Vec<GradedPoly>,
    pub restrict_v: Vec<GradedPoly>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GkmGraph {
    torus_rank: usize,
    min_orbit_dim: usize,
    vertices: Vec<GkmVertex>,
    edges: Vec<GkmEdge>,
    vertex_index: BTreeMap<String, usize>,
    edge_index: BTreeMap<String, usize>,
    ends: Vec<(usize, usize)>,
    incidence: Vec<Vec<usize>>,
    geometry: Vec<Option<EdgeGeometry>>,
}

impl GkmGraph {
    /// Checks structural well-formedness only: ranges, id uniqueness,
    /// references and vector lengths. Semantic conditions are reported by
    /// [`GkmGraph::validate`].
    pub fn new(
        torus_rank: usize,
        min_orbit_dim: usize,
        vertices: Vec<GkmVertex>,
        edges: Vec<GkmEdge>,
    ) -> Result<Self, GkmError> {
        let structure = |msg: String| Err(GkmError::Structure(msg));
        if min_orbit_dim >= torus_rank {
            return structure(format!(
                "min_orbit_dim {min_orbit_dim} must be below torus_rank {torus_rank}"
            ));
        }
        if vertices.is_empty() {
            return structure("a graph needs at least one vertex".into());
        }
        let k = torus_rank - min_orbit_dim;
        let mut vertex_index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.id.clone(), i).is_some() {
                return structure(format!("duplicate vertex id {:?}", v.id));
            }
            let basis = &v.isotropy_basis;
            if basis.num_cols() != torus_rank || basis.num_rows() != k {
                return structure(format!(
                    "vertex {:?}: isotropy basis must be {k} x {torus_rank}, got {} x {}",
                    v.id,
                    basis.num_rows(),
                    basis.num_cols()
                ));
            }
        }
        let mut edge_index = BTreeMap::new();
        let mut ends = Vec::with_capacity(edges.len());
        let mut incidence = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            if edge_index.insert(e.id.clone(), i).is_some() {
                return structure(format!("duplicate edge id {:?}", e.id));
            }
            let lookup = |id: &String| {
                vertex_index.get(id).copied().ok_or_else(|| {
                    GkmError::Structure(format!("edge {:?} references unknown vertex {id:?}", e.id))
                })
            };
            let (u, v) = (lookup(&e.endpoints.0)?, lookup(&e.endpoints.1)?);
            if u == v {
                return structure(format!("edge {:?} is a loop", e.id));
            }
            for w in [&e.weight_at_u, &e.weight_at_v] {
                if w.len() != torus_rank {
                    return structure(format!(
                        "edge {:?}: weight covector has length {}, expected {torus_rank}",
                        e.id,
                        w.len()
                    ));
                }
            }
            ends.push((u, v));
            incidence[u].push(i);
            incidence[v].push(i);
        }
        let mut graph = GkmGraph {
            torus_rank,
            min_orbit_dim,
            vertices,
            edges,
            vertex_index,
            edge_index,
            ends,
            incidence,
            geometry: Vec::new(),
        };
        graph.geometry = (0..graph.edges.len())
            .map(|e| graph.compute_geometry(e))
            .collect();
        Ok(graph)
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    pub fn min_orbit_dim(&self) -> usize {
        self.min_orbit_dim
    }

    /// Valence `r - b`, also the number of coordinates at each vertex.
    pub fn valence(&self) -> usize {
        self.torus_rank - self.min_orbit_dim
    }

    pub fn vertices(&self) -> &[GkmVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[GkmEdge] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_position(&self, id: &str) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    pub fn edge_position(&self, id: &str) -> Option<usize> {
        self.edge_index.get(id).copied()
    }

    /// Endpoint positions `(u, v)` of an edge.
    pub fn edge_ends(&self, edge: usize) -> (usize, usize) {
        self.ends[edge]
    }

    pub fn incident_edges(&self, vertex: usize) -> &[usize] {
        &self.incidence[vertex]
    }

    pub fn other_end(&self, edge: usize, vertex: usize) -> usize {
        let (u, v) = self.ends[edge];
        if u == vertex {
            v
        } else {
            u
        }
    }

    /// Ambient weight covector of `edge` at its endpoint `vertex`.
    pub fn weight_at(&self, edge: usize, vertex: usize) -> &[Scalar] {
        let (u, _) = self.ends[edge];
        if u == vertex {
            &self.edges[edge].weight_at_u
        } else {
            &self.edges[edge].weight_at_v
        }
    }

    /// The weight of `edge` at `vertex`, as a linear form in the vertex
    /// coordinates.
    pub fn weight_form(&self, edge: usize, vertex: usize) -> GradedPoly {
        GradedPoly::linear(&restrict_covector(
            self.weight_at(edge, vertex),
            &self.vertices[vertex].isotropy_basis,
        ))
    }

    /// Canonical basis of the isotropy algebra of an edge, if the edge data
    /// is non-degenerate.
    pub fn edge_isotropy(&self, edge: usize) -> Option<&RationalMatrix> {
        self.geometry[edge].as_ref().map(|g| &g.isotropy)
    }

    pub(crate) fn geometry(&self, edge: usize) -> Option<&EdgeGeometry> {
        self.geometry[edge].as_ref()
    }

    /// Connected components as sorted lists of vertex positions.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let all_edges: Vec<usize> = (0..self.edges.len()).collect();
        let all_vertices: Vec<usize> = (0..self.vertices.len()).collect();
        self.components_of(&all_vertices, &all_edges)
    }

    /// Components of the subgraph on the given vertices and edges. Edges with
    /// an endpoint outside the vertex set are ignored.
    pub fn components_of(&self, vertices: &[usize], edges: &[usize]) -> Vec<Vec<usize>> {
        let mut parent: BTreeMap<usize, usize> = vertices.iter().map(|&v| (v, v)).collect();
        fn find(parent: &mut BTreeMap<usize, usize>, x: usize) -> usize {
            let p = parent[&x];
            if p == x {
                return x;
            }
            let root = find(parent, p);
            parent.insert(x, root);
            root
        }
        for &e in edges {
            let (u, v) = self.ends[e];
            if parent.contains_key(&u) && parent.contains_key(&v) {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                if ru != rv {
                    parent.insert(ru.max(rv), ru.min(rv));
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &v in vertices {
            let root = find(&mut parent, v);
            groups.entry(root).or_default().push(v);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        for g in &mut out {
            g.sort_unstable();
        }
        out.sort();
        out
    }

    /// Kernel of the weight at `u` inside the isotropy algebra of `u`, and
    /// the endpoint coordinate maps onto it.
    fn compute_geometry(&self, edge: usize) -> Option<EdgeGeometry> {
        let (u, v) = self.ends[edge];
        let bu = &self.vertices[u].isotropy_basis;
        let bv = &self.vertices[v].isotropy_basis;
        let k = self.valence();
        if bu.rank() != k || bv.rank() != k {
            return None;
        }
        let values = restrict_covector(&self.edges[edge].weight_at_u, bu);
        if values.iter().all(num_traits::Zero::is_zero) {
            return None;
        }
        let functional = RationalMatrix::from_rows(k, vec![values]).ok()?;
        let (_, kernel) = functional.rank_and_nullspace();
        let ambient = RationalMatrix::from_rows(k, kernel).ok()?.mul(bu).ok()?;
        let isotropy = ambient.row_space();
        let restrict_u = coordinate_images(&isotropy, bu)?;
        let restrict_v = coordinate_images(&isotropy, bv)?;
        Some(EdgeGeometry {
            isotropy,
            restrict_u,
            restrict_v,
        })
    }
}

/// Values of an ambient covector on each row of `basis`, i.e. the covector
/// written in the coordinates dual to the basis.
pub fn restrict_covector(covector: &[Scalar], basis: &RationalMatrix) -> Vec<Scalar> {
    (0..basis.num_rows())
        .map(|r| dot(covector, basis.row(r)))
        .collect()
}

/// For a subspace `sub` contained in the span of `basis`, the linear forms on
/// `sub` (in its own row coordinates) giving each coordinate dual to `basis`.
fn coordinate_images(sub: &RationalMatrix, basis: &RationalMatrix) -> Option<Vec<GradedPoly>> {
    let m = sub.num_rows();
    let coords: Vec<Vec<Scalar>> = (0..m)
        .map(|j| basis.coordinates(sub.row(j)))
        .collect::<Option<_>>()?;
    Some(
        (0..basis.num_rows())
            .map(|i| {
                let column: Vec<Scalar> = coords.iter().map(|c| c[i].clone()).collect();
                if m == 0 {
                    GradedPoly::zero(0)
                } else {
                    GradedPoly::linear(&column)
                }
            })
            .collect(),
    )
}
