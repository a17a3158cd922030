use serde::{Deserialize, Serialize};

use super::{FaceComplex, FaceError};
use crate::exact::{EchelonBasis, GradedPoly};
use crate::gkm::VertexTuple;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThomMembership {
    pub face: String,
    pub passed: bool,
    pub failing_edges: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanDegree {
    pub degree: usize,
    pub span_dim: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanReport {
    pub degrees: Vec<SpanDegree>,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroDivisorReport {
    pub count: usize,
    pub witnesses: Vec<(String, String)>,
}

impl FaceComplex {
    pub fn thom_tuple(&self, face_id: &str) -> Result<VertexTuple, FaceError> {
        let f = self
            .face_position(face_id)
            .ok_or_else(|| FaceError::UnknownFace(face_id.into()))?;
        Ok(self.thom_at(f))
    }

    /// At a vertex of the face: the product of the weights of the edges
    /// leaving the face there. Zero away from the face.
    pub(crate) fn thom_at(&self, f: usize) -> VertexTuple {
        let g = self.graph();
        let k = g.valence();
        let edges = &self.edge_sets[f];
        let values = (0..g.num_vertices())
            .map(|v| {
                if !self.vertex_sets[f].contains(&v) {
                    return GradedPoly::zero(k);
                }
                g.incident_edges(v)
                    .iter()
                    .filter(|e| !edges.contains(e))
                    .fold(GradedPoly::one(k), |acc, &e| &acc * &g.weight_form(e, v))
            })
            .collect();
        VertexTuple::new(g, values).expect("products of linear forms are homogeneous")
    }

    pub fn verify_thom_membership(&self) -> Vec<ThomMembership> {
        (0..self.faces.len())
            .map(|f| {
                let failing_edges = self.graph().failing_edges(&self.thom_at(f));
                ThomMembership {
                    face: self.faces[f].id.clone(),
                    passed: failing_edges.is_empty(),
                    failing_edges,
                }
            })
            .collect()
    }

    /// Compares, degree by degree, the span of all products of Thom tuples
    /// with the dimension of the GKM algebra.
    pub fn thom_spanning_test(&self, max_degree: usize) -> Result<SpanReport, FaceError> {
        self.require_valid()?;
        let g = self.graph();
        let hilbert = g.hilbert_unchecked(max_degree)?;
        let thom: Vec<(usize, VertexTuple)> = (0..self.faces.len())
            .map(|f| (self.codim(f), self.thom_at(f)))
            .collect();
        // Products of algebra elements stay in the algebra, so the span can
        // stop growing once it reaches the target.
        let closed = thom.iter().all(|(_, t)| g.is_in_gkm_algebra(t));

        let mut bases: Vec<Vec<VertexTuple>> = Vec::with_capacity(max_degree + 1);
        let mut degrees = Vec::with_capacity(max_degree + 1);
        for d in 0..=max_degree {
            let target = hilbert.values[d];
            let width = VertexTuple::one(g).to_coefficients(d).len();
            let mut echelon = EchelonBasis::new(width);
            if d == 0 {
                echelon.insert(VertexTuple::one(g).to_coefficients(0));
            } else {
                'outer: for (c, tau) in thom.iter().filter(|(c, _)| (1..=d).contains(c)) {
                    for lower in &bases[d - c] {
                        if closed && echelon.rank() >= target {
                            break 'outer;
                        }
                        let product = tau.mul(lower);
                        if !product.is_zero() {
                            echelon.insert(product.to_coefficients(d));
                        }
                    }
                }
            }
            degrees.push(SpanDegree {
                degree: d,
                span_dim: echelon.rank(),
                target,
            });
            bases.push(
                echelon
                    .vectors()
                    .map(|v| VertexTuple::from_coefficients(g, d, v))
                    .collect(),
            );
        }
        let matches = degrees.iter().all(|s| s.span_dim == s.target);
        Ok(SpanReport { degrees, matches })
    }

    /// Pairs of distinct codimension-one faces with disjoint vertex sets:
    /// independent degree-two classes whose product vanishes.
    pub fn zero_divisor_pairs_deg2(&self) -> Result<ZeroDivisorReport, FaceError> {
        let g = self.graph();
        if g.valence() < 2 {
            return Err(FaceError::Precondition(format!(
                "needs r - b >= 2, got {}",
                g.valence()
            )));
        }
        let facets: Vec<usize> = (0..self.faces.len())
            .filter(|&f| self.codim(f) == 1)
            .collect();
        let mut witnesses = Vec::new();
        for (i, &a) in facets.iter().enumerate() {
            for &b in &facets[i + 1..] {
                if self.vertex_sets[a].is_disjoint(&self.vertex_sets[b]) {
                    witnesses.push((self.faces[a].id.clone(), self.faces[b].id.clone()));
                }
            }
        }
        Ok(ZeroDivisorReport {
            count: witnesses.len(),
            witnesses,
        })
    }
}
