use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{FaceComplex, FaceError};
use crate::gkm::VertexTuple;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelationOptions {
    /// Retry with per-face sign flips when the supplied signs leave a
    /// nonzero residual.
    pub sign_retry: bool,
    /// Largest number of faces for which the sign search is attempted.
    pub max_search_faces: usize,
}

impl Default for RelationOptions {
    fn default() -> Self {
        RelationOptions {
            sign_retry: true,
            max_search_faces: 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairResidual {
    pub first: String,
    pub second: String,
    /// `None` when the faces are disjoint.
    pub join: Option<String>,
    pub components: Vec<String>,
    pub residual_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignSearch {
    pub attempted: bool,
    /// Face ids whose Thom class had to be negated, if a working choice exists.
    pub flipped: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceRingReport {
    pub pairs: Vec<PairResidual>,
    /// All residuals vanish with the supplied signs.
    pub all_zero: bool,
    pub sign_search: Option<SignSearch>,
}

impl FaceRingReport {
    /// Relations hold with the supplied signs or after the reported flips.
    pub fn holds(&self) -> bool {
        self.all_zero
            || self
                .sign_search
                .as_ref()
                .is_some_and(|s| s.flipped.is_some())
    }
}

/// Precomputed pieces of one relation `tau_F tau_G = tau_{F v G} sum_E tau_E`.
struct Relation {
    first: usize,
    second: usize,
    join: Option<usize>,
    components: Vec<usize>,
    product: VertexTuple,
    /// `tau_{F v G} * tau_E` for each component `E`.
    terms: Vec<VertexTuple>,
}

impl Relation {
    /// Residual with term `k` negated when bit `k` of `pattern` is set.
    fn residual_zero(&self, pattern: u64) -> bool {
        let mut residual = self.product.clone();
        for (k, term) in self.terms.iter().enumerate() {
            let t = if pattern >> k & 1 == 1 {
                term.neg()
            } else {
                term.clone()
            };
            residual = match residual.sub(&t) {
                Ok(r) => r,
                Err(_) => return false,
            };
        }
        residual.is_zero()
    }

    /// Which relative sign patterns of the terms make the residual vanish.
    fn good_patterns(&self) -> Vec<bool> {
        (0..1u64 << self.terms.len())
            .map(|p| self.residual_zero(p))
            .collect()
    }

    /// Term `k` enters with sign `s(F) s(G) s(F v G) s(E_k)` relative to the product.
    fn pattern(&self, flipped: impl Fn(usize) -> bool) -> u64 {
        let base = flipped(self.first) ^ flipped(self.second);
        let join = self.join.is_some_and(&flipped);
        self.components
            .iter()
            .enumerate()
            .filter(|&(_, &e)| base ^ join ^ flipped(e))
            .fold(0, |acc, (k, _)| acc | 1 << k)
    }
}

impl FaceComplex {
    fn relation(&self, f: usize, g: usize) -> Result<Relation, FaceError> {
        let graph = self.graph();
        let product = self.thom_at(f).mul(&self.thom_at(g));
        let common_v: BTreeSet<usize> = self.vertex_sets[f]
            .intersection(&self.vertex_sets[g])
            .copied()
            .collect();
        let inconsistent = |detail: String| FaceError::Inconsistent {
            first: self.faces[f].id.clone(),
            second: self.faces[g].id.clone(),
            detail,
        };
        if common_v.is_empty() {
            return Ok(Relation {
                first: f,
                second: g,
                join: None,
                components: Vec::new(),
                product,
                terms: Vec::new(),
            });
        }
        let common_e: BTreeSet<usize> = self.edge_sets[f]
            .intersection(&self.edge_sets[g])
            .copied()
            .collect();
        let verts: Vec<usize> = common_v.iter().copied().collect();
        let edges: Vec<usize> = common_e.iter().copied().collect();
        let mut components = Vec::new();
        for comp in graph.components_of(&verts, &edges) {
            let cv: BTreeSet<usize> = comp.into_iter().collect();
            let ce: BTreeSet<usize> = common_e
                .iter()
                .copied()
                .filter(|&e| cv.contains(&graph.edge_ends(e).0))
                .collect();
            let face = self.face_with(&cv, &ce).ok_or_else(|| {
                let ids: Vec<&str> = cv
                    .iter()
                    .map(|&v| graph.vertices()[v].id.as_str())
                    .collect();
                inconsistent(format!("intersection component on {ids:?} is not a face"))
            })?;
            components.push(face);
        }
        let bounds = self.minimal_upper_bounds(f, g);
        let [join] = bounds[..] else {
            return Err(inconsistent(format!(
                "{} minimal common faces",
                bounds.len()
            )));
        };
        let tau_join = self.thom_at(join);
        let terms = components
            .iter()
            .map(|&e| tau_join.mul(&self.thom_at(e)))
            .collect();
        Ok(Relation {
            first: f,
            second: g,
            join: Some(join),
            components,
            product,
            terms,
        })
    }

    /// Checks the face ring relation pointwise for every unordered pair of
    /// distinct faces.
    pub fn verify_face_ring_relations(
        &self,
        options: RelationOptions,
    ) -> Result<FaceRingReport, FaceError> {
        let n = self.faces.len();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        let build = |&(a, b): &(usize, usize)| self.relation(a, b);
        let relations: Vec<Relation> = if crate::gkm::serial_requested() {
            pairs.iter().map(build).collect::<Result<_, _>>()?
        } else {
            pairs.par_iter().map(build).collect::<Result<_, _>>()?
        };
        let residuals: Vec<PairResidual> = relations
            .iter()
            .map(|rel| PairResidual {
                first: self.faces[rel.first].id.clone(),
                second: self.faces[rel.second].id.clone(),
                join: rel.join.map(|j| self.faces[j].id.clone()),
                components: rel
                    .components
                    .iter()
                    .map(|&e| self.faces[e].id.clone())
                    .collect(),
                residual_zero: rel.residual_zero(0),
            })
            .collect();
        let all_zero = residuals.iter().all(|p| p.residual_zero);
        let sign_search = if all_zero || !options.sign_retry {
            None
        } else if n > options.max_search_faces {
            Some(SignSearch {
                attempted: false,
                flipped: None,
            })
        } else {
            let good: Vec<Vec<bool>> = relations.iter().map(Relation::good_patterns).collect();
            let found = (1u64..1 << n).find(|mask| {
                relations
                    .iter()
                    .zip(&good)
                    .all(|(rel, ok)| ok[rel.pattern(|f| mask >> f & 1 == 1) as usize])
            });
            Some(SignSearch {
                attempted: true,
                flipped: found.map(|mask| {
                    (0..n)
                        .filter(|f| mask >> f & 1 == 1)
                        .map(|f| self.faces[f].id.clone())
                        .collect()
                }),
            })
        };
        Ok(FaceRingReport {
            pairs: residuals,
            all_zero,
            sign_search,
        })
    }
}
