use std::fmt;

use serde::{Deserialize, Serialize};

use super::{restrict_covector, GkmGraph};
use crate::exact::subspace_intersection;

/// One failed structural condition, with the ids needed to locate it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphViolation {
    IsotropyRank {
        vertex: String,
        rank: usize,
        expected: usize,
    },
    Valence {
        vertex: String,
        found: usize,
        expected: usize,
    },
    Disconnected {
        components: Vec<Vec<String>>,
    },
    EdgeIsotropy {
        edge: String,
        detail: String,
    },
    WeightKernel {
        edge: String,
        vertex: String,
        detail: String,
    },
    EdgeShift {
        vertex: String,
        across: String,
        edge: String,
        matches: usize,
    },
}

impl fmt::Display for GraphViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphViolation::IsotropyRank {
                vertex,
                rank,
                expected,
            } => {
                write!(
                    f,
                    "vertex {vertex}: isotropy basis has rank {rank}, expected {expected}"
                )
            }
            GraphViolation::Valence {
                vertex,
                found,
                expected,
            } => {
                write!(
                    f,
                    "vertex {vertex}: {found} incident edges, expected {expected}"
                )
            }
            GraphViolation::Disconnected { components } => {
                write!(f, "graph has {} components", components.len())
            }
            GraphViolation::EdgeIsotropy { edge, detail } => write!(f, "edge {edge}: {detail}"),
            GraphViolation::WeightKernel {
                edge,
                vertex,
                detail,
            } => {
                write!(f, "edge {edge} at {vertex}: {detail}")
            }
            GraphViolation::EdgeShift {
                vertex,
                across,
                edge,
                matches,
            } => write!(
                f,
                "edge {edge} at {vertex} has {matches} partners across edge {across} (need 1)"
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<GraphViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl GkmGraph {
    /// Runs every semantic check and collects all violations.
    pub fn validate(&self) -> ValidationReport {
        let mut out = Vec::new();
        let k = self.valence();
        let vid = |i: usize| self.vertices[i].id.clone();
        let eid = |i: usize| self.edges[i].id.clone();

        for (i, v) in self.vertices.iter().enumerate() {
            let rank = v.isotropy_basis.rank();
            if rank != k {
                out.push(GraphViolation::IsotropyRank {
                    vertex: vid(i),
                    rank,
                    expected: k,
                });
            }
        }

        for i in 0..self.vertices.len() {
            let found = self.incidence[i].len();
            if found != k {
                out.push(GraphViolation::Valence {
                    vertex: vid(i),
                    found,
                    expected: k,
                });
            }
        }

        let components = self.components();
        if components.len() > 1 {
            out.push(GraphViolation::Disconnected {
                components: components
                    .iter()
                    .map(|c| c.iter().map(|&v| vid(v)).collect())
                    .collect(),
            });
        }

        for e in 0..self.edges.len() {
            let (u, v) = self.ends[e];
            let bu = &self.vertices[u].isotropy_basis;
            let bv = &self.vertices[v].isotropy_basis;
            if bu.rank() != k || bv.rank() != k {
                continue;
            }
            for (end, basis) in [(u, bu), (v, bv)] {
                let values = restrict_covector(self.weight_at(e, end), basis);
                if values.iter().all(num_traits::Zero::is_zero) {
                    out.push(GraphViolation::WeightKernel {
                        edge: eid(e),
                        vertex: vid(end),
                        detail: "weight vanishes on the vertex isotropy".into(),
                    });
                }
            }
            let Some(geom) = self.geometry(e) else {
                if !restrict_covector(self.weight_at(e, u), bu)
                    .iter()
                    .all(num_traits::Zero::is_zero)
                {
                    out.push(GraphViolation::EdgeIsotropy {
                        edge: eid(e),
                        detail: format!(
                            "edge isotropy is not contained in the isotropy of {}",
                            vid(v)
                        ),
                    });
                }
                continue;
            };
            let inter = subspace_intersection(bu, bv).expect("bases share the ambient rank");
            if inter.num_rows() != k && inter.num_rows() != k - 1 {
                out.push(GraphViolation::EdgeIsotropy {
                    edge: eid(e),
                    detail: format!(
                        "endpoint isotropies meet in dimension {}, expected {}",
                        inter.num_rows(),
                        k - 1
                    ),
                });
            }
            if inter.num_rows() == k - 1 && inter != geom.isotropy {
                out.push(GraphViolation::WeightKernel {
                    edge: eid(e),
                    vertex: vid(u),
                    detail: "weight does not vanish on the common isotropy".into(),
                });
            }
            let at_v = restrict_covector(self.weight_at(e, v), &geom.isotropy);
            if !at_v.iter().all(num_traits::Zero::is_zero) {
                out.push(GraphViolation::WeightKernel {
                    edge: eid(e),
                    vertex: vid(v),
                    detail: "weight does not vanish on the edge isotropy".into(),
                });
            }
        }

        // Edge shift: each edge at one end has exactly one partner at the
        // other end with the same restriction to the isotropy of the edge
        // joining them.
        for f in 0..self.edges.len() {
            let Some(geom) = self.geometry(f) else {
                continue;
            };
            let (a, b) = self.ends[f];
            for (from, to) in [(a, b), (b, a)] {
                for &e in &self.incidence[from] {
                    let target = restrict_covector(self.weight_at(e, from), &geom.isotropy);
                    let matches = self.incidence[to]
                        .iter()
                        .filter(|&&g| {
                            restrict_covector(self.weight_at(g, to), &geom.isotropy) == target
                        })
                        .count();
                    if matches != 1 {
                        out.push(GraphViolation::EdgeShift {
                            vertex: vid(from),
                            across: eid(f),
                            edge: eid(e),
                            matches,
                        });
                    }
                }
            }
        }
        ValidationReport { violations: out }
    }
}
