use std::collections::HashMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{GkmError, GkmGraph};
use crate::exact::{monomials_of_degree, GradedPoly, Monomial, RationalMatrix, Scalar};

/// One polynomial per vertex, all homogeneous of a common degree (or zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexTuple {
    values: Vec<GradedPoly>,
}

impl VertexTuple {
    pub fn new(graph: &GkmGraph, values: Vec<GradedPoly>) -> Result<Self, GkmError> {
        if values.len() != graph.num_vertices() {
            return Err(GkmError::Tuple(format!(
                "{} entries for {} vertices",
                values.len(),
                graph.num_vertices()
            )));
        }
        let k = graph.valence();
        if values.iter().any(|p| p.num_vars() != k) {
            return Err(GkmError::Tuple(format!("entries must have {k} variables")));
        }
        let mut degree = None;
        for p in &values {
            if !p.is_homogeneous() {
                return Err(GkmError::Tuple(format!("entry {p} is not homogeneous")));
            }
            match (degree, p.degree()) {
                (_, None) => {}
                (None, d) => degree = d,
                (Some(a), Some(b)) if a != b => {
                    return Err(GkmError::Tuple(format!("mixed degrees {a} and {b}")));
                }
                _ => {}
            }
        }
        Ok(VertexTuple { values })
    }

    pub fn zero(graph: &GkmGraph) -> Self {
        VertexTuple {
            values: vec![GradedPoly::zero(graph.valence()); graph.num_vertices()],
        }
    }

    pub fn one(graph: &GkmGraph) -> Self {
        VertexTuple {
            values: vec![GradedPoly::one(graph.valence()); graph.num_vertices()],
        }
    }

    pub fn constant(graph: &GkmGraph, c: Scalar) -> Self {
        VertexTuple {
            values: vec![GradedPoly::constant(graph.valence(), c); graph.num_vertices()],
        }
    }

    pub fn values(&self) -> &[GradedPoly] {
        &self.values
    }

    pub fn value(&self, vertex: usize) -> &GradedPoly {
        &self.values[vertex]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(GradedPoly::is_zero)
    }

    /// Common degree, `None` for the zero tuple.
    pub fn degree(&self) -> Option<usize> {
        self.values.iter().find_map(GradedPoly::degree)
    }

    /// Pointwise product; the product of homogeneous tuples is homogeneous.
    pub fn mul(&self, other: &Self) -> Self {
        VertexTuple {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    /// Pointwise sum. Both tuples must have the same degree unless one is zero.
    pub fn add(&self, other: &Self) -> Result<Self, GkmError> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GkmError> {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Result<Self, GkmError> {
        if let (Some(a), Some(b)) = (self.degree(), other.degree()) {
            if a != b {
                return Err(GkmError::Tuple(format!("cannot add degrees {a} and {b}")));
            }
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| if negate { a - b } else { a + b })
            .collect();
        Ok(VertexTuple { values })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        VertexTuple {
            values: self.values.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    /// Coefficient vector in the degree-`d` unknown layout of the graph:
    /// vertex-major, then descending graded-lex monomials.
    pub fn to_coefficients(&self, degree: usize) -> Vec<Scalar> {
        let k = self.values.first().map(GradedPoly::num_vars).unwrap_or(0);
        let monomials = monomials_of_degree(k, degree);
        self.values
            .iter()
            .flat_map(|p| monomials.iter().map(move |m| p.coeff(m)))
            .collect()
    }

    pub fn from_coefficients(graph: &GkmGraph, degree: usize, coeffs: &[Scalar]) -> Self {
        let k = graph.valence();
        let monomials = monomials_of_degree(k, degree);
        let per = monomials.len();
        assert_eq!(coeffs.len(), per * graph.num_vertices());
        let values = (0..graph.num_vertices())
            .map(|v| {
                let mut p = GradedPoly::zero(k);
                for (m, c) in monomials.iter().zip(&coeffs[v * per..(v + 1) * per]) {
                    p.add_term(m.clone(), c.clone());
                }
                p
            })
            .collect();
        VertexTuple { values }
    }
}

/// Graded dimensions by polynomial degree (cohomological degree is twice
/// the index).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HilbertFunction {
    pub values: Vec<usize>,
}

impl HilbertFunction {
    /// Values indexed by cohomological degree, with zeros in odd degrees.
    pub fn cohomological(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(2 * self.values.len());
        for (i, &v) in self.values.iter().enumerate() {
            out.push(v);
            if i + 1 < self.values.len() {
                out.push(0);
            }
        }
        out
    }
}

pub(crate) fn serial_requested() -> bool {
    std::env::var("GKM_CM_SERIAL").is_ok_and(|v| !v.is_empty() && v != "0")
}

impl GkmGraph {
    fn check_tuple(&self, tuple: &VertexTuple) -> Result<(), GkmError> {
        if tuple.values.len() != self.num_vertices()
            || tuple.values.iter().any(|p| p.num_vars() != self.valence())
        {
            return Err(GkmError::Tuple(
                "tuple does not belong to this graph".into(),
            ));
        }
        Ok(())
    }

    /// Both endpoint values of `tuple` restricted to the isotropy algebra of
    /// the edge, in its canonical basis.
    pub fn restriction_to_edge(
        &self,
        tuple: &VertexTuple,
        edge_id: &str,
    ) -> Result<(GradedPoly, GradedPoly), GkmError> {
        let e = self
            .edge_position(edge_id)
            .ok_or_else(|| GkmError::UnknownEdge(edge_id.into()))?;
        self.restrict_at(tuple, e)
    }

    pub(crate) fn restrict_at(
        &self,
        tuple: &VertexTuple,
        e: usize,
    ) -> Result<(GradedPoly, GradedPoly), GkmError> {
        self.check_tuple(tuple)?;
        let geom = self
            .geometry(e)
            .ok_or_else(|| GkmError::DegenerateEdge(self.edges[e].id.clone()))?;
        let (u, v) = self.ends[e];
        let m = geom.isotropy.num_rows();
        let ru = tuple.values[u].substitute_into(&geom.restrict_u, m)?;
        let rv = tuple.values[v].substitute_into(&geom.restrict_v, m)?;
        Ok((ru, rv))
    }

    /// Ids of the edges whose restriction condition fails; degenerate edges
    /// always count as failures.
    pub fn failing_edges(&self, tuple: &VertexTuple) -> Vec<String> {
        (0..self.edges.len())
            .filter(|&e| match self.restrict_at(tuple, e) {
                Ok((a, b)) => a != b,
                Err(_) => true,
            })
            .map(|e| self.edges[e].id.clone())
            .collect()
    }

    pub fn is_in_gkm_algebra(&self, tuple: &VertexTuple) -> bool {
        self.failing_edges(tuple).is_empty()
    }

    fn require_valid(&self) -> Result<(), GkmError> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(GkmError::Invalid(report))
        }
    }

    /// Linear system whose kernel is the degree-`d` part of the GKM algebra.
    /// Columns follow [`VertexTuple::to_coefficients`]; one row per edge and
    /// monomial on the edge isotropy.
    pub fn degree_system(&self, degree: usize) -> Result<RationalMatrix, GkmError> {
        let k = self.valence();
        let monomials = monomials_of_degree(k, degree);
        let per = monomials.len();
        let cols = per * self.num_vertices();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for e in 0..self.edges.len() {
            let geom = self
                .geometry(e)
                .ok_or_else(|| GkmError::DegenerateEdge(self.edges[e].id.clone()))?;
            let m = geom.isotropy.num_rows();
            let targets = monomials_of_degree(m, degree);
            let index: HashMap<&Monomial, usize> =
                targets.iter().enumerate().map(|(i, t)| (t, i)).collect();
            let mut block = vec![vec![Scalar::zero(); cols]; targets.len()];
            let (u, v) = self.ends[e];
            for (end, images, sign) in [(u, &geom.restrict_u, 1i64), (v, &geom.restrict_v, -1)] {
                for (j, mono) in monomials.iter().enumerate() {
                    let mut p = GradedPoly::zero(k);
                    p.add_term(mono.clone(), Scalar::one());
                    let restricted = p.substitute_into(images, m)?;
                    for (tm, c) in restricted.terms() {
                        let row = index[tm];
                        block[row][end * per + j] += c * Scalar::from_integer(sign.into());
                    }
                }
            }
            rows.extend(block.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())));
        }
        Ok(RationalMatrix::from_rows(cols, rows)?)
    }

    /// Dimensions of the degree `0..=max_degree` parts without validating the
    /// graph first. Every edge must have non-degenerate isotropy data.
    pub fn hilbert_unchecked(&self, max_degree: usize) -> Result<HilbertFunction, GkmError> {
        let solve = |d: usize| -> Result<usize, GkmError> {
            let system = self.degree_system(d)?;
            Ok(system.num_cols() - system.rank())
        };
        let values: Result<Vec<usize>, GkmError> = if serial_requested() {
            (0..=max_degree).map(solve).collect()
        } else {
            (0..=max_degree).into_par_iter().map(solve).collect()
        };
        Ok(HilbertFunction { values: values? })
    }

    pub fn gkm_hilbert(&self, max_degree: usize) -> Result<HilbertFunction, GkmError> {
        self.require_valid()?;
        self.hilbert_unchecked(max_degree)
    }

    /// A basis of the degree-`d` part of the GKM algebra.
    pub fn gkm_basis(&self, degree: usize) -> Result<Vec<VertexTuple>, GkmError> {
        self.require_valid()?;
        self.basis_unchecked(degree)
    }

    pub(crate) fn basis_unchecked(&self, degree: usize) -> Result<Vec<VertexTuple>, GkmError> {
        let (_, null) = self.degree_system(degree)?.rank_and_nullspace();
        Ok(null
            .iter()
            .map(|c| VertexTuple::from_coefficients(self, degree, c))
            .collect())
    }
}
