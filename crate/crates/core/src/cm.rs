//! Closed-form Poincaré series from the lambda vector, the Euler
//! characteristic of the Atiyah-Bredon sequence, numerator (Betti)
//! coefficients, and the combined "consistent with Cohen-Macaulay" verdict.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::scalar::{binomial, int};
use crate::exact::{Scalar, SeriesQ};
use crate::faces::{FaceComplex, FaceError, LambdaError, LambdaVector, RelationOptions};
use crate::gkm::{GkmError, GkmGraph, HilbertFunction};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CmError {
    #[error("face complex is built over a different graph")]
    GraphMismatch,
    #[error("betti numbers disagree between the binomial formula and the series numerator: {0}")]
    Internal(String),
    #[error(transparent)]
    Lambda(#[from] LambdaError),
    #[error(transparent)]
    Face(#[from] FaceError),
    #[error(transparent)]
    Gkm(#[from] GkmError),
}

/// `sum_i lambda_i (t^2/(1-t^2))^(r-i)`.
pub fn duflot_series(lambda: &LambdaVector) -> SeriesQ {
    let r = lambda.torus_rank();
    let b = lambda.min_orbit_dim();
    let base = SeriesQ::t2_over_one_minus_t2();
    (b..=r).fold(SeriesQ::zero(), |acc, i| {
        acc.add(
            &base
                .pow((r - i) as u32)
                .scale(&Scalar::from_integer(lambda.get(i).into())),
        )
    })
}

/// `sum_i (-1)^(i-b) lambda_i / (1-t^2)^(r-i)`: the alternating sum of the
/// Hilbert series of the relative terms, with the boundary-map degree
/// shifts removed.
pub fn ab_alternating_series(lambda: &LambdaVector) -> SeriesQ {
    let r = lambda.torus_rank();
    let b = lambda.min_orbit_dim();
    (b..=r).fold(SeriesQ::zero(), |acc, i| {
        let sign = if (i - b).is_multiple_of(2) { 1 } else { -1 };
        let c = Scalar::from_integer(lambda.get(i).into()) * int(sign);
        acc.add(&SeriesQ::inverse_power((r - i) as u32).scale(&c))
    })
}

pub fn euler_characteristic(lambda: &LambdaVector) -> i128 {
    let b = lambda.min_orbit_dim();
    (b..=lambda.torus_rank())
        .map(|i| {
            let c = lambda.get(i) as i128;
            if (i - b).is_multiple_of(2) {
                c
            } else {
                -c
            }
        })
        .sum()
}

pub fn euler_identity(lambda: &LambdaVector) -> bool {
    euler_characteristic(lambda) == 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BettiKind {
    /// `b = 0`: the coefficients are the even Betti numbers.
    Betti,
    /// `b > 0`: numerator coefficients of the Poincaré series.
    NumeratorCoefficients,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiVector {
    pub kind: BettiKind,
    /// `c_0 .. c_{r-b}` with `P(t) (1-t^2)^(r-b) = sum_i c_i t^(2i)`.
    pub coefficients: Vec<Scalar>,
}

impl BettiVector {
    pub fn is_palindromic(&self) -> bool {
        self.coefficients.iter().eq(self.coefficients.iter().rev())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coefficients.iter().all(|c| !c.is_negative())
    }
}

/// `b_{2i} = sum_{j >= i} (-1)^(j-i) C(j, i) lambda_j`, the `b = 0` formula.
pub fn betti_binomial(lambda: &LambdaVector) -> Vec<Scalar> {
    let r = lambda.torus_rank();
    (0..=r)
        .map(|i| {
            (i..=r).fold(Scalar::zero(), |acc, j| {
                let term = Scalar::from_integer(binomial(j as u64, i as u64) * lambda.get(j));
                if (j - i) % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            })
        })
        .collect()
}

/// Numerator coefficients of the Duflot series over `(1-t^2)^(r-b)`.
pub fn betti_from_lambda(lambda: &LambdaVector) -> Result<BettiVector, CmError> {
    let k = lambda.torus_rank() - lambda.min_orbit_dim();
    let numerator = duflot_series(lambda)
        .numerator_over_power(k as u32)
        .expect("the Duflot series has denominator power at most r - b");
    let mut coefficients = vec![Scalar::zero(); k + 1];
    for (deg, c) in numerator.iter().enumerate() {
        if deg % 2 == 1 || deg / 2 > k {
            if !c.is_zero() {
                return Err(CmError::Internal(format!(
                    "unexpected numerator term of degree {deg}"
                )));
            }
            continue;
        }
        coefficients[deg / 2] = c.clone();
    }
    if lambda.min_orbit_dim() == 0 {
        // The binomial formula yields the coefficients in reverse order; the
        // two agree as stated only under Poincaré duality.
        let binom = betti_binomial(lambda);
        if !binom.iter().rev().eq(coefficients.iter()) {
            return Err(CmError::Internal(format!("{binom:?} vs {coefficients:?}")));
        }
        return Ok(BettiVector {
            kind: BettiKind::Betti,
            coefficients,
        });
    }
    Ok(BettiVector {
        kind: BettiKind::NumeratorCoefficients,
        coefficients,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmFlags {
    pub series_match: bool,
    pub ab_match: bool,
    pub euler_identity: bool,
    pub palindromic: bool,
    pub nonnegative: bool,
    pub thom_span: bool,
    pub relations_ok: bool,
}

impl CmFlags {
    pub fn named(&self) -> [(&'static str, bool); 7] {
        [
            ("series_match", self.series_match),
            ("ab_match", self.ab_match),
            ("euler_identity", self.euler_identity),
            ("palindromic", self.palindromic),
            ("nonnegative", self.nonnegative),
            ("thom_span", self.thom_span),
            ("relations_ok", self.relations_ok),
        ]
    }

    pub fn all(&self) -> bool {
        self.named().iter().all(|(_, ok)| *ok)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagFailure {
    pub flag: String,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "CONSISTENT_CM")]
    ConsistentCm,
    #[serde(rename = "CONSISTENT_EQUIVARIANTLY_FORMAL")]
    ConsistentEquivariantlyFormal,
    #[serde(rename = "INCONSISTENT")]
    Inconsistent(Vec<FlagFailure>),
}

impl Verdict {
    pub fn is_consistent(&self) -> bool {
        !matches!(self, Verdict::Inconsistent(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::ConsistentCm => write!(f, "CONSISTENT_CM"),
            Verdict::ConsistentEquivariantlyFormal => write!(f, "CONSISTENT_EQUIVARIANTLY_FORMAL"),
            Verdict::Inconsistent(failures) => {
                let names: Vec<&str> = failures.iter().map(|x| x.flag.as_str()).collect();
                write!(f, "INCONSISTENT({})", names.join(", "))
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct CmVerdict {
    pub max_degree: usize,
    pub hilbert_from_graph: HilbertFunction,
    /// Even-degree coefficients of the Duflot series, indexed by polynomial degree.
    pub hilbert_from_series: Vec<Scalar>,
    pub lambda: LambdaVector,
    pub duflot: SeriesQ,
    pub ab_alternating: SeriesQ,
    pub betti: BettiVector,
    pub flags: CmFlags,
    pub verdict: Verdict,
    /// `2r - b`.
    pub implied_manifold_dim: usize,
    /// `r - b`.
    pub krull_dim: usize,
}

pub fn cm_verdict(
    graph: &GkmGraph,
    complex: &FaceComplex,
    max_degree: usize,
    relation_options: RelationOptions,
) -> Result<CmVerdict, CmError> {
    if complex.graph() != graph {
        return Err(CmError::GraphMismatch);
    }
    complex.require_valid()?;
    let r = graph.torus_rank();
    let b = graph.min_orbit_dim();
    let lambda = complex.lambda_vector()?;
    let duflot = duflot_series(&lambda);
    let ab = ab_alternating_series(&lambda);
    let betti = betti_from_lambda(&lambda)?;
    let hilbert = graph.hilbert_unchecked(max_degree)?;
    let expansion = duflot.expand(2 * max_degree);
    let hilbert_from_series: Vec<Scalar> = expansion.iter().step_by(2).cloned().collect();
    let span = complex.thom_spanning_test(max_degree)?;
    let relations = complex.verify_face_ring_relations(relation_options)?;

    let mut failures = Vec::new();
    let mut fail = |flag: &str, witness: String| {
        failures.push(FlagFailure {
            flag: flag.into(),
            witness,
        });
    };

    let series_mismatch = hilbert
        .values
        .iter()
        .zip(&hilbert_from_series)
        .position(|(&h, s)| Scalar::from_integer((h as u64).into()) != *s);
    let odd_nonzero = expansion.iter().skip(1).step_by(2).any(|c| !c.is_zero());
    let series_match = series_mismatch.is_none() && !odd_nonzero;
    if let Some(d) = series_mismatch {
        fail(
            "series_match",
            format!(
                "polynomial degree {d}: graph gives {}, series gives {}",
                hilbert.values[d], hilbert_from_series[d]
            ),
        );
    } else if odd_nonzero {
        fail("series_match", "series has odd-degree terms".into());
    }

    let ab_match = duflot == ab;
    if !ab_match {
        fail("ab_match", format!("{duflot} vs {ab}"));
    }
    let euler = euler_identity(&lambda);
    if !euler {
        fail(
            "euler_identity",
            format!("alternating sum {}", euler_characteristic(&lambda)),
        );
    }
    let palindromic = betti.is_palindromic();
    let nonnegative = betti.is_nonnegative();
    let coeffs: Vec<String> = betti.coefficients.iter().map(ToString::to_string).collect();
    if !palindromic {
        fail(
            "palindromic",
            format!("coefficients [{}]", coeffs.join(", ")),
        );
    }
    if !nonnegative {
        fail(
            "nonnegative",
            format!("coefficients [{}]", coeffs.join(", ")),
        );
    }
    if let Some(s) = span.degrees.iter().find(|s| s.span_dim != s.target) {
        fail(
            "thom_span",
            format!(
                "degree {}: span {} vs algebra {}",
                s.degree, s.span_dim, s.target
            ),
        );
    }
    let relations_ok = relations.holds();
    if !relations_ok {
        let pair = relations
            .pairs
            .iter()
            .find(|p| !p.residual_zero)
            .expect("some residual is nonzero");
        fail(
            "relations_ok",
            format!("faces {} and {}", pair.first, pair.second),
        );
    }

    let flags = CmFlags {
        series_match,
        ab_match,
        euler_identity: euler,
        palindromic,
        nonnegative,
        thom_span: span.matches,
        relations_ok,
    };
    let verdict = if !failures.is_empty() {
        Verdict::Inconsistent(failures)
    } else if b == 0 {
        Verdict::ConsistentEquivariantlyFormal
    } else {
        Verdict::ConsistentCm
    };
    Ok(CmVerdict {
        max_degree,
        hilbert_from_graph: hilbert,
        hilbert_from_series,
        lambda,
        duflot,
        ab_alternating: ab,
        betti,
        flags,
        verdict,
        implied_manifold_dim: 2 * r - b,
        krull_dim: r - b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(r: usize, b: usize, c: &[u64]) -> LambdaVector {
        LambdaVector::new(r, b, c.to_vec()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn duflot_examples() {
        assert_eq!(
            duflot_series(&lam(3, 0, &[4, 6, 4, 1])),
            SeriesQ::new(ints(&[1, 0, 1, 0, 1, 0, 1]), 3)
        );
        assert_eq!(
            duflot_series(&lam(1, 0, &[2, 1])),
            SeriesQ::new(ints(&[1, 0, 1]), 1)
        );
        assert_eq!(
            duflot_series(&lam(3, 1, &[3, 3, 1])),
            SeriesQ::new(ints(&[1, 0, 1, 0, 1]), 2)
        );
    }

    #[test]
    fn alternating_examples() {
        assert_eq!(
            ab_alternating_series(&lam(3, 0, &[4, 6, 4, 1])),
            SeriesQ::new(ints(&[1, 0, 1, 0, 1, 0, 1]), 3)
        );
        assert_eq!(
            ab_alternating_series(&lam(1, 0, &[2, 1])),
            SeriesQ::new(ints(&[1, 0, 1]), 1)
        );
        assert_eq!(
            ab_alternating_series(&lam(3, 1, &[3, 3, 1])),
            SeriesQ::new(ints(&[1, 0, 1, 0, 1]), 2)
        );
    }

    #[test]
    fn betti_examples() {
        let b = betti_from_lambda(&lam(3, 0, &[4, 6, 4, 1])).unwrap();
        assert_eq!(b.coefficients, ints(&[1, 1, 1, 1]));
        assert_eq!(b.kind, BettiKind::Betti);
        assert_eq!(
            betti_binomial(&lam(3, 0, &[4, 6, 4, 1])),
            ints(&[1, 1, 1, 1])
        );
        assert_eq!(
            betti_from_lambda(&lam(1, 0, &[2, 1])).unwrap().coefficients,
            ints(&[1, 1])
        );
        let c = betti_from_lambda(&lam(3, 1, &[3, 3, 1])).unwrap();
        assert_eq!(c.coefficients, ints(&[1, 1, 1]));
        assert_eq!(c.kind, BettiKind::NumeratorCoefficients);
    }

    #[test]
    fn euler_examples() {
        assert!(euler_identity(&lam(3, 0, &[4, 6, 4, 1])));
        assert!(euler_identity(&lam(3, 1, &[3, 3, 1])));
        assert!(euler_identity(&lam(2, 0, &[2, 2, 1])));
        assert!(!euler_identity(&lam(1, 0, &[3, 1])));
    }

    #[test]
    fn lambda_validation_and_ordering() {
        assert!(matches!(
            LambdaVector::new(2, 0, vec![2, 2, 2]),
            Err(LambdaError::TopCount(2))
        ));
        let a = LambdaVector::from_pairs(3, 0, &[(3, 1), (0, 4), (2, 4), (1, 6)]).unwrap();
        assert_eq!(a, lam(3, 0, &[4, 6, 4, 1]));
        assert!(LambdaVector::from_pairs(3, 0, &[(3, 1), (3, 1), (2, 4), (1, 6)]).is_err());
    }

    #[test]
    fn non_palindromic_lambda_still_consistent_internally() {
        // The corrupted tetrahedron count: methods agree, duality fails.
        let b = betti_from_lambda(&lam(3, 0, &[4, 6, 3, 1])).unwrap();
        assert_eq!(b.coefficients, ints(&[1, 0, 3, 0]));
        assert!(!b.is_palindromic());
    }
}
