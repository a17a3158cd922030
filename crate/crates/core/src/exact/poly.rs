use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::scalar::{format_scalar, Scalar};
use super::ExactError;

/// Exponent vector ordered graded-lexicographically: total degree first, then
/// the exponent of the first variable, and so on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree `degree` in `num_vars` variables, in
/// descending graded-lex order. Zero variables admit only the degree-0 monomial.
pub fn monomials_of_degree(num_vars: usize, degree: usize) -> Vec<Monomial> {
    fn fill(rest: usize, vars_left: usize, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if vars_left == 1 {
            prefix.push(rest as u32);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=rest).rev() {
            prefix.push(e as u32);
            fill(rest - e, vars_left - 1, prefix, out);
            prefix.pop();
        }
    }
    if num_vars == 0 {
        return if degree == 0 {
            vec![Monomial(Vec::new())]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    fill(
        degree,
        num_vars,
        &mut Vec::with_capacity(num_vars),
        &mut out,
    );
    out
}

/// Sparse multivariate polynomial with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPoly {
    num_vars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

impl GradedPoly {
    pub fn zero(num_vars: usize) -> Self {
        GradedPoly {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(num_vars);
        p.add_term(Monomial::one(num_vars), c);
        p
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, Scalar::one())
    }

    pub fn var(num_vars: usize, index: usize) -> Self {
        assert!(index < num_vars, "variable index {index} out of range");
        let mut e = vec![0; num_vars];
        e[index] = 1;
        let mut p = Self::zero(num_vars);
        p.add_term(Monomial(e), Scalar::one());
        p
    }

    /// The linear form `sum coeffs[i] * u_i`.
    pub fn linear(coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(Monomial(e), c.clone());
        }
        p
    }

    pub fn from_terms<I>(num_vars: usize, terms: I) -> Result<Self, ExactError>
    where
        I: IntoIterator<Item = (Vec<u32>, Scalar)>,
    {
        let mut p = Self::zero(num_vars);
        for (e, c) in terms {
            if e.len() != num_vars {
                return Err(ExactError::Dimension {
                    expected: num_vars,
                    found: e.len(),
                });
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        debug_assert_eq!(m.0.len(), self.num_vars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_vars);
        }
        GradedPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(self.num_vars);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    fn check_vars(&self, other: &Self) -> Result<(), ExactError> {
        if self.num_vars != other.num_vars {
            Err(ExactError::Dimension {
                expected: self.num_vars,
                found: other.num_vars,
            })
        } else {
            Ok(())
        }
    }

    pub fn arith(&self, other: &Self, op: PolyOp) -> Result<Self, ExactError> {
        self.check_vars(other)?;
        Ok(match op {
            PolyOp::Add => self.add_unchecked(other, false),
            PolyOp::Sub => self.add_unchecked(other, true),
            PolyOp::Mul => self.mul_unchecked(other),
        })
    }

    fn add_unchecked(&self, other: &Self, negate: bool) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), if negate { -c.clone() } else { c.clone() });
        }
        out
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.num_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        out
    }

    /// Replaces variable `i` by `images[i]`. Every image must be a linear form
    /// (no constant term, degree at most one) in a common set of variables.
    pub fn substitute(&self, images: &[GradedPoly]) -> Result<Self, ExactError> {
        if images.len() != self.num_vars {
            return Err(ExactError::Dimension {
                expected: self.num_vars,
                found: images.len(),
            });
        }
        let target_vars = match images.first() {
            Some(p) => p.num_vars,
            // No variables: the polynomial is a constant in zero variables.
            None => return Ok(self.clone()),
        };
        for (i, img) in images.iter().enumerate() {
            if img.num_vars != target_vars {
                return Err(ExactError::Dimension {
                    expected: target_vars,
                    found: img.num_vars,
                });
            }
            if !img.terms.keys().all(|m| m.degree() == 1) {
                return Err(ExactError::NonlinearImage(i));
            }
        }
        self.substitute_into(images, target_vars)
    }

    /// Substitution into a possibly zero-variable target. `target_vars` must
    /// match every image; with zero target variables all images are zero.
    pub fn substitute_into(
        &self,
        images: &[GradedPoly],
        target_vars: usize,
    ) -> Result<Self, ExactError> {
        if images.len() != self.num_vars {
            return Err(ExactError::Dimension {
                expected: self.num_vars,
                found: images.len(),
            });
        }
        if images.iter().any(|p| p.num_vars != target_vars) {
            return Err(ExactError::Dimension {
                expected: target_vars,
                found: images
                    .iter()
                    .find(|p| p.num_vars != target_vars)
                    .unwrap()
                    .num_vars,
            });
        }
        // Powers of each image are computed once per distinct exponent.
        let mut power_cache: Vec<Vec<GradedPoly>> = images
            .iter()
            .map(|_| vec![GradedPoly::one(target_vars)])
            .collect();
        let mut out = GradedPoly::zero(target_vars);
        for (m, c) in &self.terms {
            let mut term = GradedPoly::constant(target_vars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut power_cache[i];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap().mul_unchecked(&images[i]);
                    cache.push(next);
                }
                term = term.mul_unchecked(&cache[e as usize]);
                if term.is_zero() {
                    break;
                }
            }
            out = out.add_unchecked(&term, false);
        }
        Ok(out)
    }

    /// Evaluation at a rational point.
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.num_vars);
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }
}

impl Add for &GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        self.arith(rhs, PolyOp::Add)
            .expect("polynomials in different rings")
    }
}

impl Sub for &GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        self.arith(rhs, PolyOp::Sub)
            .expect("polynomials in different rings")
    }
}

impl Mul for &GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        self.arith(rhs, PolyOp::Mul)
            .expect("polynomials in different rings")
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        self.scale(&-Scalar::one())
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let negative = c < &Scalar::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            format!("u{}", i + 1)
                        } else {
                            format!("u{}^{}", i + 1, e)
                        }
                    })
                    .collect();
            if vars.is_empty() {
                write!(f, "{}", format_scalar(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", format_scalar(&abs), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::int;

    fn u(i: usize) -> GradedPoly {
        GradedPoly::var(2, i)
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&u(0) + &u(1)) * &(&u(0) - &u(1));
        let expected = &(&u(0) * &u(0)) - &(&u(1) * &u(1));
        assert_eq!(p, expected);
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn zero_absorbs_and_squares() {
        let p = &u(0) + &GradedPoly::constant(2, int(3));
        assert!((&p * &GradedPoly::zero(2)).is_zero());
        assert_eq!(GradedPoly::zero(2).degree(), None);
        let sq = &u(0) * &u(0);
        assert_eq!(sq.coeff(&Monomial::new(vec![2, 0])), int(1));
    }

    #[test]
    fn mismatched_rings_error() {
        let a = GradedPoly::var(2, 0);
        let b = GradedPoly::var(3, 0);
        assert!(matches!(
            a.arith(&b, PolyOp::Add),
            Err(ExactError::Dimension { .. })
        ));
    }

    #[test]
    fn substitution_examples() {
        let v1 = GradedPoly::var(1, 0);
        let p = &u(0) * &u(1);
        assert_eq!(p.substitute(&[v1.clone(), v1.clone()]).unwrap(), &v1 * &v1);

        let p = GradedPoly::var(1, 0);
        assert!(p.substitute(&[GradedPoly::zero(1)]).unwrap().is_zero());

        // (v1+v2)^2 + (v1-v2)^2 = 2 v1^2 + 2 v2^2
        let p = &(&u(0) * &u(0)) + &(&u(1) * &u(1));
        let images = [&u(0) + &u(1), &u(0) - &u(1)];
        let expected = (&(&u(0) * &u(0)) + &(&u(1) * &u(1))).scale(&int(2));
        assert_eq!(p.substitute(&images).unwrap(), expected);
    }

    #[test]
    fn substitution_errors() {
        let p = &u(0) * &u(1);
        assert!(matches!(
            p.substitute(&[u(0)]),
            Err(ExactError::Dimension { .. })
        ));
        let bad = &u(0) * &u(0);
        assert!(matches!(
            p.substitute(&[u(0), bad]),
            Err(ExactError::NonlinearImage(1))
        ));
        let affine = &u(0) + &GradedPoly::one(2);
        assert!(matches!(
            p.substitute(&[affine, u(1)]),
            Err(ExactError::NonlinearImage(0))
        ));
    }

    #[test]
    fn substitution_into_zero_space() {
        // Restriction to the zero subspace keeps constants and kills the rest.
        let p = &(&u(0) * &u(1)) + &GradedPoly::constant(2, int(5));
        let zero = GradedPoly::zero(0);
        let r = p.substitute_into(&[zero.clone(), zero], 0).unwrap();
        assert_eq!(r, GradedPoly::constant(0, int(5)));
    }

    #[test]
    fn monomial_enumeration() {
        let ms = monomials_of_degree(3, 2);
        assert_eq!(ms.len(), 6);
        assert_eq!(ms[0].exponents(), &[2, 0, 0]);
        assert_eq!(ms[5].exponents(), &[0, 0, 2]);
        assert_eq!(monomials_of_degree(0, 0).len(), 1);
        assert!(monomials_of_degree(0, 3).is_empty());
    }

    #[test]
    fn display_is_graded_lex() {
        let p = &(&(&u(0) * &u(0)).scale(&int(2)) - &u(1)) + &GradedPoly::one(2);
        assert_eq!(p.to_string(), "2*u1^2 - u2 + 1");
    }
}
