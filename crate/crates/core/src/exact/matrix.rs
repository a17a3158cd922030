use std::fmt;

use num_traits::{One, Zero};

use super::scalar::{format_scalar, Scalar};
use super::ExactError;

/// Dense row-major matrix over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self, ExactError> {
        if data.len() != rows * cols {
            return Err(ExactError::Dimension {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(RationalMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Builds a matrix from row vectors. `cols` fixes the width so that a
    /// matrix with no rows still knows its ambient dimension.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self, ExactError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(ExactError::Dimension {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(RationalMatrix {
            rows: n,
            cols,
            data,
        })
    }

    pub fn from_i64_rows(cols: usize, rows: &[&[i64]]) -> Result<Self, ExactError> {
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| super::scalar::int(x)).collect())
                .collect(),
        )
    }

    pub fn num_rows(&self) -> usize {
        self.rows
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::Dimension {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|r| dot(self.row(r), v)).collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(p) = (lead..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(lead, p);
            let inv = m.get(lead, c).recip();
            for j in c..m.cols {
                let v = m.get(lead, j) * &inv;
                m.set(lead, j, v);
            }
            for r in 0..m.rows {
                if r == lead {
                    continue;
                }
                let factor = m.get(r, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let sub = &factor * m.get(lead, j);
                    if !sub.is_zero() {
                        let idx = r * m.cols + j;
                        m.data[idx] -= sub;
                    }
                }
            }
            pivots.push(c);
            lead += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Rank together with a basis of the right null space `{x : self * x = 0}`.
    /// Basis vectors have a 1 in one free column and zeros in the others.
    pub fn rank_and_nullspace(&self) -> (usize, Vec<Vec<Scalar>>) {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let basis = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[free] = Scalar::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(row, free).clone();
                }
                v
            })
            .collect();
        (pivots.len(), basis)
    }

    /// Canonical basis of the row space: the nonzero rows of the reduced
    /// echelon form.
    pub fn row_space(&self) -> Self {
        let (r, pivots) = self.rref();
        RationalMatrix {
            rows: pivots.len(),
            cols: self.cols,
            data: r.data[..pivots.len() * self.cols].to_vec(),
        }
    }

    pub fn stack(&self, other: &Self) -> Result<Self, ExactError> {
        if self.cols != other.cols {
            return Err(ExactError::Dimension {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(RationalMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Whether every row of `other` lies in the row space of `self`.
    pub fn row_space_contains(&self, other: &Self) -> Result<bool, ExactError> {
        let both = self.stack(other)?;
        Ok(both.rank() == self.rank())
    }

    /// Coordinates of `v` with respect to the rows of `self`, which must be
    /// linearly independent. `None` if `v` is outside the row space.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.cols);
        // Solve c * self = v, i.e. self^T c = v, via the augmented system.
        let mut aug = Self::zeros(self.cols, self.rows + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(c, r, self.get(r, c).clone());
            }
        }
        for (c, x) in v.iter().enumerate() {
            aug.set(c, self.rows, x.clone());
        }
        let (red, pivots) = aug.rref();
        if pivots.contains(&self.rows) {
            return None;
        }
        let mut coords = vec![Scalar::zero(); self.rows];
        for (row, &p) in pivots.iter().enumerate() {
            coords[p] = red.get(row, self.rows).clone();
        }
        Some(coords)
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

/// Canonical basis (reduced echelon rows) of the intersection of the row
/// spans of `a` and `b`.
pub fn subspace_intersection(
    a: &RationalMatrix,
    b: &RationalMatrix,
) -> Result<RationalMatrix, ExactError> {
    if a.cols != b.cols {
        return Err(ExactError::Dimension {
            expected: a.cols,
            found: b.cols,
        });
    }
    let a = a.row_space();
    let b = b.row_space();
    // x*a = y*b  <=>  [a^T | -b^T] (x, y)^T = 0
    let n = a.rows + b.rows;
    let mut system = RationalMatrix::zeros(a.cols, n);
    for c in 0..a.cols {
        for r in 0..a.rows {
            system.set(c, r, a.get(r, c).clone());
        }
        for r in 0..b.rows {
            system.set(c, a.rows + r, -b.get(r, c).clone());
        }
    }
    let (_, null) = system.rank_and_nullspace();
    let vectors: Vec<Vec<Scalar>> = null
        .iter()
        .map(|xy| {
            (0..a.cols)
                .map(|c| (0..a.rows).fold(Scalar::zero(), |acc, r| acc + &xy[r] * a.get(r, c)))
                .collect()
        })
        .collect();
    Ok(RationalMatrix::from_rows(a.cols, vectors)?.row_space())
}

/// Canonical basis of the sum of two row spans.
pub fn subspace_sum(a: &RationalMatrix, b: &RationalMatrix) -> Result<RationalMatrix, ExactError> {
    Ok(a.stack(b)?.row_space())
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(format_scalar).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}


/// A growing set of vectors kept in reduced echelon form, for rank
/// computations where vectors arrive one at a time.
#[derive(Debug, Clone, Default)]
pub struct EchelonBasis {
    len: usize,
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl EchelonBasis {
    pub fn new(len: usize) -> Self {
        EchelonBasis {
            len,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [Scalar]) {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let factor = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.len);
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        v.iter_mut().for_each(|x| *x *= &inv);
        for (_, row) in &mut self.rows {
            if row[p].is_zero() {
                continue;
            }
            let factor = row[p].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Zero::is_zero)
    }

    pub fn vectors(&self) -> impl Iterator<Item = &Vec<Scalar>> {
        self.rows.iter().map(|(_, r)| r)
    }
}
