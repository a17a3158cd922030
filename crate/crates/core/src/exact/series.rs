use std::fmt;

use num_traits::{One, Zero};

use super::scalar::{binomial, format_scalar, Scalar};
use super::ExactError;

/// A rational function `numerator(t) / (1 - t^2)^denom_power`.
///
/// Kept in canonical form: the numerator is not divisible by `1 - t^2`
/// unless the denominator power is already zero, and carries no trailing
/// zero coefficients.
#[derive(Debug, Clone)]
pub struct SeriesQ {
    numerator: Vec<Scalar>,
    denom_power: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
}

impl SeriesQ {
    pub fn new(numerator: Vec<Scalar>, denom_power: u32) -> Self {
        let mut s = SeriesQ {
            numerator,
            denom_power,
        };
        s.canonicalize();
        s
    }

    pub fn zero() -> Self {
        Self::new(Vec::new(), 0)
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(vec![c], 0)
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    /// `t^2 / (1 - t^2)`.
    pub fn t2_over_one_minus_t2() -> Self {
        Self::new(vec![Scalar::zero(), Scalar::zero(), Scalar::one()], 1)
    }

    /// `1 / (1 - t^2)^k`.
    pub fn inverse_power(k: u32) -> Self {
        Self::new(vec![Scalar::one()], k)
    }

    /// Builds `numerator / denominator`, where the denominator must be a
    /// nonzero rational multiple of a power of `1 - t^2`.
    pub fn from_fraction(
        numerator: Vec<Scalar>,
        denominator: Vec<Scalar>,
    ) -> Result<Self, ExactError> {
        let mut den = trimmed(denominator);
        let mut k = 0;
        while den.len() > 1 {
            match divide_by_one_minus_t2(&den) {
                Some(q) => {
                    den = q;
                    k += 1;
                }
                None => return Err(ExactError::Denominator),
            }
        }
        let c = match den.first() {
            Some(c) if !c.is_zero() => c.clone(),
            _ => return Err(ExactError::Denominator),
        };
        let inv = c.recip();
        Ok(Self::new(
            numerator.into_iter().map(|x| x * &inv).collect(),
            k,
        ))
    }

    pub fn numerator(&self) -> &[Scalar] {
        &self.numerator
    }

    pub fn denom_power(&self) -> u32 {
        self.denom_power
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    fn canonicalize(&mut self) {
        self.numerator = trimmed(std::mem::take(&mut self.numerator));
        if self.numerator.is_empty() {
            self.denom_power = 0;
            return;
        }
        while self.denom_power > 0 {
            match divide_by_one_minus_t2(&self.numerator) {
                Some(q) => {
                    self.numerator = q;
                    self.denom_power -= 1;
                }
                None => break,
            }
        }
    }

    /// The numerator obtained when the series is written over
    /// `(1 - t^2)^power`; `None` if `power` is below the canonical power.
    pub fn numerator_over_power(&self, power: u32) -> Option<Vec<Scalar>> {
        if power < self.denom_power {
            return None;
        }
        Some(upoly_mul(
            &self.numerator,
            &one_minus_t2_pow(power - self.denom_power),
        ))
    }

    pub fn arith(&self, other: &Self, op: SeriesOp) -> Self {
        match op {
            SeriesOp::Add | SeriesOp::Sub => {
                let k = self.denom_power.max(other.denom_power);
                let a = self.numerator_over_power(k).unwrap();
                let mut b = other.numerator_over_power(k).unwrap();
                if op == SeriesOp::Sub {
                    b.iter_mut().for_each(|x| *x = -x.clone());
                }
                Self::new(upoly_add(&a, &b), k)
            }
            SeriesOp::Mul => Self::new(
                upoly_mul(&self.numerator, &other.numerator),
                self.denom_power + other.denom_power,
            ),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.arith(other, SeriesOp::Add)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.arith(other, SeriesOp::Sub)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.arith(other, SeriesOp::Mul)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(
            self.numerator.iter().map(|x| x * c).collect(),
            self.denom_power,
        )
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Equality as rational functions, by cross-multiplying numerators.
    pub fn equals(&self, other: &Self) -> bool {
        let k = self.denom_power.max(other.denom_power);
        trimmed(self.numerator_over_power(k).unwrap())
            == trimmed(other.numerator_over_power(k).unwrap())
    }

    /// Power-series coefficients of `t^0 .. t^max_degree`.
    pub fn expand(&self, max_degree: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); max_degree + 1];
        let k = self.denom_power as u64;
        // 1/(1-t^2)^k = sum_j C(j+k-1, k-1) t^(2j)
        let kernel: Vec<Scalar> = (0..=max_degree / 2)
            .map(|j| {
                if k == 0 {
                    if j == 0 {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    }
                } else {
                    Scalar::from_integer(binomial(j as u64 + k - 1, k - 1))
                }
            })
            .collect();
        for (i, a) in self.numerator.iter().enumerate() {
            if i > max_degree || a.is_zero() {
                continue;
            }
            for (j, c) in kernel.iter().enumerate() {
                let deg = i + 2 * j;
                if deg > max_degree {
                    break;
                }
                out[deg] += a * c;
            }
        }
        out
    }
}

impl PartialEq for SeriesQ {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl Eq for SeriesQ {}

impl fmt::Display for SeriesQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.numerator.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coeff = format_scalar(c);
            parts.push(match i {
                0 => coeff,
                _ if c.is_one() => format!("t^{i}"),
                _ => format!("{coeff}*t^{i}"),
            });
        }
        let num = if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        };
        match self.denom_power {
            0 => write!(f, "{num}"),
            1 => write!(f, "({num})/(1-t^2)"),
            k => write!(f, "({num})/(1-t^2)^{k}"),
        }
    }
}

fn trimmed(mut v: Vec<Scalar>) -> Vec<Scalar> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

pub(crate) fn upoly_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let n = a.len().max(b.len());
    let zero = Scalar::zero();
    (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero))
        .collect()
}

pub(crate) fn upoly_mul(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub(crate) fn one_minus_t2_pow(k: u32) -> Vec<Scalar> {
    let base = vec![Scalar::one(), Scalar::zero(), -Scalar::one()];
    (0..k).fold(vec![Scalar::one()], |acc, _| upoly_mul(&acc, &base))
}

/// Exact quotient by `1 - t^2`, or `None` if it does not divide.
fn divide_by_one_minus_t2(n: &[Scalar]) -> Option<Vec<Scalar>> {
    let n = trimmed(n.to_vec());
    if n.len() < 3 {
        return None;
    }
    // n_j = q_j - q_{j-2}
    let qlen = n.len() - 2;
    let mut q: Vec<Scalar> = Vec::with_capacity(qlen);
    for j in 0..qlen {
        let prev = if j >= 2 {
            q[j - 2].clone()
        } else {
            Scalar::zero()
        };
        q.push(&n[j] + prev);
    }
    let back = upoly_mul(&q, &[Scalar::one(), Scalar::zero(), -Scalar::one()]);
    if trimmed(back) == n {
        Some(q)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::int;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn sum_of_equal_denominators() {
        let a = SeriesQ::inverse_power(1);
        let s = a.add(&a);
        assert_eq!(s.numerator(), &ints(&[2])[..]);
        assert_eq!(s.denom_power(), 1);
    }

    #[test]
    fn common_factor_cancels() {
        let a = SeriesQ::new(ints(&[1, 0, 1]), 1);
        let b = SeriesQ::new(ints(&[1, 0, 0, 0, -1]), 2);
        assert!(a.equals(&b));
        assert_eq!(b.denom_power(), 1);
        assert_eq!(b.numerator(), &ints(&[1, 0, 1])[..]);
    }

    #[test]
    fn cohomogeneity_one_sum() {
        // 2 t^2/(1-t^2) + 1 = (1+t^2)/(1-t^2)
        let s = SeriesQ::t2_over_one_minus_t2()
            .scale(&int(2))
            .add(&SeriesQ::one());
        assert_eq!(s, SeriesQ::new(ints(&[1, 0, 1]), 1));
        // cross-multiplication check: (2t^2 + (1-t^2)) * (1-t^2) == (1+t^2)(1-t^2)
        assert_eq!(s.numerator_over_power(1).unwrap(), ints(&[1, 0, 1]));
    }

    #[test]
    fn expansions() {
        assert_eq!(
            SeriesQ::inverse_power(2).expand(8),
            ints(&[1, 0, 2, 0, 3, 0, 4, 0, 5])
        );
        assert_eq!(
            SeriesQ::new(ints(&[1, 0, 1, 0, 1, 0, 1]), 3).expand(6),
            ints(&[1, 0, 4, 0, 10, 0, 20])
        );
        assert_eq!(
            SeriesQ::new(ints(&[1, 0, 0, 0, 1]), 2).expand(8),
            ints(&[1, 0, 2, 0, 4, 0, 6, 0, 8])
        );
        assert_eq!(
            SeriesQ::new(ints(&[3, 1]), 0).expand(3),
            ints(&[3, 1, 0, 0])
        );
    }

    #[test]
    fn foreign_denominators_rejected() {
        assert!(matches!(
            SeriesQ::from_fraction(ints(&[1]), ints(&[1, -1])),
            Err(ExactError::Denominator)
        ));
        assert!(SeriesQ::from_fraction(ints(&[1]), ints(&[])).is_err());
        let s = SeriesQ::from_fraction(ints(&[2]), ints(&[2, 0, -2])).unwrap();
        assert_eq!(s, SeriesQ::inverse_power(1));
    }

    #[test]
    fn zero_is_canonical() {
        let z = SeriesQ::new(ints(&[0, 0]), 3);
        assert!(z.is_zero());
        assert_eq!(z.denom_power(), 0);
        assert_eq!(z, SeriesQ::zero());
    }

    #[test]
    fn display() {
        assert_eq!(
            SeriesQ::new(ints(&[1, 0, 0, 0, 1]), 2).to_string(),
            "(1 + t^4)/(1-t^2)^2"
        );
    }
}
