use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Finitely generated abelian group `Z/d_1 + ... + Z/d_r`, where `d_i = 0`
/// stands for a free summand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyModel {
    pub invariant_factors: Vec<u64>,
}

impl HomologyModel {
    pub fn new(invariant_factors: Vec<u64>) -> Self {
        HomologyModel { invariant_factors }
    }

    pub fn trivial() -> Self {
        HomologyModel::new(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.iter().filter(|d| **d == 0).count()
    }

    /// Reduces coordinates into canonical form.
    pub fn element(&self, coords: &[i64]) -> Result<Vec<i64>> {
        if coords.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: coords.len(),
            });
        }
        Ok(coords
            .iter()
            .zip(&self.invariant_factors)
            .map(|(x, d)| if *d == 0 { *x } else { x.rem_euclid(*d as i64) })
            .collect())
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.len()]
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> Result<Vec<i64>> {
        self.combine(1, x, 1, y)
    }

    /// `a*x + b*y`
    pub fn combine(&self, a: i64, x: &[i64], b: i64, y: &[i64]) -> Result<Vec<i64>> {
        self.element(x)?;
        self.element(y)?;
        let raw: Vec<i64> = x.iter().zip(y).map(|(u, v)| a * u + b * v).collect();
        self.element(&raw)
    }

    /// Largest `d` with `x` divisible by `d` modulo torsion; 0 if `x` is torsion.
    pub fn divisibility(&self, x: &[i64]) -> Result<u64> {
        let x = self.element(x)?;
        Ok(x.iter()
            .zip(&self.invariant_factors)
            .filter(|(_, d)| **d == 0)
            .fold(0u64, |g, (v, _)| g.gcd(&v.unsigned_abs())))
    }

    /// Evaluates `<x, y>` for `x` in this group and `y` in a free group of
    /// rank `table[i].len()`. Torsion generators must pair to zero.
    pub fn pair(&self, x: &[i64], y: &[i64], table: &[Vec<i64>]) -> Result<i64> {
        let x = self.element(x)?;
        if table.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: table.len(),
            });
        }
        let mut total = 0;
        for ((xi, row), d) in x.iter().zip(table).zip(&self.invariant_factors) {
            if row.len() != y.len() {
                return Err(Error::DimensionMismatch {
                    expected: y.len(),
                    got: row.len(),
                });
            }
            if *d != 0 && row.iter().any(|v| *v != 0) {
                return Err(Error::InconsistentData(
                    "torsion generator pairs nontrivially".into(),
                ));
            }
            total += xi * row.iter().zip(y).map(|(a, b)| a * b).sum::<i64>();
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_and_divisibility() {
        let h = HomologyModel::new(vec![0, 4, 0]);
        assert_eq!(h.element(&[3, 9, -2]).unwrap(), vec![3, 1, -2]);
        assert_eq!(h.divisibility(&[6, 1, 4]).unwrap(), 2);
        assert_eq!(h.divisibility(&[0, 3, 0]).unwrap(), 0);
        assert_eq!(h.rank(), 2);
        assert!(h.element(&[1]).is_err());
        assert_eq!(HomologyModel::trivial().divisibility(&[]).unwrap(), 0);
    }

    #[test]
    fn pairing() {
        let h = HomologyModel::new(vec![0, 2]);
        let table = vec![vec![1, 0], vec![0, 0]];
        assert_eq!(h.pair(&[3, 1], &[2, 5], &table).unwrap(), 6);
        let bad = vec![vec![1, 0], vec![1, 0]];
        assert!(h.pair(&[3, 1], &[2, 5], &bad).is_err());
    }
}
