use serde::{Deserialize, Serialize};

use crate::cz::{cz_at, cz_sum};
use crate::error::{Error, Result};
use crate::model::{OrbitClass, OrbitKind, Trivialization};

/// `floor(CZ(gamma^q) / 2)`
pub fn rho(kind: &OrbitKind, offset: i64, q: u32) -> Result<i64> {
    Ok(cz_at(kind, offset, q)?.div_euclid(2))
}

/// Bound on the linking of two braids with end multiplicities `qa` and
/// `qb`: `sum_{i,j} max(q_i rho'_j, q'_j rho_i)`.
pub fn linking_bound(kind: &OrbitKind, offset: i64, qa: &[u32], qb: &[u32]) -> Result<i64> {
    let mut total = 0;
    for &x in qa {
        let rx = rho(kind, offset, x)?;
        for &y in qb {
            let ry = rho(kind, offset, y)?;
            total += (i64::from(x) * ry).max(i64::from(y) * rx);
        }
    }
    Ok(total)
}

/// Writhe bound for a braid with end multiplicities `qs`:
/// `sum_i rho_i (q_i - 1) + 2 sum_{i<j} max(q_i rho_j, q_j rho_i)`.
pub fn writhe_bound(kind: &OrbitKind, offset: i64, qs: &[u32]) -> Result<i64> {
    let r: i64 = qs
        .iter()
        .map(|q| rho(kind, offset, *q))
        .sum::<Result<i64>>()?;
    Ok(linking_bound(kind, offset, qs, qs)? - r)
}

/// `sum_{k<=m} CZ(gamma^k) - sum_i CZ(gamma^{q_i})`
pub fn uwb(kind: &OrbitKind, offset: i64, qs: &[u32]) -> Result<i64> {
    let m: u32 = qs.iter().sum();
    let ends: i64 = qs
        .iter()
        .map(|q| cz_at(kind, offset, *q))
        .sum::<Result<i64>>()?;
    Ok(cz_sum(kind, offset, m)? - ends)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WritheBounds {
    /// `sum_{k<=m} CZ(gamma^k) - sum_i CZ(gamma^{q_i})`
    pub total: i64,
    /// `rho_i (q_i - 1)` for each end.
    pub per_end: Vec<i64>,
    /// `max(q_i rho_j, q_j rho_i)`; the diagonal is left at 0.
    pub pairwise: Vec<Vec<i64>>,
    /// Sum of the per-end bounds and twice the pairwise ones.
    pub combined: i64,
}

pub fn max_writhe(qs: &[u32], orbit: &OrbitClass, tau: &Trivialization) -> Result<WritheBounds> {
    let off = tau.offset(&orbit.id)?;
    let k = &orbit.kind;
    let rhos: Vec<i64> = qs.iter().map(|q| rho(k, off, *q)).collect::<Result<_>>()?;
    let per_end: Vec<i64> = qs
        .iter()
        .zip(&rhos)
        .map(|(q, r)| r * (i64::from(*q) - 1))
        .collect();
    let n = qs.len();
    let mut pairwise = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                pairwise[i][j] = (i64::from(qs[i]) * rhos[j]).max(i64::from(qs[j]) * rhos[i]);
            }
        }
    }
    let combined =
        per_end.iter().sum::<i64>() + pairwise.iter().flat_map(|r| r.iter()).sum::<i64>();
    debug_assert_eq!(combined, writhe_bound(k, off, qs)?);
    Ok(WritheBounds {
        total: uwb(k, off, qs)?,
        per_end,
        pairwise,
        combined,
    })
}

/// The part of a curve union living near one orbit (all ends on the
/// positive side): component `a` has ends `ends`, appears with degree
/// `degree` in `C` and `degree_prime` in `C'`, and its braid has writhe
/// `writhe`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalComponent {
    pub ends: Vec<u32>,
    pub degree: u32,
    pub degree_prime: u32,
    pub writhe: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalUnionData {
    pub orbit: OrbitKind,
    pub offset: i64,
    pub components: Vec<LocalComponent>,
    /// Symmetric linking numbers of the component braids; the diagonal is
    /// ignored.
    pub linking: Vec<Vec<i64>>,
}

impl LocalUnionData {
    pub fn validate(&self) -> Result<()> {
        let r = self.components.len();
        if self.linking.len() != r || self.linking.iter().any(|row| row.len() != r) {
            return Err(Error::DimensionMismatch {
                expected: r,
                got: self.linking.len(),
            });
        }
        for a in 0..r {
            for b in 0..r {
                if a != b && self.linking[a][b] != self.linking[b][a] {
                    return Err(Error::InconsistentData("linking is not symmetric".into()));
                }
            }
        }
        self.orbit
            .check_mult(self.total_mult() + self.total_mult_prime())
    }

    /// Total multiplicity of `C` at the orbit.
    pub fn total_mult(&self) -> u32 {
        self.components
            .iter()
            .map(|c| c.degree * c.ends.iter().sum::<u32>())
            .sum()
    }

    pub fn total_mult_prime(&self) -> u32 {
        self.components
            .iter()
            .map(|c| c.degree_prime * c.ends.iter().sum::<u32>())
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listed_values() {
        let e = OrbitClass::new("e", OrbitKind::elliptic(3, 10, 9).unwrap());
        let t = Trivialization::reference([&e]);
        assert_eq!(max_writhe(&[2, 1], &e, &t).unwrap().total, 1);
        assert_eq!(max_writhe(&[3], &e, &t).unwrap().total, 2);
        let e7 = OrbitKind::elliptic(7, 10, 9).unwrap();
        assert_eq!(writhe_bound(&e7, 0, &[2]).unwrap(), 1);
        assert_eq!(linking_bound(&e7, 0, &[1], &[1]).unwrap(), 0);
    }

    #[test]
    fn writhe_bound_below_total() {
        // The combined bound never exceeds the total; this is the lattice
        // inequality in disguise.
        for p in 1..13 {
            let k = OrbitKind::elliptic(p, 13, 12).unwrap();
            for m in 1..=12 {
                for qs in crate::partitions::partitions_of(m) {
                    assert!(
                        writhe_bound(&k, 0, qs.parts()).unwrap() <= uwb(&k, 0, qs.parts()).unwrap()
                    );
                }
            }
        }
    }
}
