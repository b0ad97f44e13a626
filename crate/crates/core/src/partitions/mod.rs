//! Incoming and outgoing partitions, staircase regions and lattice point
//! counts.

mod hull;
mod staircase;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use hull::{lower_hull_path, upper_hull_path, LatticePath};
pub use staircase::{
    ce1_sides, pick_chain, pick_stats, staircase, Ce1Sides, PickChain, PickStats, Staircase,
};

use crate::error::Result;
use crate::model::{OrbitClass, OrbitKind};

/// Multiset of positive integers, kept in non-increasing order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|p| *p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<u32>> for Partition {
    fn from(v: Vec<u32>) -> Self {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `m`, each in non-increasing order, listed in
/// decreasing lexicographic order.
pub fn partitions_of(m: u32) -> Vec<Partition> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), &mut out);
    out
}

fn hyperbolic_partition(kind: &OrbitKind, m: u32) -> Partition {
    match kind {
        OrbitKind::NegativeHyperbolic(_) => {
            let mut parts = vec![2; (m / 2) as usize];
            if m % 2 == 1 {
                parts.push(1);
            }
            Partition(parts)
        }
        _ => Partition(vec![1; m as usize]),
    }
}

/// Outgoing partition of `m` at an orbit, with the extremal path for
/// elliptic orbits.
pub fn p_out_kind(kind: &OrbitKind, m: u32) -> Result<(Partition, Option<LatticePath>)> {
    kind.check_mult(m)?;
    match kind {
        OrbitKind::Elliptic(a) => {
            let path = upper_hull_path(a, m);
            Ok((path.partition(), Some(path)))
        }
        _ => Ok((hyperbolic_partition(kind, m), None)),
    }
}

/// Incoming partition of `m` at an orbit, with the extremal path for
/// elliptic orbits.
pub fn p_in_kind(kind: &OrbitKind, m: u32) -> Result<(Partition, Option<LatticePath>)> {
    kind.check_mult(m)?;
    match kind {
        OrbitKind::Elliptic(a) => {
            let path = lower_hull_path(a, m);
            Ok((path.partition(), Some(path)))
        }
        _ => Ok((hyperbolic_partition(kind, m), None)),
    }
}

pub fn p_out(orbit: &OrbitClass, m: u32) -> Result<(Partition, Option<LatticePath>)> {
    p_out_kind(&orbit.kind, m)
}

pub fn p_in(orbit: &OrbitClass, m: u32) -> Result<(Partition, Option<LatticePath>)> {
    p_in_kind(&orbit.kind, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::MonodromyAngle;

    fn e(p: i64, q: i64) -> OrbitKind {
        OrbitKind::Elliptic(MonodromyAngle::with_max_horizon(p, q).unwrap())
    }

    #[test]
    fn listed_values() {
        assert_eq!(
            p_out_kind(&e(3, 10), 3).unwrap().0,
            Partition::new(vec![1, 1, 1])
        );
        assert_eq!(p_out_kind(&e(3, 10), 4).unwrap().0, Partition::new(vec![4]));
        assert_eq!(
            p_out_kind(&OrbitKind::NegativeHyperbolic(1), 5).unwrap().0,
            Partition::new(vec![2, 2, 1])
        );
        assert_eq!(p_in_kind(&e(3, 10), 3).unwrap().0, Partition::new(vec![3]));
        assert_eq!(
            p_in_kind(&e(3, 10), 4).unwrap().0,
            Partition::new(vec![3, 1])
        );
        assert_eq!(
            p_out_kind(&OrbitKind::PositiveHyperbolic(4), 3).unwrap().0,
            Partition::new(vec![1, 1, 1])
        );
        assert!(p_out_kind(&e(3, 10), 10).is_err());
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=12).map(|m| partitions_of(m).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
        for m in 0..=10 {
            for p in partitions_of(m) {
                assert_eq!(p.total(), m);
                assert_eq!(Partition::new(p.parts().to_vec()), p);
            }
        }
    }

    #[test]
    fn depends_on_class_mod_one() {
        for p in 1..13 {
            for m in 1..13 {
                let base = p_out_kind(&e(p, 13), m).unwrap().0;
                assert_eq!(p_out_kind(&e(p + 26, 13), m).unwrap().0, base);
                assert_eq!(p_out_kind(&e(p - 13, 13), m).unwrap().0, base);
                assert_eq!(
                    p_in_kind(&e(p - 39, 13), m).unwrap().0,
                    p_in_kind(&e(p, 13), m).unwrap().0
                );
            }
        }
    }

    #[test]
    fn duality() {
        for p in -20..20 {
            let Ok(a) = MonodromyAngle::with_max_horizon(p, 23) else {
                continue;
            };
            for m in 1..23 {
                let pin = p_in_kind(&OrbitKind::Elliptic(a), m).unwrap().0;
                let pout = p_out_kind(&OrbitKind::Elliptic(a.negated()), m).unwrap().0;
                assert_eq!(pin, pout);
            }
        }
    }
}
