use std::cmp::Ordering;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::hull::LatticePath;
use super::upper_hull_path;
use crate::error::{Error, Result};
use crate::model::MonodromyAngle;

/// Region bounded by the staircase path of a multiset, the horizontal axis
/// and the vertical line `x = m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Staircase {
    /// Angle actually used: the representative of theta in `(0, 1)`.
    pub theta: MonodromyAngle,
    /// Edge vectors `(q_i, floor(q_i*theta))` in path order.
    pub edges: Vec<(i64, i64)>,
    /// Polygon vertices, starting at the origin and ending at `(m, 0)`.
    pub polygon: Vec<(i64, i64)>,
    pub degenerate: bool,
}

impl Staircase {
    pub fn path(&self) -> LatticePath {
        let mut corners = vec![(0, 0)];
        let (mut x, mut y) = (0, 0);
        for (dx, dy) in &self.edges {
            x += dx;
            y += dy;
            corners.push((x, y));
        }
        LatticePath::through(&corners)
    }
}

/// Builds the staircase region for `qs`. Edges are taken in order of
/// decreasing slope `floor(q*theta)/q`, ties broken by larger `q` first.
pub fn staircase(qs: &[u32], theta: &MonodromyAngle) -> Result<Staircase> {
    let m: u32 = qs.iter().sum();
    theta.check(m)?;
    let theta = theta.fractional();
    let mut edges: Vec<(i64, i64)> = qs
        .iter()
        .filter(|q| **q > 0)
        .map(|q| (i64::from(*q), theta.floor_mul(i64::from(*q))))
        .collect();
    edges.sort_by(|a, b| match (b.1 * a.0).cmp(&(a.1 * b.0)) {
        Ordering::Equal => b.0.cmp(&a.0),
        o => o,
    });
    let mut polygon = vec![(0, 0)];
    let (mut x, mut y) = (0, 0);
    for (dx, dy) in &edges {
        x += dx;
        y += dy;
        polygon.push((x, y));
    }
    let degenerate = edges.iter().all(|e| e.1 == 0);
    if !degenerate {
        polygon.push((x, 0));
    }
    Ok(Staircase {
        theta,
        edges,
        polygon,
        degenerate,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PickStats {
    pub two_area: i64,
    pub lattice: i64,
    pub boundary: i64,
}

fn on_segment(p: (i64, i64), a: (i64, i64), b: (i64, i64)) -> bool {
    let c = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
    c == 0
        && p.0 >= a.0.min(b.0)
        && p.0 <= a.0.max(b.0)
        && p.1 >= a.1.min(b.1)
        && p.1 <= a.1.max(b.1)
}

fn strictly_inside(p: (i64, i64), poly: &[(i64, i64)]) -> bool {
    let mut inside = false;
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        if (a.1 > p.1) != (b.1 > p.1) {
            // p.x < a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y)
            let num = (p.1 - a.1) * (b.0 - a.0);
            let den = b.1 - a.1;
            let lhs = (p.0 - a.0) * den;
            if (den > 0 && lhs < num) || (den < 0 && lhs > num) {
                inside = !inside;
            }
        }
    }
    inside
}

/// Twice the area, and the numbers of lattice points in and on the boundary
/// of a simple polygon, counted point by point.
pub fn pick_stats(polygon: &[(i64, i64)]) -> Result<PickStats> {
    let n = polygon.len();
    let two_area = (0..n)
        .map(|i| {
            let (a, b) = (polygon[i], polygon[(i + 1) % n]);
            a.0 * b.1 - b.0 * a.1
        })
        .sum::<i64>()
        .abs();
    if two_area == 0 {
        return Err(Error::DegenerateRegion);
    }
    let (x0, x1) = (
        polygon.iter().map(|p| p.0).min().unwrap(),
        polygon.iter().map(|p| p.0).max().unwrap(),
    );
    let (y0, y1) = (
        polygon.iter().map(|p| p.1).min().unwrap(),
        polygon.iter().map(|p| p.1).max().unwrap(),
    );
    let (mut lattice, mut boundary) = (0, 0);
    for x in x0..=x1 {
        for y in y0..=y1 {
            let p = (x, y);
            if (0..n).any(|i| on_segment(p, polygon[i], polygon[(i + 1) % n])) {
                boundary += 1;
                lattice += 1;
            } else if strictly_inside(p, polygon) {
                lattice += 1;
            }
        }
    }
    Ok(PickStats {
        two_area,
        lattice,
        boundary,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ce1Sides {
    pub lhs: i64,
    pub rhs: i64,
    pub equality: bool,
}

/// Both sides of the lattice inequality
/// `sum_{i,j} max(q_i floor(q_j t), q_j floor(q_i t))
///    <= 2 sum_{k<=m} floor(k t) - sum_i floor(q_i t) + m - n`.
pub fn ce1_sides(qs: &[u32], theta: &MonodromyAngle) -> Result<Ce1Sides> {
    let m: u32 = qs.iter().sum();
    theta.check(m)?;
    let q: Vec<i64> = qs.iter().map(|q| i64::from(*q)).collect();
    let f: Vec<i64> = q.iter().map(|q| theta.floor_mul(*q)).collect();
    let mut lhs = 0;
    for i in 0..q.len() {
        for j in 0..q.len() {
            lhs += (q[i] * f[j]).max(q[j] * f[i]);
        }
    }
    let m = i64::from(m);
    let rhs = 2 * (1..=m).map(|k| theta.floor_mul(k)).sum::<i64>() - f.iter().sum::<i64>() + m
        - q.len() as i64;
    Ok(Ce1Sides {
        lhs,
        rhs,
        equality: lhs == rhs,
    })
}

/// Lattice point identities for the staircase region of `qs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PickChain {
    pub stats: PickStats,
    /// Left side of the lattice inequality at the fractional angle.
    pub lhs: i64,
    /// `1 + sum_{k<=m} (floor(k t) + 1)`
    pub lattice_bound: i64,
    /// `m + n + sum_i floor(q_i t)`
    pub boundary_bound: i64,
    /// Path has the same image as the outgoing extremal path.
    pub image_is_extremal: bool,
    /// No edge vector is a proper multiple of a lattice vector.
    pub edges_primitive: bool,
}

impl PickChain {
    pub fn pick_holds(&self) -> bool {
        self.stats.two_area == 2 * self.stats.lattice - self.stats.boundary - 2
    }

    pub fn area_matches(&self) -> bool {
        self.lhs == self.stats.two_area
    }

    /// Lattice bound holds, with equality exactly for the extremal image.
    pub fn lattice_ok(&self) -> bool {
        self.stats.lattice <= self.lattice_bound
            && (self.stats.lattice == self.lattice_bound) == self.image_is_extremal
    }

    /// Boundary bound holds, with equality exactly for primitive edges.
    pub fn boundary_ok(&self) -> bool {
        self.stats.boundary >= self.boundary_bound
            && (self.stats.boundary == self.boundary_bound) == self.edges_primitive
    }
}

pub fn pick_chain(qs: &[u32], theta: &MonodromyAngle) -> Result<PickChain> {
    let st = staircase(qs, theta)?;
    if st.degenerate {
        return Err(Error::DegenerateRegion);
    }
    let t = st.theta;
    let stats = pick_stats(&st.polygon)?;
    let lhs = ce1_sides(qs, &t)?.lhs;
    let m: i64 = qs.iter().map(|q| i64::from(*q)).sum();
    let lattice_bound = 1 + (1..=m).map(|k| t.floor_mul(k) + 1).sum::<i64>();
    let boundary_bound = m + st.edges.len() as i64 + st.edges.iter().map(|e| e.1).sum::<i64>();
    let extremal = upper_hull_path(&t, m as u32);
    Ok(PickChain {
        stats,
        lhs,
        lattice_bound,
        boundary_bound,
        image_is_extremal: st.path() == extremal,
        edges_primitive: st.edges.iter().all(|(dx, dy)| dx.gcd(dy) == 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(p: i64, q: i64) -> MonodromyAngle {
        MonodromyAngle::with_max_horizon(p, q).unwrap()
    }

    #[test]
    fn staircase_values() {
        let s = staircase(&[2, 1], &t(7, 10)).unwrap();
        assert_eq!(s.polygon, vec![(0, 0), (2, 1), (3, 1), (3, 0)]);
        assert!(!s.degenerate);
        assert!(staircase(&[1, 1, 1], &t(3, 10)).unwrap().degenerate);
        let s = staircase(&[3], &t(7, 10)).unwrap();
        assert_eq!(s.polygon, vec![(0, 0), (3, 2), (3, 0)]);
        // Angles are read mod 1.
        assert_eq!(staircase(&[3], &t(-3, 10)).unwrap().polygon, s.polygon);
    }

    #[test]
    fn pick_values() {
        let s = staircase(&[2, 1], &t(7, 10)).unwrap();
        assert_eq!(
            pick_stats(&s.polygon).unwrap(),
            PickStats {
                two_area: 4,
                lattice: 6,
                boundary: 6
            }
        );
        let s = staircase(&[3], &t(7, 10)).unwrap();
        assert_eq!(
            pick_stats(&s.polygon).unwrap(),
            PickStats {
                two_area: 6,
                lattice: 7,
                boundary: 6
            }
        );
        assert_eq!(
            pick_stats(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap(),
            PickStats {
                two_area: 2,
                lattice: 4,
                boundary: 4
            }
        );
        assert_eq!(pick_stats(&[(0, 0), (3, 0)]), Err(Error::DegenerateRegion));
    }

    #[test]
    fn ce1_values() {
        let s = ce1_sides(&[1, 1, 1], &t(3, 10)).unwrap();
        assert_eq!((s.lhs, s.rhs, s.equality), (0, 0, true));
        let s = ce1_sides(&[3], &t(3, 10)).unwrap();
        assert_eq!((s.lhs, s.rhs, s.equality), (0, 2, false));
        let s = ce1_sides(&[4], &t(3, 10)).unwrap();
        assert_eq!((s.lhs, s.rhs, s.equality), (4, 4, true));
    }

    #[test]
    fn slack_invariant_under_integer_shift() {
        for p in 1..13 {
            for qs in super::super::partitions_of(9) {
                let a = ce1_sides(qs.parts(), &t(p, 13)).unwrap();
                let b = ce1_sides(qs.parts(), &t(p + 13, 13)).unwrap();
                let c = ce1_sides(qs.parts(), &t(p - 26, 13)).unwrap();
                assert_eq!(a.rhs - a.lhs, b.rhs - b.lhs);
                assert_eq!(a.rhs - a.lhs, c.rhs - c.lhs);
            }
        }
    }

    #[test]
    fn chain_on_small_cases() {
        let c = pick_chain(&[2, 1], &t(7, 10)).unwrap();
        assert!(c.pick_holds() && c.area_matches() && c.lattice_ok() && c.boundary_ok());
        assert!(!c.image_is_extremal);
        assert!(pick_chain(&[3], &t(7, 10)).unwrap().image_is_extremal);
        let c = pick_chain(&[4], &t(7, 10)).unwrap();
        assert!(!c.edges_primitive);
        assert!(c.boundary_ok() && c.lattice_ok());
        assert_eq!(
            pick_chain(&[1, 1, 1], &t(3, 10)),
            Err(Error::DegenerateRegion)
        );
    }
}
