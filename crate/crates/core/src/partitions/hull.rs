use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::Partition;
use crate::model::MonodromyAngle;

/// Polygonal lattice path from the origin, subdivided at every lattice
/// point it passes through.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticePath {
    pub vertices: Vec<(i64, i64)>,
}

impl LatticePath {
    /// Builds the subdivided path through the given corners.
    pub fn through(corners: &[(i64, i64)]) -> Self {
        let mut vertices = vec![corners[0]];
        for w in corners.windows(2) {
            let (dx, dy) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
            let g = dx.gcd(&dy).max(1);
            let (sx, sy) = (dx / g, dy / g);
            for i in 1..=g {
                vertices.push((w[0].0 + i * sx, w[0].1 + i * sy));
            }
        }
        LatticePath { vertices }
    }

    pub fn steps(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.vertices
            .windows(2)
            .map(|w| (w[1].0 - w[0].0, w[1].1 - w[0].1))
    }

    /// Horizontal displacements of the primitive segments.
    pub fn partition(&self) -> Partition {
        Partition::new(self.steps().map(|(dx, _)| dx as u32).collect())
    }

    /// Vertices where the slope changes.
    pub fn corners(&self) -> Vec<(i64, i64)> {
        let v = &self.vertices;
        let mut out = vec![v[0]];
        for i in 1..v.len() {
            if i + 1 == v.len() {
                out.push(v[i]);
                continue;
            }
            let (a, b, c) = (v[i - 1], v[i], v[i + 1]);
            if cross(a, b, c) != 0 {
                out.push(b);
            }
        }
        out
    }
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn hull(points: &[(i64, i64)], upper: bool) -> Vec<(i64, i64)> {
    let mut h: Vec<(i64, i64)> = Vec::new();
    for &p in points {
        while h.len() >= 2 {
            let c = cross(h[h.len() - 2], h[h.len() - 1], p);
            if (upper && c >= 0) || (!upper && c <= 0) {
                h.pop();
            } else {
                break;
            }
        }
        h.push(p);
    }
    h
}

/// Highest concave lattice path from `(0,0)` to `(m, floor(m*theta))` below
/// the line `y = theta*x`.
pub fn upper_hull_path(theta: &MonodromyAngle, m: u32) -> LatticePath {
    let pts: Vec<(i64, i64)> = (0..=i64::from(m))
        .map(|x| (x, theta.floor_mul(x)))
        .collect();
    LatticePath::through(&hull(&pts, true))
}

/// Lowest convex lattice path from `(0,0)` to `(m, ceil(m*theta))` above
/// the line `y = theta*x`.
pub fn lower_hull_path(theta: &MonodromyAngle, m: u32) -> LatticePath {
    let pts: Vec<(i64, i64)> = (0..=i64::from(m)).map(|x| (x, theta.ceil_mul(x))).collect();
    LatticePath::through(&hull(&pts, false))
}
