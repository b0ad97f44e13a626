use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::SweepReport;
use crate::error::Result;
use crate::model::{MonodromyAngle, OrbitKind};
use crate::partitions::{lower_hull_path, p_in_kind, p_out_kind, upper_hull_path, Partition};

/// Extremal path found by enumeration: its corners and the partition read
/// off from its primitive segments.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OraclePath {
    pub corners: Vec<(i64, i64)>,
    pub partition: Partition,
}

/// Height of the path over the integer `x`, as a fraction.
fn height(corners: &[(i64, i64)], x: i64) -> (i64, i64) {
    for w in corners.windows(2) {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        if x0 <= x && x <= x1 {
            let den = x1 - x0;
            return (y0 * den + (y1 - y0) * (x - x0), den);
        }
    }
    unreachable!("x outside the path")
}

fn above_or_equal(a: &[(i64, i64)], b: &[(i64, i64)], m: i64) -> bool {
    (0..=m).all(|x| {
        let (p, q) = height(a, x);
        let (r, s) = height(b, x);
        p * s >= r * q
    })
}

/// All lattice paths from the origin to `end` through corners of strictly
/// monotone slope (decreasing when `upper`), with every corner inside the
/// admissible band at its `x`.
fn enumerate(
    end: (i64, i64),
    upper: bool,
    band: &dyn Fn(i64) -> (i64, i64),
) -> Vec<Vec<(i64, i64)>> {
    fn go(
        cur: &mut Vec<(i64, i64)>,
        end: (i64, i64),
        upper: bool,
        band: &dyn Fn(i64) -> (i64, i64),
        out: &mut Vec<Vec<(i64, i64)>>,
    ) {
        let (x0, y0) = *cur.last().unwrap();
        let turns = |cur: &[(i64, i64)], x: i64, y: i64| -> bool {
            if cur.len() < 2 {
                return true;
            }
            let (px, py) = cur[cur.len() - 2];
            let (dx1, dy1) = (x0 - px, y0 - py);
            let (dx2, dy2) = (x - x0, y - y0);
            let c = dy2 * dx1 - dy1 * dx2;
            if upper {
                c < 0
            } else {
                c > 0
            }
        };
        if turns(cur, end.0, end.1) {
            cur.push(end);
            out.push(cur.clone());
            cur.pop();
        }
        for x in x0 + 1..end.0 {
            let (lo, hi) = band(x);
            for y in lo..=hi {
                if turns(cur, x, y) {
                    cur.push((x, y));
                    go(cur, end, upper, band, out);
                    cur.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(&mut vec![(0, 0)], end, upper, band, &mut out);
    out
}

/// Brute-force extremal path: the highest concave lattice path below
/// `y = theta x` ending at `(m, floor(m theta))` when `upper`, the lowest
/// convex one above the line ending at `(m, ceil(m theta))` otherwise.
/// Returns `None` if no enumerated path dominates all the others.
pub fn extremal_path_oracle(theta: &MonodromyAngle, m: u32, upper: bool) -> Option<OraclePath> {
    let m = i64::from(m);
    let (p, q) = (theta.p(), theta.q());
    let end_y = if upper {
        Integer::div_floor(&(m * p), &q)
    } else {
        Integer::div_ceil(&(m * p), &q)
    };
    // Concave paths stay above their chord, convex ones below it.
    let band = |x: i64| -> (i64, i64) {
        if upper {
            (
                Integer::div_ceil(&(end_y * x), &m),
                Integer::div_floor(&(x * p), &q),
            )
        } else {
            (
                Integer::div_ceil(&(x * p), &q),
                Integer::div_floor(&(end_y * x), &m),
            )
        }
    };
    let paths = enumerate((m, end_y), upper, &band);
    let best = paths.iter().find(|a| {
        paths.iter().all(|b| {
            if upper {
                above_or_equal(a, b, m)
            } else {
                above_or_equal(b, a, m)
            }
        })
    })?;
    let mut parts = Vec::new();
    for w in best.windows(2) {
        let (dx, dy) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
        let g = dx.gcd(&dy);
        for _ in 0..g {
            parts.push((dx / g) as u32);
        }
    }
    Some(OraclePath {
        corners: best.clone(),
        partition: Partition::new(parts),
    })
}

/// Hull-based partitions and paths against the enumeration oracle.
pub fn sweep_oracle(m_max: u32, thetas: &[MonodromyAngle]) -> Result<SweepReport> {
    let parts: Vec<Result<SweepReport>> = thetas
        .par_iter()
        .map(|t| {
            let mut r = SweepReport::new("oracle", json!(null));
            let kind = OrbitKind::Elliptic(*t);
            for m in 1..=m_max.min(t.k_max()) {
                for upper in [true, false] {
                    r.instances_checked += 1;
                    let (part, hull) = if upper {
                        (p_out_kind(&kind, m)?.0, upper_hull_path(t, m))
                    } else {
                        (p_in_kind(&kind, m)?.0, lower_hull_path(t, m))
                    };
                    let side = if upper { "out" } else { "in" };
                    match extremal_path_oracle(t, m, upper) {
                        None => r.violation(format!("theta {t} m {m} {side}: no extremal path")),
                        Some(o) => {
                            if o.partition != part || o.corners != hull.corners() {
                                r.violation(format!(
                                    "theta {t} m {m} {side}: hull {part} {:?}, oracle {} {:?}",
                                    hull.corners(),
                                    o.partition,
                                    o.corners
                                ));
                            }
                        }
                    }
                }
            }
            Ok(r)
        })
        .collect();
    let parts = parts.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(SweepReport::merged(
        "oracle",
        json!({ "m_max": m_max, "thetas": thetas.iter().map(|t| t.to_string()).collect::<Vec<_>>() }),
        parts,
    ))
}

/// `P_in` at `theta` against `P_out` at `-theta`, for `m` up to the
/// smaller of `m_max` and the horizon of each angle.
pub fn sweep_duality(m_max: u32, thetas: &[MonodromyAngle]) -> Result<SweepReport> {
    let mut r = SweepReport::new(
        "duality",
        json!({ "m_max": m_max, "thetas": thetas.iter().map(|t| t.to_string()).collect::<Vec<_>>() }),
    );
    for t in thetas {
        let k = OrbitKind::Elliptic(*t);
        let neg = OrbitKind::Elliptic(t.negated());
        for m in 1..=m_max.min(t.k_max()) {
            r.instances_checked += 1;
            let a = p_in_kind(&k, m)?.0;
            let b = p_out_kind(&neg, m)?.0;
            let flipped: Vec<(i64, i64)> = lower_hull_path(t, m)
                .vertices
                .iter()
                .map(|(x, y)| (*x, -y))
                .collect();
            if a != b || flipped != upper_hull_path(&t.negated(), m).vertices {
                r.violation(format!("theta {t} m {m}: P_in {a} but P_out(-theta) {b}"));
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(p: i64, q: i64) -> MonodromyAngle {
        MonodromyAngle::with_max_horizon(p, q).unwrap()
    }

    #[test]
    fn oracle_values() {
        let o = extremal_path_oracle(&t(3, 10), 4, true).unwrap();
        assert_eq!(o.partition, Partition::new(vec![4]));
        assert_eq!(o.corners, vec![(0, 0), (4, 1)]);
        let o = extremal_path_oracle(&t(7, 10), 3, true).unwrap();
        assert_eq!(o.partition, Partition::new(vec![3]));
        let o = extremal_path_oracle(&t(3, 10), 3, true).unwrap();
        assert_eq!(o.partition, Partition::new(vec![1, 1, 1]));
    }

    #[test]
    fn oracle_agrees_with_hulls() {
        let r = sweep_oracle(9, &[t(3, 10), t(7, 10), t(1, 10), t(5, 11), t(-3, 10)]).unwrap();
        assert!(r.ok(), "{:?}", r.violations);
        assert!(sweep_duality(9, &[t(3, 10), t(13, 10)]).unwrap().ok());
    }
}
