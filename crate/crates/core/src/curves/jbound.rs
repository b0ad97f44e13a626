use serde::{Deserialize, Serialize};

use super::union::{
    curve_j0, curve_j_plus, curve_orbit_sets, dot, j_union_slack, shared_counts, union,
};
use super::{Covered, CurveComponent, CurveData, HalfInt};
use crate::cz::cz_sum_prime;
use crate::error::{Error, Result};
use crate::model::{OrbitKind, OrbitSet, Trivialization};
use crate::relindex::size_measure;

/// Contribution of the ends at one orbit on one side to the lower bound
/// on `J0`.
pub fn j_bound_summand(kind: &OrbitKind, qs: &[u32]) -> i64 {
    let n = qs.len() as i64;
    let m: i64 = qs.iter().map(|q| i64::from(*q)).sum();
    match kind {
        OrbitKind::Elliptic(_) => 2 * n - 1,
        OrbitKind::PositiveHyperbolic(_) => m,
        OrbitKind::NegativeHyperbolic(_) => {
            let odd = qs.iter().filter(|q| *q % 2 == 1).count() as i64;
            debug_assert_eq!((m + odd) % 2, 0);
            (m + odd) / 2
        }
    }
}

/// `2(g - 1 + delta) + sum over orbits and sides of the summands`
pub fn j_bound_rhs(c: &CurveComponent) -> i64 {
    let base = 2 * (i64::from(c.genus) - 1 + i64::from(c.delta));
    base + c
        .groups()
        .values()
        .map(|(o, qs)| j_bound_summand(&o.kind, qs))
        .sum::<i64>()
}

/// Largest writhe of the braid of positive ends `qs` compatible with the
/// `J0` bound: `n + sum_{k<m} CZ(gamma^k) - summand`.
pub fn j_writhe_max(kind: &OrbitKind, offset: i64, qs: &[u32]) -> Result<i64> {
    let m: u32 = qs.iter().sum();
    Ok(qs.len() as i64 + cz_sum_prime(kind, offset, m)? - j_bound_summand(kind, qs))
}

/// `-chi(C) <= J0(C) - 2 delta(C)`
pub fn euler_bound_check(c: &CurveComponent, j0: i64) -> bool {
    -c.chi() <= j0 - 2 * i64::from(c.delta)
}

/// `(|alpha alpha'|, |alpha| + |alpha'| - E - N)`
pub fn size_union_identity(a: &OrbitSet, a2: &OrbitSet) -> Result<(u64, u64)> {
    let (e, n) = shared_counts(a, a2);
    let lhs = size_measure(&a.product(a2)?);
    let rhs = size_measure(a) + size_measure(a2);
    Ok((lhs, rhs - (e + n) as u64))
}

/// One induction step: `C` is everything folded so far, `C'` the next block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JPlusStep {
    pub block: String,
    pub j_plus_left: i64,
    pub j_plus_right: i64,
    pub j_plus_union: i64,
    pub dot: HalfInt,
    /// `J0` union slack after the `E + N` correction.
    pub j0_slack: i64,
    pub e_minus: i64,
    pub n_minus: i64,
    /// `J+(C u C') = J+(C) + J+(C') + 2 C.C' + j0_slack + 2(E- + N-)`
    pub identity_holds: bool,
    pub size_identity_holds: bool,
    /// `2(E- + N-)`
    pub step_slack: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JPlusBlock {
    pub component: String,
    pub degree: u32,
    pub trivial_cylinder: bool,
    pub j_plus: i64,
    /// `2(g - 1 + |alpha+| + delta)` for a simple block.
    pub bound: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JPlusReport {
    pub blocks: Vec<JPlusBlock>,
    pub steps: Vec<JPlusStep>,
    pub j_plus: i64,
    pub holds: bool,
}

fn block(curve: &CurveData, c: &Covered, degree: u32) -> CurveData {
    CurveData {
        components: vec![Covered {
            component: c.component.clone(),
            degree,
        }],
        q: curve.q.clone(),
        intersections: curve.intersections.clone(),
    }
}

/// Splits a curve in a symplectization into simple pieces and covers of
/// trivial cylinders, checks `J+ >= 0` on each piece, and folds them back
/// together one union at a time.
pub fn j_plus_pipeline(curve: &CurveData, tau: &Trivialization) -> Result<JPlusReport> {
    let mut pieces = Vec::new();
    let mut blocks = Vec::new();
    for c in &curve.components {
        let comp = &c.component;
        if comp.is_trivial_cylinder() {
            let b = block(curve, c, c.degree);
            blocks.push(JPlusBlock {
                component: comp.id.clone(),
                degree: c.degree,
                trivial_cylinder: true,
                j_plus: curve_j_plus(&b, tau)?,
                bound: None,
            });
            pieces.push((comp.id.clone(), b));
            continue;
        }
        if !comp.has_positive_end() {
            return Err(Error::NoPositiveEnd(comp.id.clone()));
        }
        let b = block(curve, c, 1);
        let (plus, _) = curve_orbit_sets(&b)?;
        let bound =
            2 * (i64::from(comp.genus) - 1 + size_measure(&plus) as i64 + i64::from(comp.delta));
        let j_plus = curve_j_plus(&b, tau)?;
        for _ in 0..c.degree {
            blocks.push(JPlusBlock {
                component: comp.id.clone(),
                degree: 1,
                trivial_cylinder: false,
                j_plus,
                bound: Some(bound),
            });
            pieces.push((comp.id.clone(), b.clone()));
        }
    }
    let mut steps = Vec::new();
    let mut iter = pieces.into_iter();
    let Some((_, mut acc)) = iter.next() else {
        return Ok(JPlusReport {
            blocks,
            steps,
            j_plus: 0,
            holds: true,
        });
    };
    for (id, next) in iter {
        let left = curve_j_plus(&acc, tau)?;
        let right = curve_j_plus(&next, tau)?;
        let d = dot(&acc, &next, tau)?;
        let s = j_union_slack(&acc, &next, tau)?;
        let (p1, m1) = curve_orbit_sets(&acc)?;
        let (p2, m2) = curve_orbit_sets(&next)?;
        let u = union(&acc, &next)?;
        let joined = curve_j_plus(&u, tau)?;
        debug_assert_eq!(
            curve_j0(&u, tau)? - curve_j0(&acc, tau)? - curve_j0(&next, tau)? - d.doubled(),
            s.slack + s.e() + s.n()
        );
        let step_slack = 2 * (s.e_minus + s.n_minus);
        let (a_lhs, a_rhs) = size_union_identity(&p1, &p2)?;
        let (b_lhs, b_rhs) = size_union_identity(&m1, &m2)?;
        steps.push(JPlusStep {
            block: id,
            j_plus_left: left,
            j_plus_right: right,
            j_plus_union: joined,
            dot: d,
            j0_slack: s.slack,
            e_minus: s.e_minus,
            n_minus: s.n_minus,
            identity_holds: joined == left + right + d.doubled() + s.slack + step_slack,
            size_identity_holds: a_lhs == a_rhs && b_lhs == b_rhs,
            step_slack,
        });
        acc = u;
    }
    let j_plus = curve_j_plus(&acc, tau)?;
    let holds = j_plus >= 0
        && blocks
            .iter()
            .all(|b| b.j_plus >= b.bound.unwrap_or(0) && (!b.trivial_cylinder || b.j_plus == 0))
        && steps
            .iter()
            .all(|s| s.identity_holds && s.size_identity_holds);
    Ok(JPlusReport {
        blocks,
        steps,
        j_plus,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::super::index::fredholm_index;
    use super::*;
    use crate::model::{End, OrbitClass, Side};

    fn comp(genus: u32, delta: u32, ends: Vec<(Side, &str, OrbitKind, u32)>) -> CurveComponent {
        CurveComponent {
            id: "A".into(),
            genus,
            delta,
            ends: ends
                .into_iter()
                .map(|(side, id, kind, mult)| End {
                    side,
                    orbit: OrbitClass::new(id, kind),
                    mult,
                })
                .collect(),
            c_ref: 0,
            w_ref: 0,
        }
    }

    #[test]
    fn bound_values() {
        let e = OrbitKind::elliptic(3, 10, 9).unwrap();
        let c = comp(
            0,
            0,
            vec![(Side::Plus, "e", e.clone(), 2), (Side::Plus, "e", e, 1)],
        );
        assert_eq!(j_bound_rhs(&c), 1);
        let h = OrbitKind::PositiveHyperbolic(0);
        assert_eq!(j_bound_rhs(&comp(0, 0, vec![(Side::Plus, "h", h, 1)])), -1);
        let n = OrbitKind::NegativeHyperbolic(1);
        let c = comp(
            1,
            1,
            vec![(Side::Plus, "h", n.clone(), 2), (Side::Plus, "h", n, 1)],
        );
        assert_eq!(j_bound_rhs(&c), 4);
    }

    #[test]
    fn euler() {
        let e = OrbitKind::elliptic(3, 10, 9).unwrap();
        let cyl = comp(
            0,
            0,
            vec![
                (Side::Plus, "e", e.clone(), 1),
                (Side::Minus, "e", e.clone(), 1),
            ],
        );
        assert!(euler_bound_check(&cyl, 0));
        let pants = comp(0, 0, vec![(Side::Plus, "e", e.clone(), 1); 3]);
        assert_eq!(pants.chi(), -1);
        assert!(euler_bound_check(&pants, 1));
        let mut big = comp(1, 1, vec![(Side::Plus, "e", e, 1); 3]);
        big.delta = 1;
        assert_eq!(big.chi(), -3);
        assert!(!euler_bound_check(&big, 2));
    }

    #[test]
    fn summand_at_least_end_count() {
        let kinds = [
            OrbitKind::elliptic(3, 10, 9).unwrap(),
            OrbitKind::PositiveHyperbolic(2),
            OrbitKind::NegativeHyperbolic(1),
        ];
        for k in &kinds {
            for m in 1..=9 {
                for qs in crate::partitions::partitions_of(m) {
                    assert!(j_bound_summand(k, qs.parts()) >= qs.len() as i64);
                }
            }
        }
    }

    #[test]
    fn size_identity() {
        let e = OrbitClass::new("e", OrbitKind::elliptic(3, 10, 9).unwrap());
        let h = OrbitClass::new("h", OrbitKind::NegativeHyperbolic(1));
        let a = OrbitSet::new(Side::Plus, vec![(e.clone(), 1), (h.clone(), 3)]).unwrap();
        let b = OrbitSet::new(Side::Plus, vec![(e, 2), (h, 1)]).unwrap();
        let (l, r) = size_union_identity(&a, &b).unwrap();
        assert_eq!((l, r), (3, 3));
    }

    #[test]
    fn cylinder_covers_and_planes() {
        let e = OrbitKind::elliptic(3, 10, 9).unwrap();
        let cyl = comp(
            0,
            0,
            vec![
                (Side::Plus, "e", e.clone(), 1),
                (Side::Minus, "e", e.clone(), 1),
            ],
        );
        let mut curve = CurveData::single(cyl, 0);
        curve.components[0].degree = 3;
        let t = Trivialization::reference(curve.orbits());
        let r = j_plus_pipeline(&curve, &t).unwrap();
        assert_eq!(r.j_plus, 0);
        assert!(r.holds);

        // plane with one positive end at an elliptic orbit: c = chi + Q = 1
        let mut plane = comp(0, 0, vec![(Side::Plus, "e", e, 1)]);
        plane.c_ref = 1;
        assert_eq!(fredholm_index(&plane, &t), Ok(2));
        let curve = CurveData::single(plane.clone(), 0);
        let r = j_plus_pipeline(&curve, &t).unwrap();
        assert_eq!(r.blocks[0].bound, Some(0));
        assert!(r.j_plus >= 0);

        let mut sink = plane;
        sink.ends[0].side = Side::Minus;
        assert_eq!(
            j_plus_pipeline(&CurveData::single(sink, 0), &t),
            Err(Error::NoPositiveEnd("A".into()))
        );
    }
}
