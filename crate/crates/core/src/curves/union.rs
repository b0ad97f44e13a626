use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::bounds::LocalUnionData;
use super::index::{c_tau, self_intersection};
use super::{CurveComponent, CurveData, HalfInt};
use crate::cz::{cz_at, cz_sum, cz_sum_prime, mu_prime, mu_total};
use crate::error::{Error, Result};
use crate::model::{OrbitClass, OrbitKind, OrbitSet, Side, Trivialization};
use crate::relindex::size_measure;

/// Orbit sets `(alpha+, alpha-)` of a union of covers.
pub fn curve_orbit_sets(curve: &CurveData) -> Result<(OrbitSet, OrbitSet)> {
    let mut acc: BTreeMap<(Side, String), (OrbitClass, u32)> = BTreeMap::new();
    for c in &curve.components {
        for e in &c.component.ends {
            let slot = acc
                .entry((e.side, e.orbit.id.clone()))
                .or_insert_with(|| (e.orbit.clone(), 0));
            if slot.0.kind != e.orbit.kind {
                return Err(Error::InconsistentData(format!(
                    "orbit '{}' appears with two different kinds",
                    e.orbit.id
                )));
            }
            slot.1 += c.degree * e.mult;
        }
    }
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for ((side, _), entry) in acc {
        match side {
            Side::Plus => plus.push(entry),
            Side::Minus => minus.push(entry),
        }
    }
    Ok((
        OrbitSet::new(Side::Plus, plus)?,
        OrbitSet::new(Side::Minus, minus)?,
    ))
}

/// `Q_tau(C_a, C_b)`; the diagonal is `Q_tau(C_a)`.
pub(crate) fn q_tau(
    curve: &CurveData,
    a: &CurveComponent,
    b: &CurveComponent,
    tau: &Trivialization,
) -> Result<i64> {
    let mut q = curve.q.require(&a.id, &b.id)?;
    let tb = b.totals();
    for ((side, id), ma) in a.totals() {
        if let Some(mb) = tb.get(&(side, id.clone())) {
            q += side.sign() * i64::from(ma) * i64::from(*mb) * tau.offset(&id)?;
        }
    }
    Ok(q)
}

/// `(sum_a d_a c_tau(C_a), sum_{a,b} d_a d_b Q_tau(C_a, C_b))`
fn c_and_q(curve: &CurveData, tau: &Trivialization) -> Result<(i64, i64)> {
    let mut c = 0;
    let mut q = 0;
    for a in &curve.components {
        c += i64::from(a.degree) * c_tau(&a.component, tau)?;
        for b in &curve.components {
            q += i64::from(a.degree * b.degree) * q_tau(curve, &a.component, &b.component, tau)?;
        }
    }
    Ok((c, q))
}

pub fn curve_ech_index(curve: &CurveData, tau: &Trivialization) -> Result<i64> {
    let (c, q) = c_and_q(curve, tau)?;
    let (plus, minus) = curve_orbit_sets(curve)?;
    Ok(c + q + mu_total(&plus, tau)? - mu_total(&minus, tau)?)
}

pub fn curve_j0(curve: &CurveData, tau: &Trivialization) -> Result<i64> {
    let (c, q) = c_and_q(curve, tau)?;
    let (plus, minus) = curve_orbit_sets(curve)?;
    Ok(-c + q + mu_prime(&plus, tau)? - mu_prime(&minus, tau)?)
}

pub fn curve_j_plus(curve: &CurveData, tau: &Trivialization) -> Result<i64> {
    let (plus, minus) = curve_orbit_sets(curve)?;
    Ok(curve_j0(curve, tau)? + size_measure(&plus) as i64 - size_measure(&minus) as i64)
}

/// `C u C'`: covering degrees of shared components add up. Components with
/// the same id must carry identical data.
pub fn union(c: &CurveData, c2: &CurveData) -> Result<CurveData> {
    let mut out = c.clone();
    for b in &c2.components {
        match out
            .components
            .iter_mut()
            .find(|a| a.component.id == b.component.id)
        {
            Some(a) if a.component == b.component => a.degree += b.degree,
            Some(_) => {
                return Err(Error::InconsistentData(format!(
                    "component '{}' differs between the two curves",
                    b.component.id
                )))
            }
            None => out.components.push(b.clone()),
        }
    }
    out.q.merge(&c2.q)?;
    out.intersections.merge(&c2.intersections)?;
    Ok(out)
}

/// `C . C' = sum_{a,b} d_a d'_b C_a . C'_b`, using the self-intersection
/// number when the two components coincide.
pub fn dot(c: &CurveData, c2: &CurveData, tau: &Trivialization) -> Result<HalfInt> {
    let mut table = c.intersections.clone();
    table.merge(&c2.intersections)?;
    let mut doubled = 0;
    for a in &c.components {
        for b in &c2.components {
            let d = i64::from(a.degree * b.degree);
            let x = if a.component.id == b.component.id {
                self_intersection(&a.component, tau)?.doubled()
            } else {
                2 * table.require(&a.component.id, &b.component.id)?
            };
            doubled += d * x;
        }
    }
    Ok(HalfInt(doubled))
}

/// `I(C u C') - I(C) - I(C') - 2 C.C'`
pub fn union_index_slack(c: &CurveData, c2: &CurveData, tau: &Trivialization) -> Result<i64> {
    let u = union(c, c2)?;
    let d = dot(c, c2, tau)?;
    Ok(curve_ech_index(&u, tau)?
        - curve_ech_index(c, tau)?
        - curve_ech_index(c2, tau)?
        - d.doubled())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct JUnionSlack {
    /// `J0(C u C') - J0(C) - J0(C') - 2 C.C' - E - N`
    pub slack: i64,
    pub e_plus: i64,
    pub e_minus: i64,
    pub n_plus: i64,
    pub n_minus: i64,
}

impl JUnionSlack {
    pub fn e(&self) -> i64 {
        self.e_plus + self.e_minus
    }

    pub fn n(&self) -> i64 {
        self.n_plus + self.n_minus
    }
}

/// Elliptic orbits in both sets, and negative hyperbolic orbits with odd
/// multiplicity in both.
pub(crate) fn shared_counts(a: &OrbitSet, b: &OrbitSet) -> (i64, i64) {
    let (mut e, mut n) = (0, 0);
    for (o, m) in a.entries() {
        let m2 = b.mult_of(&o.id);
        if m2 == 0 {
            continue;
        }
        match o.kind {
            OrbitKind::Elliptic(_) => e += 1,
            OrbitKind::NegativeHyperbolic(_) if m % 2 == 1 && m2 % 2 == 1 => n += 1,
            _ => {}
        }
    }
    (e, n)
}

pub fn j_union_slack(c: &CurveData, c2: &CurveData, tau: &Trivialization) -> Result<JUnionSlack> {
    let u = union(c, c2)?;
    let d = dot(c, c2, tau)?;
    let (p1, m1) = curve_orbit_sets(c)?;
    let (p2, m2) = curve_orbit_sets(c2)?;
    let (e_plus, n_plus) = shared_counts(&p1, &p2);
    let (e_minus, n_minus) = shared_counts(&m1, &m2);
    let raw = curve_j0(&u, tau)? - curve_j0(c, tau)? - curve_j0(c2, tau)? - d.doubled();
    Ok(JUnionSlack {
        slack: raw - e_plus - e_minus - n_plus - n_minus,
        e_plus,
        e_minus,
        n_plus,
        n_minus,
    })
}

fn huge_terms(data: &LocalUnionData, prime: bool) -> Result<i64> {
    data.validate()?;
    let kind = &data.orbit;
    let off = data.offset;
    let m = data.total_mult();
    let m2 = data.total_mult_prime();
    let sum = |k: u32| {
        if prime {
            cz_sum_prime(kind, off, k)
        } else {
            cz_sum(kind, off, k)
        }
    };
    let tele = sum(m + m2)? - sum(m)? - sum(m2)?;
    let eps = i64::from(kind.is_elliptic());
    let mut rhs = 0;
    for (a, ca) in data.components.iter().enumerate() {
        for (b, cb) in data.components.iter().enumerate() {
            if a != b {
                rhs += 2 * i64::from(ca.degree * cb.degree_prime) * data.linking[a][b];
            }
        }
        let ends_cz: i64 = ca
            .ends
            .iter()
            .map(|q| cz_at(kind, off, *q))
            .sum::<Result<i64>>()?;
        rhs += i64::from(ca.degree * ca.degree_prime)
            * (-eps * ca.ends.len() as i64 + ends_cz + 2 * ca.writhe);
    }
    Ok(tele - rhs)
}

/// Per-orbit inequality behind the union bound, as `lhs - rhs`. All ends
/// are taken to be positive; negative ends are handled by passing the
/// mirrored orbit and negated writhes and linking numbers.
pub fn huge_slack(data: &LocalUnionData) -> Result<i64> {
    huge_terms(data, false)
}

/// Same as [`huge_slack`] with the top iterates dropped from the
/// telescoping sum.
pub fn j_huge_slack(data: &LocalUnionData) -> Result<i64> {
    huge_terms(data, true)
}

/// Contribution of one orbit to `E + N`.
pub fn local_correction(data: &LocalUnionData) -> i64 {
    let (m, m2) = (data.total_mult(), data.total_mult_prime());
    match data.orbit {
        OrbitKind::Elliptic(_) => i64::from(m > 0 && m2 > 0),
        OrbitKind::NegativeHyperbolic(_) => i64::from(m % 2 == 1 && m2 % 2 == 1),
        OrbitKind::PositiveHyperbolic(_) => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::super::{Covered, LocalComponent, PairTable};
    use super::*;
    use crate::model::End;

    fn plane(id: &str, kind: OrbitKind, c_ref: i64) -> CurveComponent {
        CurveComponent {
            id: id.into(),
            genus: 0,
            delta: 0,
            ends: vec![End {
                side: Side::Plus,
                orbit: OrbitClass::new("g", kind),
                mult: 1,
            }],
            c_ref,
            w_ref: 0,
        }
    }

    fn cylinder(id: &str, orbit: &str, kind: OrbitKind) -> CurveComponent {
        let o = OrbitClass::new(orbit, kind);
        CurveComponent {
            id: id.into(),
            genus: 0,
            delta: 0,
            ends: vec![
                End {
                    side: Side::Plus,
                    orbit: o.clone(),
                    mult: 1,
                },
                End {
                    side: Side::Minus,
                    orbit: o,
                    mult: 1,
                },
            ],
            c_ref: 0,
            w_ref: 0,
        }
    }

    fn e310() -> OrbitKind {
        OrbitKind::elliptic(3, 10, 9).unwrap()
    }

    fn tau(c: &CurveData) -> Trivialization {
        Trivialization::reference(c.orbits())
    }

    #[test]
    fn union_slack_values() {
        let c = CurveData::single(plane("A", e310(), 0), 0);
        assert_eq!(dot(&c, &c, &tau(&c)), Ok(HalfInt::from_int(-1)));
        assert_eq!(union_index_slack(&c, &c, &tau(&c)), Ok(2));
        let h = CurveData::single(plane("A", OrbitKind::PositiveHyperbolic(0), 1), 0);
        assert_eq!(union_index_slack(&h, &h, &tau(&h)), Ok(0));

        let a = CurveData::single(cylinder("A", "x", e310()), 0);
        let mut b = CurveData::single(cylinder("B", "y", e310()), 0);
        b.q.insert("A", "B", 0);
        b.intersections.insert("A", "B", 0);
        let t = tau(&union(&a, &b).unwrap());
        assert_eq!(dot(&a, &b, &t), Ok(HalfInt::from_int(0)));
        assert_eq!(union_index_slack(&a, &b, &t), Ok(0));
        let s = j_union_slack(&a, &b, &t).unwrap();
        assert_eq!((s.e(), s.n()), (0, 0));
    }

    #[test]
    fn dot_is_bilinear_in_degrees() {
        // g=1, one positive end at a positive hyperbolic orbit with CZ 0,
        // c=1: ind = 1 + 2 = 3, C.C = (0 + 3 + 1)/2 = 2.
        let mut comp = plane("A", OrbitKind::PositiveHyperbolic(0), 1);
        comp.genus = 1;
        let t = Trivialization::reference(comp.orbits());
        assert_eq!(self_intersection(&comp, &t), Ok(HalfInt::from_int(2)));
        let mk = |d| CurveData {
            components: vec![Covered {
                component: comp.clone(),
                degree: d,
            }],
            q: PairTable::default(),
            intersections: PairTable::default(),
        };
        assert_eq!(dot(&mk(2), &mk(3), &t), Ok(HalfInt::from_int(12)));
        assert_eq!(dot(&mk(3), &mk(2), &t), dot(&mk(2), &mk(3), &t));
    }

    #[test]
    fn missing_cross_data() {
        let a = CurveData::single(cylinder("A", "x", e310()), 0);
        let b = CurveData::single(cylinder("B", "y", e310()), 0);
        let t = tau(&union(&a, &b).unwrap());
        assert_eq!(
            dot(&a, &b, &t),
            Err(Error::MissingIntersectionData("A".into(), "B".into()))
        );
    }

    #[test]
    fn corrections() {
        let c = CurveData::single(plane("A", e310(), 0), 0);
        let s = j_union_slack(&c, &c, &tau(&c)).unwrap();
        assert_eq!((s.e_plus, s.n_plus), (1, 0));
        let h = CurveData::single(plane("A", OrbitKind::NegativeHyperbolic(1), 1), 0);
        let s = j_union_slack(&h, &h, &tau(&h)).unwrap();
        assert_eq!((s.e(), s.n()), (0, 1));
    }

    fn local(orbit: OrbitKind, ends: Vec<u32>, w: i64) -> LocalUnionData {
        LocalUnionData {
            orbit,
            offset: 0,
            components: vec![LocalComponent {
                ends,
                degree: 1,
                degree_prime: 1,
                writhe: w,
            }],
            linking: vec![vec![0]],
        }
    }

    #[test]
    fn huge_values() {
        // CZ of the second iterate is 1 at 3/10 and 3 at 7/10
        assert_eq!(huge_slack(&local(e310(), vec![1], 0)), Ok(0));
        let e7 = OrbitKind::elliptic(7, 10, 9).unwrap();
        assert_eq!(huge_slack(&local(e7.clone(), vec![1], 0)), Ok(2));
        assert_eq!(huge_slack(&local(e7, vec![1], 1)), Ok(0));
        // all-zero data: only the telescoping sum remains
        let z = LocalUnionData {
            components: vec![LocalComponent {
                ends: vec![2],
                degree: 1,
                degree_prime: 0,
                writhe: 0,
            }],
            ..local(e310(), vec![], 0)
        };
        assert_eq!(huge_slack(&z), Ok(0));
        assert_eq!(local_correction(&z), 0);
        // a positive hyperbolic end at its writhe bound
        let h = OrbitKind::PositiveHyperbolic(2);
        let w = super::super::bounds::uwb(&h, 0, &[3]).unwrap();
        assert_eq!(huge_slack(&local(h, vec![3], w)), Ok(0));
    }
}
