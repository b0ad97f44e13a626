use serde::{Deserialize, Serialize};

use super::union::{curve_ech_index, curve_orbit_sets, q_tau};
use super::{CurveComponent, CurveData, HalfInt};
use crate::cz::{cz_sum, mu_total, mu_zero};
use crate::error::{Error, Result};
use crate::model::{Side, Trivialization};
use crate::partitions::{p_in_kind, p_out_kind, Partition};

/// `c_tau(C)` from the reference value.
pub fn c_tau(c: &CurveComponent, tau: &Trivialization) -> Result<i64> {
    let mut v = c.c_ref;
    for e in &c.ends {
        v += e.side.sign() * i64::from(e.mult) * tau.offset(&e.orbit.id)?;
    }
    Ok(v)
}

/// `w_tau(C)`: the writhe of the braid at each orbit changes by
/// `-m(m-1)` per unit of offset, with the sign of the side.
pub fn writhe_tau(c: &CurveComponent, tau: &Trivialization) -> Result<i64> {
    let mut w = c.w_ref;
    for ((side, id), m) in c.totals() {
        let m = i64::from(m);
        w -= side.sign() * m * (m - 1) * tau.offset(&id)?;
    }
    Ok(w)
}

/// `ind(C) = -chi(C) + 2 c_tau(C) + mu0_tau(C)`, independent of `tau`.
pub fn fredholm_index(c: &CurveComponent, tau: &Trivialization) -> Result<i64> {
    Ok(-c.chi() + 2 * c_tau(c, tau)? + mu_zero(&c.ends, tau)?)
}

/// `c - (chi + Q + w - 2 delta)` in the reference trivialization; zero for
/// data satisfying the relative adjunction formula.
pub fn adjunction_residual(c: &CurveComponent, q_self: i64) -> i64 {
    c.c_ref - (c.chi() + q_self + c.w_ref - 2 * i64::from(c.delta))
}

/// `C . C = (2g - 2 + ind + h + 4 delta) / 2` for a curve in a
/// symplectization.
pub fn self_intersection(c: &CurveComponent, tau: &Trivialization) -> Result<HalfInt> {
    let ind = fredholm_index(c, tau)?;
    Ok(HalfInt(
        2 * i64::from(c.genus) - 2 + ind + c.hyperbolic_ends() + 4 * i64::from(c.delta),
    ))
}

/// Ends at one orbit on one side compared with the extremal partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitVerdict {
    pub side: Side,
    pub orbit: String,
    pub ends: Partition,
    pub extremal: Partition,
    pub matches: bool,
    /// `+-(sum_{k<=m} CZ(gamma^k) - sum_i CZ(gamma^{q_i}))`
    pub writhe_bound: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexReport {
    pub ind: i64,
    pub ech_index: i64,
    pub delta: i64,
    /// `mu_tau(C) - mu0_tau(C)`
    pub writhe_bound: i64,
    /// `w_tau(C)` as forced by the adjunction formula.
    pub writhe: i64,
    /// Declared `w_tau(C)` and adjunction residual, for a single component.
    pub declared_writhe: Option<i64>,
    pub adjunction_residual: Option<i64>,
    pub slack: i64,
    pub holds: bool,
    pub equality_admissible: bool,
    pub orbits: Vec<OrbitVerdict>,
}

/// Compares `ind(C)` with `I(C) - 2 delta(C)` for a simple curve.
pub fn index_inequality_report(curve: &CurveData, tau: &Trivialization) -> Result<IndexReport> {
    for c in &curve.components {
        if c.degree != 1 {
            return Err(Error::NotSimple(c.component.id.clone(), c.degree));
        }
    }
    let comps: Vec<&CurveComponent> = curve.components.iter().map(|c| &c.component).collect();
    let mut ind = 0;
    let mut delta = 0;
    let mut chi = 0;
    let mut c_total = 0;
    let mut q_total = 0;
    let mut ends = Vec::new();
    for (i, a) in comps.iter().enumerate() {
        ind += fredholm_index(a, tau)?;
        delta += i64::from(a.delta);
        chi += a.chi();
        c_total += c_tau(a, tau)?;
        ends.extend(a.ends.iter().cloned());
        for (j, b) in comps.iter().enumerate() {
            q_total += q_tau(curve, a, b, tau)?;
            if j > i {
                delta += curve.intersections.require(&a.id, &b.id)?;
            }
        }
    }
    let i_val = curve_ech_index(curve, tau)?;
    let (plus, minus) = curve_orbit_sets(curve)?;
    let writhe_bound = mu_total(&plus, tau)? - mu_total(&minus, tau)? - mu_zero(&ends, tau)?;
    let writhe = c_total - chi - q_total + 2 * delta;
    let slack = writhe_bound - writhe;
    debug_assert_eq!(i_val - 2 * delta - ind, slack);

    let mut groups: std::collections::BTreeMap<
        (Side, String),
        (crate::model::OrbitClass, Vec<u32>),
    > = std::collections::BTreeMap::new();
    for a in &comps {
        for (k, (o, qs)) in a.groups() {
            groups
                .entry(k)
                .or_insert_with(|| (o, Vec::new()))
                .1
                .extend(qs);
        }
    }
    let mut orbits = Vec::new();
    for ((side, id), (o, qs)) in groups {
        let ends = Partition::new(qs.clone());
        let m = ends.total();
        let extremal = match side {
            Side::Plus => p_out_kind(&o.kind, m)?.0,
            Side::Minus => p_in_kind(&o.kind, m)?.0,
        };
        let off = tau.offset(&id)?;
        let ends_cz: i64 = qs
            .iter()
            .map(|q| crate::cz::cz_at(&o.kind, off, *q))
            .sum::<Result<i64>>()?;
        let bound = side.sign() * (cz_sum(&o.kind, off, m)? - ends_cz);
        orbits.push(OrbitVerdict {
            side,
            orbit: id,
            matches: ends == extremal,
            ends,
            extremal,
            writhe_bound: bound,
        });
    }
    let (declared_writhe, residual) = match comps.as_slice() {
        [a] => {
            let q_self = curve.q.require(&a.id, &a.id)?;
            (
                Some(writhe_tau(a, tau)?),
                Some(adjunction_residual(a, q_self)),
            )
        }
        _ => (None, None),
    };
    Ok(IndexReport {
        ind,
        ech_index: i_val,
        delta,
        writhe_bound,
        writhe,
        declared_writhe,
        adjunction_residual: residual,
        slack,
        holds: ind <= i_val - 2 * delta,
        equality_admissible: orbits.iter().all(|o| o.matches),
        orbits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{End, OrbitClass, OrbitKind};

    fn comp(kind: OrbitKind, ends: &[(Side, u32)], c_ref: i64, w_ref: i64) -> CurveComponent {
        let o = OrbitClass::new("g", kind);
        CurveComponent {
            id: "A".into(),
            genus: 0,
            delta: 0,
            ends: ends
                .iter()
                .map(|(side, mult)| End {
                    side: *side,
                    orbit: o.clone(),
                    mult: *mult,
                })
                .collect(),
            c_ref,
            w_ref,
        }
    }

    #[test]
    fn index_values() {
        let c = comp(OrbitKind::PositiveHyperbolic(2), &[(Side::Plus, 3)], 1, 0);
        let t = Trivialization::reference(c.orbits());
        assert_eq!(fredholm_index(&c, &t), Ok(7));
        assert_eq!(fredholm_index(&c, &t.clone().with("g", 2)), Ok(7));
    }

    #[test]
    fn self_intersections() {
        let e = OrbitKind::elliptic(3, 10, 9).unwrap();
        let cyl = comp(e, &[(Side::Plus, 1), (Side::Minus, 1)], 0, 0);
        let t = Trivialization::reference(cyl.orbits());
        assert!(cyl.is_trivial_cylinder());
        assert_eq!(self_intersection(&cyl, &t), Ok(HalfInt::from_int(-1)));
        let hyp = comp(
            OrbitKind::PositiveHyperbolic(0),
            &[(Side::Plus, 1), (Side::Minus, 1)],
            0,
            0,
        );
        assert_eq!(self_intersection(&hyp, &t), Ok(HalfInt::from_int(0)));
    }

    #[test]
    fn adjunction() {
        let c = comp(
            OrbitKind::elliptic(3, 10, 9).unwrap(),
            &[(Side::Plus, 2)],
            1,
            0,
        );
        assert_eq!(adjunction_residual(&c, 0), 0);
        assert_eq!(adjunction_residual(&c, 1), -1);
    }

    #[test]
    fn report_for_extremal_end() {
        let c = comp(
            OrbitKind::elliptic(3, 10, 9).unwrap(),
            &[(Side::Plus, 4)],
            1,
            0,
        );
        let curve = CurveData::single(c, 0);
        let t = Trivialization::reference(curve.orbits());
        let r = index_inequality_report(&curve, &t).unwrap();
        assert!(r.equality_admissible);
        assert_eq!(r.adjunction_residual, Some(0));
        assert_eq!(r.declared_writhe, Some(r.writhe));
        assert_eq!(r.ech_index - 2 * r.delta - r.ind, r.slack);
        let c = comp(
            OrbitKind::elliptic(3, 10, 9).unwrap(),
            &[(Side::Plus, 2), (Side::Plus, 2)],
            0,
            0,
        );
        let r = index_inequality_report(&CurveData::single(c, 0), &t).unwrap();
        assert!(!r.equality_admissible);
    }
}
