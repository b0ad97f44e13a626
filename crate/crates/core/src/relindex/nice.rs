use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cz::mu_total;
use crate::error::{Error, Result};
use crate::model::{OrbitSet, Side, Trivialization};

/// One end of a nicely embedded representative surface. The braid at the
/// end splits into a reduced braid `zeta_hat` on `reduced` strands and
/// `mult - reduced` parallel copies of the orbit itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NiceEnd {
    pub orbit: String,
    pub side: Side,
    pub mult: u32,
    pub reduced: u32,
    /// Writhe of the reduced braid.
    pub writhe: i64,
    /// Winding of the reduced braid around the orbit.
    pub winding: i64,
    /// Difference between the conormal framing and the trivialization on
    /// the reduced braid.
    pub conormal_shift: i64,
    pub offset: i64,
}

impl NiceEnd {
    fn common(&self) -> i64 {
        i64::from(self.mult - self.reduced)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NiceRepData {
    pub ends: Vec<NiceEnd>,
    /// Relative first Chern class of the surface in the conormal framing.
    pub conormal_c1: i64,
}

impl NiceRepData {
    pub fn trivialization(&self) -> Trivialization {
        Trivialization::new(
            self.ends
                .iter()
                .map(|e| (e.orbit.clone(), e.offset))
                .collect(),
        )
    }

    /// Signed totals `(w, eta, l)` over both sides.
    fn totals(&self) -> (i64, i64, i64) {
        let (mut w, mut eta, mut l) = (0, 0, 0);
        for e in &self.ends {
            let s = e.side.sign();
            w += s * e.writhe;
            eta += s * e.winding;
            l += s * e.common() * e.winding;
        }
        (w, eta, l)
    }

    /// Fills in the conormal data that make the surface consistent with the
    /// relative first Chern class `c_ref`.
    pub fn with_consistent_conormal(mut self, c_ref: i64) -> Self {
        for e in &mut self.ends {
            e.conormal_shift = e.winding;
        }
        let (_, eta, _) = self.totals();
        self.conormal_c1 = c_ref + eta;
        self
    }

    fn validate(&self) -> Result<()> {
        let mut seen: BTreeMap<(&str, Side), ()> = BTreeMap::new();
        for e in &self.ends {
            if e.reduced > e.mult {
                return Err(Error::InconsistentData(format!(
                    "end at '{}' has more reduced strands than its multiplicity",
                    e.orbit
                )));
            }
            if e.reduced == 0 && (e.writhe != 0 || e.winding != 0 || e.conormal_shift != 0) {
                return Err(Error::InconsistentData(format!(
                    "empty reduced braid at '{}' carries invariants",
                    e.orbit
                )));
            }
            if seen.insert((&e.orbit, e.side), ()).is_some() {
                return Err(Error::DuplicateOrbit(e.orbit.clone()));
            }
        }
        for p in self.ends.iter().filter(|e| e.side == Side::Plus) {
            let partner = self
                .ends
                .iter()
                .find(|n| n.side == Side::Minus && n.orbit == p.orbit);
            match partner {
                Some(n) => {
                    if n.offset != p.offset {
                        return Err(Error::MismatchedTrivializations(p.orbit.clone()));
                    }
                    if n.common() != p.common() || (p.reduced > 0 && n.reduced > 0) {
                        return Err(Error::InconsistentData(format!(
                            "shared orbit '{}' does not split consistently",
                            p.orbit
                        )));
                    }
                }
                None if p.common() != 0 => {
                    return Err(Error::InconsistentData(format!(
                        "orbit '{}' has common strands but no partner end",
                        p.orbit
                    )));
                }
                None => {}
            }
        }
        for n in self.ends.iter().filter(|e| e.side == Side::Minus) {
            let shared = self
                .ends
                .iter()
                .any(|p| p.side == Side::Plus && p.orbit == n.orbit);
            if !shared && n.common() != 0 {
                return Err(Error::InconsistentData(format!(
                    "orbit '{}' has common strands but no partner end",
                    n.orbit
                )));
            }
        }
        Ok(())
    }

    fn check_sets(&self, a: &OrbitSet, b: &OrbitSet) -> Result<()> {
        for (set, side) in [(a, Side::Plus), (b, Side::Minus)] {
            let ends: Vec<&NiceEnd> = self.ends.iter().filter(|e| e.side == side).collect();
            for (o, m) in set.entries() {
                match ends.iter().find(|e| e.orbit == o.id) {
                    Some(e) if e.mult == *m => {}
                    _ => {
                        return Err(Error::InconsistentData(format!(
                            "orbit '{}' does not match the nice representative",
                            o.id
                        )))
                    }
                }
            }
            if ends.iter().any(|e| set.mult_of(&e.orbit) == 0) {
                return Err(Error::InconsistentData(
                    "representative has extra ends".into(),
                ));
            }
        }
        Ok(())
    }
}

/// `Q_tau(Z) = -w_tau(S) - eta_tau(S) - 2 l_tau(S, R x gamma)` for a nice
/// representative `S`.
pub fn q_from_nice_rep(data: &NiceRepData) -> Result<i64> {
    data.validate()?;
    let (w, eta, l) = data.totals();
    Ok(-w - eta - 2 * l)
}

/// Both sides of the comparison between absolute and relative gradings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbsRelSides {
    /// `P(L+) - P(L-)` in the trivializations of the ends, obtained from the
    /// conormal framing.
    pub p_difference: i64,
    /// `c_tau(Z) - eta_tau(S)`
    pub c_minus_eta: i64,
    /// `I(alpha) - I(beta)` from the absolute gradings.
    pub absolute: i64,
    /// `I(alpha, beta, Z)` from the relative class.
    pub relative: i64,
}

pub fn abs_rel_sides(
    a: &OrbitSet,
    b: &OrbitSet,
    data: &NiceRepData,
    c_ref: i64,
) -> Result<AbsRelSides> {
    data.validate()?;
    data.check_sets(a, b)?;
    let tau = data.trivialization();
    let (w, eta, l) = data.totals();
    let shift: i64 = data
        .ends
        .iter()
        .map(|e| e.side.sign() * e.conormal_shift)
        .sum();
    let p_difference = data.conormal_c1 - 2 * shift;
    // Writhes of the full braids: reduced parts plus twice the linking with
    // the common strands; braids shared by both sides cancel.
    let full_writhe = w + 2 * l;
    let q = q_from_nice_rep(data)?;
    let mu = mu_total(a, &tau)? - mu_total(b, &tau)?;
    Ok(AbsRelSides {
        p_difference,
        c_minus_eta: c_ref - eta,
        absolute: p_difference - full_writhe + mu,
        relative: c_ref + q + mu,
    })
}

pub fn check_abs_vs_rel(
    a: &OrbitSet,
    b: &OrbitSet,
    data: &NiceRepData,
    c_ref: i64,
) -> Result<bool> {
    let s = abs_rel_sides(a, b, data, c_ref)?;
    debug_assert_eq!(s.p_difference == s.c_minus_eta, s.absolute == s.relative);
    Ok(s.absolute == s.relative)
}
