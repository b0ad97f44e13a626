//! Punctured curves in symplectizations and cobordisms, recorded through
//! their topological data, and the index bounds relating them to the
//! relative index.

mod bounds;
mod index;
mod jbound;
mod union;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use bounds::{
    linking_bound, max_writhe, rho, uwb, writhe_bound, LocalComponent, LocalUnionData, WritheBounds,
};
pub use index::{
    adjunction_residual, c_tau, fredholm_index, index_inequality_report, self_intersection,
    writhe_tau, IndexReport, OrbitVerdict,
};
pub use jbound::{
    euler_bound_check, j_bound_rhs, j_bound_summand, j_plus_pipeline, j_writhe_max,
    size_union_identity, JPlusReport, JPlusStep,
};
pub use union::{
    curve_ech_index, curve_j0, curve_j_plus, curve_orbit_sets, dot, huge_slack, j_huge_slack,
    j_union_slack, local_correction, union, union_index_slack, JUnionSlack,
};

use crate::error::{Error, Result};
use crate::model::{End, EntryDoc, OrbitClass, OrbitTable, Side};

/// Number stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(pub i64);

impl HalfInt {
    pub fn from_int(v: i64) -> Self {
        HalfInt(2 * v)
    }

    pub fn doubled(&self) -> i64 {
        self.0
    }

    pub fn is_integer(&self) -> bool {
        self.0 % 2 == 0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_integer() {
            s.serialize_i64(self.0 / 2)
        } else {
            s.serialize_f64(self.0 as f64 / 2.0)
        }
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = f64::deserialize(d)?;
        let t = v * 2.0;
        if t.fract() != 0.0 {
            return Err(serde::de::Error::custom("not a multiple of 1/2"));
        }
        Ok(HalfInt(t as i64))
    }
}

/// Symmetric table of integers indexed by pairs of component ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PairTable(BTreeMap<String, BTreeMap<String, i64>>);

impl PairTable {
    pub fn get(&self, a: &str, b: &str) -> Option<i64> {
        self.0
            .get(a)
            .and_then(|r| r.get(b))
            .or_else(|| self.0.get(b).and_then(|r| r.get(a)))
            .copied()
    }

    pub fn require(&self, a: &str, b: &str) -> Result<i64> {
        self.get(a, b)
            .ok_or_else(|| Error::MissingIntersectionData(a.to_string(), b.to_string()))
    }

    pub fn insert(&mut self, a: &str, b: &str, v: i64) {
        if let Some(row) = self.0.get_mut(b) {
            if row.contains_key(a) {
                row.insert(a.to_string(), v);
                return;
            }
        }
        self.0
            .entry(a.to_string())
            .or_default()
            .insert(b.to_string(), v);
    }

    /// Entries of `other` are added; conflicting values are an error.
    pub fn merge(&mut self, other: &PairTable) -> Result<()> {
        for (a, row) in &other.0 {
            for (b, v) in row {
                match self.get(a, b) {
                    Some(x) if x != *v => {
                        return Err(Error::InconsistentData(format!(
                            "conflicting table entries for ({a}, {b})"
                        )))
                    }
                    Some(_) => {}
                    None => self.insert(a, b, *v),
                }
            }
        }
        Ok(())
    }
}

/// Simple irreducible curve, described by its genus, singularity count,
/// ends, relative first Chern class and asymptotic writhe in the
/// reference trivialization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveComponent {
    pub id: String,
    pub genus: u32,
    pub delta: u32,
    pub ends: Vec<End>,
    pub c_ref: i64,
    pub w_ref: i64,
}

impl CurveComponent {
    pub fn chi(&self) -> i64 {
        2 - 2 * i64::from(self.genus) - self.ends.len() as i64
    }

    pub fn hyperbolic_ends(&self) -> i64 {
        self.ends
            .iter()
            .filter(|e| e.orbit.kind.is_hyperbolic())
            .count() as i64
    }

    pub fn has_positive_end(&self) -> bool {
        self.ends.iter().any(|e| e.side == Side::Plus)
    }

    /// Cylinder over an orbit: genus zero, one positive and one negative end
    /// of multiplicity one at the same orbit.
    pub fn is_trivial_cylinder(&self) -> bool {
        self.genus == 0
            && self.delta == 0
            && self.ends.len() == 2
            && self.ends[0].orbit == self.ends[1].orbit
            && self.ends.iter().all(|e| e.mult == 1)
            && self.ends[0].side != self.ends[1].side
    }

    /// Ends grouped by side and orbit.
    pub fn groups(&self) -> BTreeMap<(Side, String), (OrbitClass, Vec<u32>)> {
        let mut g: BTreeMap<(Side, String), (OrbitClass, Vec<u32>)> = BTreeMap::new();
        for e in &self.ends {
            g.entry((e.side, e.orbit.id.clone()))
                .or_insert_with(|| (e.orbit.clone(), Vec::new()))
                .1
                .push(e.mult);
        }
        g
    }

    /// Total multiplicity of the ends at each side and orbit.
    pub fn totals(&self) -> BTreeMap<(Side, String), u32> {
        self.groups()
            .into_iter()
            .map(|(k, (_, qs))| (k, qs.iter().sum()))
            .collect()
    }

    pub fn orbits(&self) -> impl Iterator<Item = &OrbitClass> {
        self.ends.iter().map(|e| &e.orbit)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Covered {
    pub component: CurveComponent,
    pub degree: u32,
}

/// Union of covers of distinct simple components, with the relative
/// intersection pairings `Q(C_a, C_b)` in the reference trivialization and
/// the intersection numbers of distinct components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveData {
    pub components: Vec<Covered>,
    pub q: PairTable,
    pub intersections: PairTable,
}

impl CurveData {
    pub fn single(component: CurveComponent, q_self: i64) -> Self {
        let mut q = PairTable::default();
        q.insert(&component.id, &component.id, q_self);
        CurveData {
            components: vec![Covered {
                component,
                degree: 1,
            }],
            q,
            intersections: PairTable::default(),
        }
    }

    pub fn orbits(&self) -> impl Iterator<Item = &OrbitClass> {
        self.components.iter().flat_map(|c| c.component.orbits())
    }

    pub fn to_doc(&self) -> CurveDataDoc {
        let orbits = self
            .orbits()
            .map(|o| (o.id.clone(), o.kind.clone()))
            .collect();
        CurveDataDoc {
            orbits,
            components: self
                .components
                .iter()
                .map(|c| ComponentDoc {
                    id: c.component.id.clone(),
                    genus: c.component.genus,
                    delta: c.component.delta,
                    ends: c
                        .component
                        .ends
                        .iter()
                        .map(|e| EndDoc {
                            side: e.side,
                            entry: EntryDoc {
                                orbit: e.orbit.id.clone(),
                                mult: e.mult,
                            },
                        })
                        .collect(),
                    c_ref: c.component.c_ref,
                    w_ref: c.component.w_ref,
                    degree: c.degree,
                })
                .collect(),
            q: self.q.clone(),
            intersections: self.intersections.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndDoc {
    pub side: Side,
    #[serde(flatten)]
    pub entry: EntryDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentDoc {
    pub id: String,
    #[serde(default)]
    pub genus: u32,
    #[serde(default)]
    pub delta: u32,
    pub ends: Vec<EndDoc>,
    pub c_ref: i64,
    #[serde(default)]
    pub w_ref: i64,
    #[serde(default = "one")]
    pub degree: u32,
}

fn one() -> u32 {
    1
}

/// Wire form of [`CurveData`]; ends refer to orbits by id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveDataDoc {
    pub orbits: OrbitTable,
    pub components: Vec<ComponentDoc>,
    #[serde(default)]
    pub q: PairTable,
    #[serde(default)]
    pub intersections: PairTable,
}

impl CurveDataDoc {
    pub fn resolve(&self) -> Result<CurveData> {
        let mut components = Vec::new();
        for c in &self.components {
            let ends = c
                .ends
                .iter()
                .map(|e| {
                    let kind = self
                        .orbits
                        .get(&e.entry.orbit)
                        .ok_or_else(|| Error::UnknownOrbit(e.entry.orbit.clone()))?;
                    kind.check_mult(e.entry.mult)?;
                    if e.entry.mult == 0 {
                        return Err(Error::ZeroMultiplicity(e.entry.orbit.clone()));
                    }
                    Ok(End {
                        side: e.side,
                        orbit: OrbitClass::new(e.entry.orbit.clone(), kind.clone()),
                        mult: e.entry.mult,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            components.push(Covered {
                component: CurveComponent {
                    id: c.id.clone(),
                    genus: c.genus,
                    delta: c.delta,
                    ends,
                    c_ref: c.c_ref,
                    w_ref: c.w_ref,
                },
                degree: c.degree,
            });
        }
        let mut ids = std::collections::BTreeSet::new();
        for c in &components {
            if !ids.insert(c.component.id.clone()) {
                return Err(Error::InconsistentData(format!(
                    "component '{}' listed twice",
                    c.component.id
                )));
            }
        }
        Ok(CurveData {
            components,
            q: self.q.clone(),
            intersections: self.intersections.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_int_json() {
        assert_eq!(serde_json::to_string(&HalfInt(-1)).unwrap(), "-0.5");
        assert_eq!(serde_json::to_string(&HalfInt(4)).unwrap(), "2");
        assert_eq!(serde_json::from_str::<HalfInt>("1.5").unwrap(), HalfInt(3));
        assert!(serde_json::from_str::<HalfInt>("0.25").is_err());
        assert_eq!(HalfInt(-3).to_string(), "-3/2");
    }

    #[test]
    fn pair_table_is_symmetric() {
        let mut t = PairTable::default();
        t.insert("a", "b", 2);
        assert_eq!(t.get("b", "a"), Some(2));
        t.insert("b", "a", 3);
        assert_eq!(t.get("a", "b"), Some(3));
        let mut u = PairTable::default();
        u.insert("b", "a", 4);
        assert!(t.merge(&u).is_err());
        assert!(t.require("a", "c").is_err());
    }

    #[test]
    fn doc_round_trip() {
        let text = r#"{"orbits":{"e":{"kind":"elliptic","p":3,"q":10,"k_max":9}},
            "components":[{"id":"A","genus":0,"delta":0,
              "ends":[{"side":"plus","orbit":"e","mult":2}],"c_ref":1,"w_ref":0,"degree":1}],
            "q":{"A":{"A":0}},"intersections":{}}"#;
        let doc: CurveDataDoc = serde_json::from_str(text).unwrap();
        let data = doc.resolve().unwrap();
        assert_eq!(data.components[0].component.chi(), 1);
        assert_eq!(data.to_doc(), doc);
    }
}
