use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::angle::{validate_angle, MonodromyAngle};
use crate::error::{Error, Result};

/// Linearized return map type of a nondegenerate Reeb orbit, with
/// respect to the reference trivialization.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "OrbitRepr", into = "OrbitRepr")]
pub enum OrbitKind {
    Elliptic(MonodromyAngle),
    /// Rotation number `n/2` with `n` even.
    PositiveHyperbolic(i64),
    /// Rotation number `n/2` with `n` odd.
    NegativeHyperbolic(i64),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind")]
enum OrbitRepr {
    #[serde(rename = "elliptic")]
    Elliptic { p: i64, q: i64, k_max: u32 },
    #[serde(rename = "hyp+")]
    PositiveHyperbolic { n: i64 },
    #[serde(rename = "hyp-")]
    NegativeHyperbolic { n: i64 },
}

impl TryFrom<OrbitRepr> for OrbitKind {
    type Error = Error;
    fn try_from(r: OrbitRepr) -> Result<Self> {
        match r {
            OrbitRepr::Elliptic { p, q, k_max } => OrbitKind::elliptic(p, q, k_max),
            OrbitRepr::PositiveHyperbolic { n } => OrbitKind::positive_hyperbolic(n),
            OrbitRepr::NegativeHyperbolic { n } => OrbitKind::negative_hyperbolic(n),
        }
    }
}

impl From<OrbitKind> for OrbitRepr {
    fn from(k: OrbitKind) -> Self {
        match k {
            OrbitKind::Elliptic(a) => OrbitRepr::Elliptic {
                p: a.p(),
                q: a.q(),
                k_max: a.k_max(),
            },
            OrbitKind::PositiveHyperbolic(n) => OrbitRepr::PositiveHyperbolic { n },
            OrbitKind::NegativeHyperbolic(n) => OrbitRepr::NegativeHyperbolic { n },
        }
    }
}

impl OrbitKind {
    pub fn elliptic(p: i64, q: i64, k_max: u32) -> Result<Self> {
        Ok(OrbitKind::Elliptic(validate_angle(p, q, k_max)?))
    }

    pub fn positive_hyperbolic(n: i64) -> Result<Self> {
        if n.rem_euclid(2) != 0 {
            return Err(Error::BadParity { kind: "hyp+", n });
        }
        Ok(OrbitKind::PositiveHyperbolic(n))
    }

    pub fn negative_hyperbolic(n: i64) -> Result<Self> {
        if n.rem_euclid(2) != 1 {
            return Err(Error::BadParity { kind: "hyp-", n });
        }
        Ok(OrbitKind::NegativeHyperbolic(n))
    }

    pub fn is_elliptic(&self) -> bool {
        matches!(self, OrbitKind::Elliptic(_))
    }

    pub fn is_hyperbolic(&self) -> bool {
        !self.is_elliptic()
    }

    pub fn is_negative_hyperbolic(&self) -> bool {
        matches!(self, OrbitKind::NegativeHyperbolic(_))
    }

    pub fn angle(&self) -> Option<&MonodromyAngle> {
        match self {
            OrbitKind::Elliptic(a) => Some(a),
            _ => None,
        }
    }

    /// Fails if multiplicity `k` lies past the irrationality horizon.
    pub fn check_mult(&self, k: u32) -> Result<()> {
        match self {
            OrbitKind::Elliptic(a) => a.check(k),
            _ => Ok(()),
        }
    }

    /// Same orbit described relative to a trivialization shifted by `offset`.
    pub fn reframed(&self, offset: i64) -> Self {
        match self {
            OrbitKind::Elliptic(a) => OrbitKind::Elliptic(a.shifted(offset)),
            OrbitKind::PositiveHyperbolic(n) => OrbitKind::PositiveHyperbolic(n - 2 * offset),
            OrbitKind::NegativeHyperbolic(n) => OrbitKind::NegativeHyperbolic(n - 2 * offset),
        }
    }

    /// Orientation-reversed orbit: every Conley-Zehnder index changes sign.
    pub fn mirrored(&self) -> Self {
        match self {
            OrbitKind::Elliptic(a) => OrbitKind::Elliptic(a.negated()),
            OrbitKind::PositiveHyperbolic(n) => OrbitKind::PositiveHyperbolic(-n),
            OrbitKind::NegativeHyperbolic(n) => OrbitKind::NegativeHyperbolic(-n),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            OrbitKind::Elliptic(_) => "elliptic",
            OrbitKind::PositiveHyperbolic(_) => "hyp+",
            OrbitKind::NegativeHyperbolic(_) => "hyp-",
        }
    }
}

impl fmt::Display for OrbitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitKind::Elliptic(a) => write!(f, "elliptic {a}"),
            OrbitKind::PositiveHyperbolic(n) => write!(f, "hyp+ n={n}"),
            OrbitKind::NegativeHyperbolic(n) => write!(f, "hyp- n={n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbitClass {
    pub id: String,
    pub kind: OrbitKind,
}

impl OrbitClass {
    pub fn new(id: impl Into<String>, kind: OrbitKind) -> Self {
        OrbitClass {
            id: id.into(),
            kind,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn sign(self) -> i64 {
        match self {
            Side::Plus => 1,
            Side::Minus => -1,
        }
    }
}

/// A finite set of orbits with positive multiplicities, stored sorted by id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSet {
    side: Side,
    entries: Vec<(OrbitClass, u32)>,
}

impl OrbitSet {
    pub fn new(side: Side, entries: Vec<(OrbitClass, u32)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (o, m) in &entries {
            if !seen.insert(o.id.clone()) {
                return Err(Error::DuplicateOrbit(o.id.clone()));
            }
            if *m == 0 {
                return Err(Error::ZeroMultiplicity(o.id.clone()));
            }
        }
        let mut entries = entries;
        entries.sort_by(|a, b| a.0.id.cmp(&b.0.id));
        Ok(OrbitSet { side, entries })
    }

    pub fn empty(side: Side) -> Self {
        OrbitSet {
            side,
            entries: Vec::new(),
        }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn entries(&self) -> &[(OrbitClass, u32)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn orbits(&self) -> impl Iterator<Item = &OrbitClass> {
        self.entries.iter().map(|(o, _)| o)
    }

    pub fn mult_of(&self, id: &str) -> u32 {
        self.entries
            .iter()
            .find(|(o, _)| o.id == id)
            .map_or(0, |(_, m)| *m)
    }

    /// Total multiplicity, the homological degree over the orbits.
    pub fn total(&self) -> u64 {
        self.entries.iter().map(|(_, m)| u64::from(*m)).sum()
    }

    /// Same entries on the other side.
    pub fn with_side(&self, side: Side) -> Self {
        OrbitSet {
            side,
            entries: self.entries.clone(),
        }
    }

    /// Product of orbit sets: multiplicities of shared orbits add.
    pub fn product(&self, other: &OrbitSet) -> Result<OrbitSet> {
        let mut map: BTreeMap<String, (OrbitClass, u32)> = BTreeMap::new();
        for (o, m) in self.entries.iter().chain(other.entries.iter()) {
            match map.get_mut(&o.id) {
                Some((existing, mm)) => {
                    if existing.kind != o.kind {
                        return Err(Error::InconsistentData(format!(
                            "orbit '{}' has two different descriptions",
                            o.id
                        )));
                    }
                    *mm += m;
                }
                None => {
                    map.insert(o.id.clone(), (o.clone(), *m));
                }
            }
        }
        Ok(OrbitSet {
            side: self.side,
            entries: map.into_values().collect(),
        })
    }

    /// Entries compared without regard to side.
    pub fn same_orbits(&self, other: &OrbitSet) -> bool {
        self.entries == other.entries
    }

    pub fn to_doc(&self) -> OrbitSetDoc {
        OrbitSetDoc {
            side: self.side,
            entries: self
                .entries
                .iter()
                .map(|(o, m)| EntryDoc {
                    orbit: o.id.clone(),
                    mult: *m,
                })
                .collect(),
        }
    }
}

/// End of a curve: an orbit, a side and a covering multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct End {
    pub side: Side,
    pub orbit: OrbitClass,
    pub mult: u32,
}

/// Trivialization over a set of orbits, recorded as integer offsets from
/// the reference trivialization. Lookups are strict.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Trivialization {
    offsets: BTreeMap<String, i64>,
}

impl Trivialization {
    pub fn new(offsets: BTreeMap<String, i64>) -> Self {
        Trivialization { offsets }
    }

    /// The reference trivialization over the given orbits.
    pub fn reference<'a>(orbits: impl IntoIterator<Item = &'a OrbitClass>) -> Self {
        Trivialization {
            offsets: orbits.into_iter().map(|o| (o.id.clone(), 0)).collect(),
        }
    }

    pub fn offset(&self, id: &str) -> Result<i64> {
        self.offsets
            .get(id)
            .copied()
            .ok_or_else(|| Error::MissingOffset(id.to_string()))
    }

    pub fn set(&mut self, id: impl Into<String>, offset: i64) {
        self.offsets.insert(id.into(), offset);
    }

    pub fn with(mut self, id: impl Into<String>, offset: i64) -> Self {
        self.set(id, offset);
        self
    }

    pub fn offsets(&self) -> &BTreeMap<String, i64> {
        &self.offsets
    }

    /// Offsets add: shifting by `self` and then by `other`.
    pub fn compose(&self, other: &Trivialization) -> Trivialization {
        let mut offsets = self.offsets.clone();
        for (id, o) in &other.offsets {
            *offsets.entry(id.clone()).or_insert(0) += o;
        }
        Trivialization { offsets }
    }

    /// Copy that answers 0 for any of `orbits` it does not cover.
    pub fn filled<'a>(&self, orbits: impl IntoIterator<Item = &'a OrbitClass>) -> Trivialization {
        let mut offsets = self.offsets.clone();
        for o in orbits {
            offsets.entry(o.id.clone()).or_insert(0);
        }
        Trivialization { offsets }
    }
}

pub type OrbitTable = BTreeMap<String, OrbitKind>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDoc {
    pub orbit: String,
    pub mult: u32,
}

/// Wire form of an orbit set; orbits are referenced by id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSetDoc {
    pub side: Side,
    #[serde(default)]
    pub entries: Vec<EntryDoc>,
}

impl OrbitSetDoc {
    pub fn resolve(&self, table: &OrbitTable) -> Result<OrbitSet> {
        let entries = self
            .entries
            .iter()
            .map(|e| {
                let kind = table
                    .get(&e.orbit)
                    .ok_or_else(|| Error::UnknownOrbit(e.orbit.clone()))?;
                Ok((OrbitClass::new(e.orbit.clone(), kind.clone()), e.mult))
            })
            .collect::<Result<Vec<_>>>()?;
        OrbitSet::new(self.side, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(id: &str) -> OrbitClass {
        OrbitClass::new(id, OrbitKind::elliptic(3, 10, 9).unwrap())
    }

    #[test]
    fn parity() {
        assert!(OrbitKind::positive_hyperbolic(2).is_ok());
        assert!(OrbitKind::positive_hyperbolic(-3).is_err());
        assert!(OrbitKind::negative_hyperbolic(-1).is_ok());
        assert!(OrbitKind::negative_hyperbolic(0).is_err());
    }

    #[test]
    fn orbit_set_validation() {
        assert_eq!(
            OrbitSet::new(Side::Plus, vec![(e("a"), 1), (e("a"), 2)]),
            Err(Error::DuplicateOrbit("a".into()))
        );
        assert_eq!(
            OrbitSet::new(Side::Plus, vec![(e("a"), 0)]),
            Err(Error::ZeroMultiplicity("a".into()))
        );
        let s = OrbitSet::new(Side::Plus, vec![(e("b"), 1), (e("a"), 2)]).unwrap();
        assert_eq!(s.entries()[0].0.id, "a");
        assert_eq!(s.total(), 3);
    }

    #[test]
    fn product_adds() {
        let a = OrbitSet::new(Side::Plus, vec![(e("a"), 2)]).unwrap();
        let b = OrbitSet::new(Side::Plus, vec![(e("a"), 1), (e("b"), 1)]).unwrap();
        let p = a.product(&b).unwrap();
        assert_eq!(p.mult_of("a"), 3);
        assert_eq!(p.mult_of("b"), 1);
    }

    #[test]
    fn json_forms() {
        let k: OrbitKind =
            serde_json::from_str(r#"{"kind":"elliptic","p":3,"q":10,"k_max":9}"#).unwrap();
        assert_eq!(k, OrbitKind::elliptic(3, 10, 9).unwrap());
        let h: OrbitKind = serde_json::from_str(r#"{"kind":"hyp+","n":2}"#).unwrap();
        assert_eq!(h, OrbitKind::PositiveHyperbolic(2));
        let m: OrbitKind = serde_json::from_str(r#"{"kind":"hyp-","n":1}"#).unwrap();
        assert_eq!(m, OrbitKind::NegativeHyperbolic(1));
        assert!(serde_json::from_str::<OrbitKind>(r#"{"kind":"hyp-","n":2}"#).is_err());
        assert!(
            serde_json::from_str::<OrbitKind>(r#"{"kind":"elliptic","p":1,"q":2,"k_max":3}"#)
                .is_err()
        );
        let back = serde_json::to_string(&k).unwrap();
        assert_eq!(serde_json::from_str::<OrbitKind>(&back).unwrap(), k);

        let doc: OrbitSetDoc =
            serde_json::from_str(r#"{"side":"plus","entries":[{"orbit":"a","mult":2}]}"#).unwrap();
        let table: OrbitTable = [("a".to_string(), k)].into_iter().collect();
        let set = doc.resolve(&table).unwrap();
        assert_eq!(set.mult_of("a"), 2);
        assert_eq!(set.to_doc(), doc);
    }

    #[test]
    fn trivialization_is_strict() {
        let t = Trivialization::default().with("a", 1);
        assert_eq!(t.offset("a"), Ok(1));
        assert_eq!(t.offset("b"), Err(Error::MissingOffset("b".into())));
        let u = t.compose(&Trivialization::default().with("a", 2).with("b", -1));
        assert_eq!(u.offset("a"), Ok(3));
        assert_eq!(u.offset("b"), Ok(-1));
    }
}
