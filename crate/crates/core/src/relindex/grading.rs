use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::size_measure;
use crate::cz::{mu_prime, mu_total};
use crate::error::{Error, Result};
use crate::model::{HomologyModel, OrbitSet, Trivialization};

/// Integer reduced modulo `modulus`; modulus 0 means no reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawIndexValue", into = "RawIndexValue")]
pub struct IndexValue {
    value: i64,
    modulus: u64,
}

#[derive(Serialize, Deserialize)]
struct RawIndexValue {
    value: i64,
    modulus: u64,
}

impl TryFrom<RawIndexValue> for IndexValue {
    type Error = Error;
    fn try_from(r: RawIndexValue) -> Result<Self> {
        Ok(IndexValue::new(r.value, r.modulus))
    }
}

impl From<IndexValue> for RawIndexValue {
    fn from(v: IndexValue) -> Self {
        RawIndexValue {
            value: v.value,
            modulus: v.modulus,
        }
    }
}

impl IndexValue {
    pub fn new(value: i64, modulus: u64) -> Self {
        let value = if modulus == 0 {
            value
        } else {
            value.rem_euclid(modulus as i64)
        };
        IndexValue { value, modulus }
    }

    pub fn value(&self) -> i64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn shift(&self, by: i64) -> Self {
        IndexValue::new(self.value + by, self.modulus)
    }

    pub fn sub(&self, other: &IndexValue) -> Result<IndexValue> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                expected: self.modulus,
                got: other.modulus,
            });
        }
        Ok(IndexValue::new(self.value - other.value, self.modulus))
    }
}

impl fmt::Display for IndexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modulus == 0 {
            write!(f, "{}", self.value)
        } else {
            write!(f, "{} mod {}", self.value, self.modulus)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GradingKind {
    Ech,
    J0,
    #[serde(rename = "j+")]
    JPlus,
    #[serde(rename = "j-")]
    JMinus,
}

/// Where the grading lives: either a declared modulus, or a homology model
/// from which the modulus is derived.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum GradingContext {
    Declared {
        modulus: u64,
    },
    Homology {
        model: HomologyModel,
        /// Homology class of each orbit, as an element of `model`.
        classes: BTreeMap<String, Vec<i64>>,
        c1: Vec<i64>,
    },
}

/// Homotopy class of an oriented plane field: a class `gamma` labelling the
/// spin-c structure and an offset in the `Z/d` torsor over it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneFieldClass {
    pub kind: GradingKind,
    pub gamma: Vec<i64>,
    pub offset: IndexValue,
}

/// Absolute grading input for an orbit set: the value of `P_tau(L)` for the
/// braided link `L`, relative to a fixed reference class, and the writhe of
/// the braid around each orbit. For J-type gradings `p` is the framing-free
/// version of the same quantity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradingInput {
    pub orbits: OrbitSet,
    pub p: IndexValue,
    pub writhes: BTreeMap<String, i64>,
    pub tau: Trivialization,
}

impl GradingInput {
    /// The same link described in the trivialization shifted by `delta`.
    pub fn reframed(&self, delta: &Trivialization, kind: GradingKind) -> Result<GradingInput> {
        let mut p = self.p;
        let mut writhes = self.writhes.clone();
        for (o, m) in self.orbits.entries() {
            let d = delta.offsets().get(&o.id).copied().unwrap_or(0);
            let m = i64::from(*m);
            if kind == GradingKind::Ech {
                p = p.shift(2 * m * d);
            }
            *writhes.entry(o.id.clone()).or_insert(0) -= m * (m - 1) * d;
        }
        Ok(GradingInput {
            orbits: self.orbits.clone(),
            p,
            writhes,
            tau: self.tau.compose(delta),
        })
    }

    /// Changes the braid around `orbit` by one crossing of sign `sign`.
    pub fn with_crossing_change(&self, orbit: &str, sign: i64) -> GradingInput {
        let mut out = self.clone();
        *out.writhes.entry(orbit.to_string()).or_insert(0) += sign;
        out.p = out.p.shift(sign);
        out
    }
}

fn class_of(
    a: &OrbitSet,
    model: &HomologyModel,
    classes: &BTreeMap<String, Vec<i64>>,
) -> Result<Vec<i64>> {
    let mut total = model.zero();
    for (o, m) in a.entries() {
        let c = classes
            .get(&o.id)
            .ok_or_else(|| Error::UnknownOrbit(o.id.clone()))?;
        total = model.combine(1, &total, i64::from(*m), c)?;
    }
    Ok(total)
}

/// Absolute grading of an orbit set:
/// `I(alpha) = P_tau(L) - sum_i w_tau(zeta_i) + mu_tau(alpha)`, or its
/// J-variant with `mu'` and `+-|alpha|`.
pub fn abs_grading(
    input: &GradingInput,
    kind: GradingKind,
    ctx: &GradingContext,
) -> Result<PlaneFieldClass> {
    let a = &input.orbits;
    let (gamma, modulus) = match ctx {
        GradingContext::Declared { modulus } => (Vec::new(), *modulus),
        GradingContext::Homology { model, classes, c1 } => {
            let pd = class_of(a, model, classes)?;
            let (gamma, first_chern) = match kind {
                GradingKind::Ech => (pd.clone(), model.combine(1, c1, 2, &pd)?),
                _ => (
                    model.combine(-1, &pd, 0, &pd)?,
                    model.combine(1, c1, -2, &pd)?,
                ),
            };
            (gamma, model.divisibility(&first_chern)?)
        }
    };
    if input.p.modulus() != modulus {
        return Err(Error::ModulusMismatch {
            expected: modulus,
            got: input.p.modulus(),
        });
    }
    let w: i64 = a
        .entries()
        .iter()
        .map(|(o, _)| input.writhes.get(&o.id).copied().unwrap_or(0))
        .sum();
    let size = size_measure(a) as i64;
    let mu = match kind {
        GradingKind::Ech => mu_total(a, &input.tau)?,
        GradingKind::J0 => mu_prime(a, &input.tau)?,
        GradingKind::JPlus => mu_prime(a, &input.tau)? + size,
        GradingKind::JMinus => mu_prime(a, &input.tau)? - size,
    };
    Ok(PlaneFieldClass {
        kind,
        gamma,
        offset: input.p.shift(mu - w),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{OrbitClass, OrbitKind, Side};

    fn input(m: u32, modulus: u64) -> GradingInput {
        let e = OrbitClass::new("e", OrbitKind::elliptic(3, 10, 9).unwrap());
        let orbits = OrbitSet::new(Side::Plus, vec![(e.clone(), m)]).unwrap();
        GradingInput {
            tau: Trivialization::reference([&e]),
            orbits,
            p: IndexValue::new(0, modulus),
            writhes: [("e".to_string(), 0)].into_iter().collect(),
        }
    }

    #[test]
    fn reduction() {
        assert_eq!(IndexValue::new(-1, 4).value(), 3);
        assert_eq!(IndexValue::new(-1, 0).value(), -1);
        assert!(IndexValue::new(1, 4).sub(&IndexValue::new(1, 2)).is_err());
    }

    #[test]
    fn flat_braid() {
        let g = abs_grading(
            &input(2, 0),
            GradingKind::Ech,
            &GradingContext::Declared { modulus: 0 },
        )
        .unwrap();
        assert_eq!(g.offset, IndexValue::new(2, 0));
        let err = abs_grading(
            &input(2, 4),
            GradingKind::Ech,
            &GradingContext::Declared { modulus: 2 },
        );
        assert_eq!(
            err,
            Err(Error::ModulusMismatch {
                expected: 2,
                got: 4
            })
        );
    }

    #[test]
    fn framing_and_crossings_do_not_matter() {
        let ctx = GradingContext::Declared { modulus: 6 };
        for kind in [
            GradingKind::Ech,
            GradingKind::J0,
            GradingKind::JPlus,
            GradingKind::JMinus,
        ] {
            let base = input(3, 6);
            let g = abs_grading(&base, kind, &ctx).unwrap();
            for d in -3..=3 {
                let delta = Trivialization::default().with("e", d);
                let r = base.reframed(&delta, kind).unwrap();
                assert_eq!(abs_grading(&r, kind, &ctx).unwrap(), g);
            }
            let c = base.with_crossing_change("e", -1);
            assert_eq!(abs_grading(&c, kind, &ctx).unwrap(), g);
        }
    }

    #[test]
    fn homology_modulus() {
        let ctx = GradingContext::Homology {
            model: HomologyModel::new(vec![0]),
            classes: [("e".to_string(), vec![1])].into_iter().collect(),
            c1: vec![2],
        };
        // c1 + 2*PD(3e) = 8, c1 - 2*PD(3e) = -4
        let g = abs_grading(&input(3, 8), GradingKind::Ech, &ctx).unwrap();
        assert_eq!(g.gamma, vec![3]);
        let g = abs_grading(&input(3, 4), GradingKind::J0, &ctx).unwrap();
        assert_eq!(g.gamma, vec![-3]);
        assert!(abs_grading(&input(3, 8), GradingKind::J0, &ctx).is_err());
    }
}
