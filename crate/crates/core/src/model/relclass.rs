use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::orbit::{OrbitClass, OrbitSet, OrbitSetDoc, OrbitTable, Side, Trivialization};
use crate::error::{Error, Result};

/// Relative homology class `Z` in `H_2(Y, alpha, beta)`, recorded through
/// its relative first Chern class and relative self-intersection in the
/// reference trivialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelClass {
    pub label: String,
    pub alpha: OrbitSet,
    pub beta: OrbitSet,
    pub c_ref: i64,
    pub q_ref: i64,
    /// Cross terms `Q(Z, Z')` keyed by the label of `Z'`.
    pub q_cross: BTreeMap<String, i64>,
}

impl RelClass {
    pub fn new(alpha: OrbitSet, beta: OrbitSet, c_ref: i64, q_ref: i64) -> Result<Self> {
        if alpha.side() != Side::Plus || beta.side() != Side::Minus {
            return Err(Error::Invalid(
                "alpha must be the plus side and beta the minus side".into(),
            ));
        }
        Ok(RelClass {
            label: String::new(),
            alpha,
            beta,
            c_ref,
            q_ref,
            q_cross: BTreeMap::new(),
        })
    }

    pub fn labelled(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn orbits(&self) -> impl Iterator<Item = &OrbitClass> {
        self.alpha.orbits().chain(self.beta.orbits())
    }

    /// Gluing `self` in `H_2(alpha, beta)` to `w` in `H_2(beta, gamma)`.
    pub fn compose(&self, w: &RelClass) -> Result<RelClass> {
        if !self.beta.same_orbits(&w.alpha) {
            return Err(Error::InconsistentData("classes are not composable".into()));
        }
        RelClass::new(
            self.alpha.clone(),
            w.beta.clone(),
            self.c_ref + w.c_ref,
            self.q_ref + w.q_ref,
        )
    }

    pub fn to_doc(&self, offsets: &Trivialization) -> RelClassDoc {
        RelClassDoc {
            orbits: self
                .orbits()
                .map(|o| (o.id.clone(), o.kind.clone()))
                .collect(),
            alpha: self.alpha.to_doc(),
            beta: self.beta.to_doc(),
            c_ref: self.c_ref,
            q_ref: self.q_ref,
            offsets: offsets.offsets().clone(),
        }
    }
}

/// Wire form of a relative class together with a trivialization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelClassDoc {
    pub orbits: OrbitTable,
    pub alpha: OrbitSetDoc,
    pub beta: OrbitSetDoc,
    pub c_ref: i64,
    pub q_ref: i64,
    /// Missing orbits default to the reference trivialization.
    #[serde(default)]
    pub offsets: BTreeMap<String, i64>,
}

impl RelClassDoc {
    pub fn resolve(&self) -> Result<(RelClass, Trivialization)> {
        let alpha = self.alpha.resolve(&self.orbits)?;
        let beta = self.beta.resolve(&self.orbits)?;
        let z = RelClass::new(alpha, beta, self.c_ref, self.q_ref)?;
        let tau = Trivialization::new(self.offsets.clone()).filled(z.orbits());
        Ok((z, tau))
    }
}
