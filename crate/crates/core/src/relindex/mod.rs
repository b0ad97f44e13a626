//! Relative index of a class in `H_2(Y, alpha, beta)`, its J-variants,
//! ambiguities, and absolute gradings.

mod grading;
mod nice;

use serde::{Deserialize, Serialize};

pub use grading::{
    abs_grading, GradingContext, GradingInput, GradingKind, IndexValue, PlaneFieldClass,
};
pub use nice::{
    abs_rel_sides, check_abs_vs_rel, q_from_nice_rep, AbsRelSides, NiceEnd, NiceRepData,
};

use crate::cz::{mu_prime, mu_total};
use crate::error::{Error, Result};
use crate::model::{HomologyModel, OrbitKind, OrbitSet, RelClass, Trivialization};

/// `(c_tau(Z), Q_tau(Z))` for the trivialization `tau`, whose offsets are
/// measured from the reference trivialization of `z`.
pub fn transform_relclass(z: &RelClass, tau: &Trivialization) -> Result<(i64, i64)> {
    let (mut c, mut q) = (z.c_ref, z.q_ref);
    for (o, m) in z.alpha.entries() {
        let (m, t) = (i64::from(*m), tau.offset(&o.id)?);
        c += m * t;
        q += m * m * t;
    }
    for (o, n) in z.beta.entries() {
        let (n, t) = (i64::from(*n), tau.offset(&o.id)?);
        c -= n * t;
        q -= n * n * t;
    }
    Ok((c, q))
}

/// `I = c_tau + Q_tau + mu_tau(alpha) - mu_tau(beta)`, independent of `tau`.
pub fn ech_index(z: &RelClass, tau: &Trivialization) -> Result<i64> {
    let (c, q) = transform_relclass(z, tau)?;
    Ok(c + q + mu_total(&z.alpha, tau)? - mu_total(&z.beta, tau)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct JIndices {
    pub j0: i64,
    pub j_plus: i64,
    pub j_minus: i64,
}

/// `J0 = -c_tau + Q_tau + mu'(alpha) - mu'(beta)` and
/// `J+- = J0 +- (|alpha| - |beta|)`.
pub fn j_indices(z: &RelClass, tau: &Trivialization) -> Result<JIndices> {
    let (c, q) = transform_relclass(z, tau)?;
    let j0 = -c + q + mu_prime(&z.alpha, tau)? - mu_prime(&z.beta, tau)?;
    let d = size_measure(&z.alpha) as i64 - size_measure(&z.beta) as i64;
    Ok(JIndices {
        j0,
        j_plus: j0 + d,
        j_minus: j0 - d,
    })
}

/// `|alpha|`: one per elliptic orbit, the multiplicity at a positive
/// hyperbolic orbit, and half the multiplicity rounded up at a negative one.
pub fn size_measure(a: &OrbitSet) -> u64 {
    a.entries()
        .iter()
        .map(|(o, m)| {
            let m = u64::from(*m);
            match o.kind {
                OrbitKind::Elliptic(_) => 1,
                OrbitKind::PositiveHyperbolic(_) => m,
                OrbitKind::NegativeHyperbolic(_) => m.div_ceil(2),
            }
        })
        .sum()
}

/// `Q(Z + Z') = Q(Z) + 2 Q(Z, Z') + Q(Z')`
pub fn quadratic_union(qa: i64, qab: i64, qb: i64) -> i64 {
    qa + 2 * qab + qb
}

/// Class of the union `Z + Z'` in `H_2(alpha alpha', beta beta')`. The cross
/// term is read from `z.q_cross[z2.label]` and must agree with the entry on
/// the other side if present.
pub fn union_class(z: &RelClass, z2: &RelClass) -> Result<RelClass> {
    let qab = z
        .q_cross
        .get(&z2.label)
        .or_else(|| z2.q_cross.get(&z.label))
        .copied()
        .ok_or_else(|| Error::MissingIntersectionData(z.label.clone(), z2.label.clone()))?;
    if let Some(other) = z2.q_cross.get(&z.label) {
        if *other != qab {
            return Err(Error::InconsistentData(
                "cross term is not symmetric".into(),
            ));
        }
    }
    RelClass::new(
        z.alpha.product(&z2.alpha)?,
        z.beta.product(&z2.beta)?,
        z.c_ref + z2.c_ref,
        quadratic_union(z.q_ref, qab, z2.q_ref),
    )
}

pub fn divisibility(x: &[i64], h: &HomologyModel) -> Result<u64> {
    h.divisibility(x)
}

/// Data for comparing two classes with the same ends: `diff` is `Z1 - Z2`
/// in a basis of `H_2(Y)`, and `pairing[i][j]` pairs the i-th generator of
/// `H^2` against the j-th basis vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbiguityData {
    pub h: HomologyModel,
    pub c1: Vec<i64>,
    /// Poincare dual of the total homology class of the ends.
    pub gamma: Vec<i64>,
    pub diff: Vec<i64>,
    pub pairing: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AmbiguityKind {
    Ech,
    J0,
}

/// Returns `<+-c_1 + 2 PD(Gamma), Z1 - Z2>` after checking that it equals
/// the difference of the two indices.
pub fn index_ambiguity(
    z1: &RelClass,
    z2: &RelClass,
    data: &AmbiguityData,
    kind: AmbiguityKind,
) -> Result<i64> {
    if !z1.alpha.same_orbits(&z2.alpha) || !z1.beta.same_orbits(&z2.beta) {
        return Err(Error::InconsistentData(
            "classes have different ends".into(),
        ));
    }
    let s = match kind {
        AmbiguityKind::Ech => 1,
        AmbiguityKind::J0 => -1,
    };
    let v = data.h.combine(s, &data.c1, 2, &data.gamma)?;
    let predicted = data.h.pair(&v, &data.diff, &data.pairing)?;
    let tau = Trivialization::reference(z1.orbits());
    let actual = match kind {
        AmbiguityKind::Ech => ech_index(z1, &tau)? - ech_index(z2, &tau)?,
        AmbiguityKind::J0 => j_indices(z1, &tau)?.j0 - j_indices(z2, &tau)?.j0,
    };
    if predicted != actual {
        return Err(Error::InconsistentData(format!(
            "index difference {actual} does not match pairing {predicted}"
        )));
    }
    Ok(predicted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{OrbitClass, Side};
    use proptest::prelude::*;

    fn e310() -> OrbitClass {
        OrbitClass::new("e", OrbitKind::elliptic(3, 10, 9).unwrap())
    }

    fn set(side: Side, e: &[(OrbitClass, u32)]) -> OrbitSet {
        OrbitSet::new(side, e.to_vec()).unwrap()
    }

    #[test]
    fn transform_values() {
        let z = RelClass::new(
            set(Side::Plus, &[(e310(), 2)]),
            OrbitSet::empty(Side::Minus),
            1,
            2,
        )
        .unwrap();
        let tau = Trivialization::default().with("e", 1);
        assert_eq!(transform_relclass(&z, &tau), Ok((3, 6)));
        assert_eq!(
            transform_relclass(&z, &Trivialization::default()),
            Err(Error::MissingOffset("e".into()))
        );
        let g = e310();
        let z = RelClass::new(
            set(Side::Plus, &[(g.clone(), 1)]),
            set(Side::Minus, &[(g, 1)]),
            0,
            5,
        )
        .unwrap();
        assert_eq!(transform_relclass(&z, &tau), Ok((0, 5)));
    }

    #[test]
    fn index_values() {
        let z = RelClass::new(
            set(Side::Plus, &[(e310(), 2)]),
            OrbitSet::empty(Side::Minus),
            1,
            2,
        )
        .unwrap();
        let t0 = Trivialization::reference(z.orbits());
        // mu = CZ(1) + CZ(2) = 1 + 1
        assert_eq!(ech_index(&z, &t0), Ok(5));
        // J0 = -1 + 2 + 1 = 2, |alpha| = 1
        assert_eq!(
            j_indices(&z, &t0),
            Ok(JIndices {
                j0: 2,
                j_plus: 3,
                j_minus: 1
            })
        );
        let h = OrbitClass::new("h", OrbitKind::NegativeHyperbolic(1));
        let z = RelClass::new(
            set(Side::Plus, &[(h, 5)]),
            OrbitSet::empty(Side::Minus),
            0,
            0,
        )
        .unwrap();
        let t0 = Trivialization::reference(z.orbits());
        // mu' = 1 + 2 + 3 + 4, |alpha| = 3
        assert_eq!(
            j_indices(&z, &t0),
            Ok(JIndices {
                j0: 10,
                j_plus: 13,
                j_minus: 7
            })
        );
    }

    #[test]
    fn sizes() {
        let e = e310();
        let hp = OrbitClass::new("p", OrbitKind::PositiveHyperbolic(0));
        let hm = OrbitClass::new("m", OrbitKind::NegativeHyperbolic(1));
        assert_eq!(
            size_measure(&set(Side::Plus, &[(e, 4), (hp, 3), (hm, 5)])),
            1 + 3 + 3
        );
        assert_eq!(quadratic_union(1, 2, 3), 8);
    }

    #[test]
    fn ambiguity() {
        let z1 = RelClass::new(
            set(Side::Plus, &[(e310(), 2)]),
            OrbitSet::empty(Side::Minus),
            1,
            2,
        )
        .unwrap();
        let data = AmbiguityData {
            h: HomologyModel::new(vec![0, 3]),
            c1: vec![2, 1],
            gamma: vec![1, 2],
            diff: vec![1],
            pairing: vec![vec![1], vec![0]],
        };
        // <c1, D> = 2 and <gamma, D> = 1.
        let mut z2 = z1.clone();
        z2.c_ref -= 2;
        z2.q_ref -= 2;
        assert_eq!(index_ambiguity(&z1, &z2, &data, AmbiguityKind::Ech), Ok(4));
        assert_eq!(index_ambiguity(&z1, &z2, &data, AmbiguityKind::J0), Ok(0));
        z2.q_ref += 1;
        assert!(matches!(
            index_ambiguity(&z1, &z2, &data, AmbiguityKind::Ech),
            Err(Error::InconsistentData(_))
        ));
    }

    #[test]
    fn union_reads_cross_terms() {
        let e = e310();
        let mut a = RelClass::new(
            set(Side::Plus, &[(e.clone(), 1)]),
            OrbitSet::empty(Side::Minus),
            1,
            1,
        )
        .unwrap()
        .labelled("a");
        let b = RelClass::new(
            set(Side::Plus, &[(e, 2)]),
            OrbitSet::empty(Side::Minus),
            2,
            3,
        )
        .unwrap()
        .labelled("b");
        assert!(union_class(&a, &b).is_err());
        a.q_cross.insert("b".into(), 2);
        let u = union_class(&a, &b).unwrap();
        assert_eq!((u.c_ref, u.q_ref, u.alpha.mult_of("e")), (3, 8, 3));
    }

    fn kind_strategy() -> impl Strategy<Value = OrbitKind> {
        prop_oneof![
            (1i64..31).prop_map(|p| OrbitKind::elliptic(p, 31, 30).unwrap()),
            (-3i64..3).prop_map(|n| OrbitKind::PositiveHyperbolic(2 * n)),
            (-3i64..3).prop_map(|n| OrbitKind::NegativeHyperbolic(2 * n + 1)),
        ]
    }

    fn class_strategy() -> impl Strategy<Value = RelClass> {
        (
            proptest::collection::vec((kind_strategy(), 0u32..5, 0u32..5), 1..4),
            -10i64..10,
            -10i64..10,
        )
            .prop_map(|(orbits, c, q)| {
                let mut a = Vec::new();
                let mut b = Vec::new();
                for (i, (k, m, n)) in orbits.into_iter().enumerate() {
                    let o = OrbitClass::new(format!("o{i}"), k);
                    if m > 0 {
                        a.push((o.clone(), m));
                    }
                    if n > 0 {
                        b.push((o, n));
                    }
                }
                RelClass::new(
                    OrbitSet::new(Side::Plus, a).unwrap(),
                    OrbitSet::new(Side::Minus, b).unwrap(),
                    c,
                    q,
                )
                .unwrap()
            })
    }

    proptest! {
        #[test]
        fn indices_do_not_depend_on_tau(z in class_strategy(), offs in proptest::collection::vec(-4i64..4, 4)) {
            let t0 = Trivialization::reference(z.orbits());
            let mut t1 = t0.clone();
            for (i, id) in t0.offsets().keys().enumerate() {
                t1.set(id.clone(), offs[i % offs.len()]);
            }
            prop_assert_eq!(ech_index(&z, &t0).unwrap(), ech_index(&z, &t1).unwrap());
            prop_assert_eq!(j_indices(&z, &t0).unwrap(), j_indices(&z, &t1).unwrap());
            let (c0, q0) = transform_relclass(&z, &t0).unwrap();
            prop_assert_eq!((c0, q0), (z.c_ref, z.q_ref));
        }

        #[test]
        fn composition_is_additive(z in class_strategy(), c in -5i64..5, q in -5i64..5) {
            let w = RelClass::new(z.beta.with_side(Side::Plus), OrbitSet::empty(Side::Minus), c, q).unwrap();
            let zw = z.compose(&w).unwrap();
            let tau = Trivialization::reference(z.orbits());
            let tw = Trivialization::reference(zw.orbits());
            prop_assert_eq!(
                ech_index(&z, &tau).unwrap() + ech_index(&w, &tau).unwrap(),
                ech_index(&zw, &tw).unwrap()
            );
            prop_assert_eq!(
                j_indices(&z, &tau).unwrap().j0 + j_indices(&w, &tau).unwrap().j0,
                j_indices(&zw, &tw).unwrap().j0
            );
        }
    }
}
