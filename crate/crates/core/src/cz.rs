//! Conley-Zehnder indices of iterates and the sums built from them.

use crate::error::Result;
use crate::model::{End, OrbitClass, OrbitKind, OrbitSet, Trivialization};

/// `CZ(gamma^k)` in the trivialization shifted by `offset` from the reference.
pub fn cz_at(kind: &OrbitKind, offset: i64, k: u32) -> Result<i64> {
    kind.check_mult(k)?;
    let k = i64::from(k);
    Ok(match kind {
        OrbitKind::Elliptic(a) => 2 * a.shifted(offset).floor_mul(k) + 1,
        OrbitKind::PositiveHyperbolic(n) | OrbitKind::NegativeHyperbolic(n) => k * (n - 2 * offset),
    })
}

pub fn cz(orbit: &OrbitClass, tau: &Trivialization, k: u32) -> Result<i64> {
    cz_at(&orbit.kind, tau.offset(&orbit.id)?, k)
}

/// `sum_{k=1}^{upto} CZ(gamma^k)`; empty sums are 0.
pub fn cz_sum(kind: &OrbitKind, offset: i64, upto: u32) -> Result<i64> {
    (1..=upto).map(|k| cz_at(kind, offset, k)).sum()
}

/// `sum_{k=1}^{m-1} CZ(gamma^k)`
pub fn cz_sum_prime(kind: &OrbitKind, offset: i64, m: u32) -> Result<i64> {
    cz_sum(kind, offset, m.saturating_sub(1))
}

/// Total Conley-Zehnder index of an orbit set.
pub fn mu_total(a: &OrbitSet, tau: &Trivialization) -> Result<i64> {
    a.entries()
        .iter()
        .map(|(o, m)| cz_sum(&o.kind, tau.offset(&o.id)?, *m))
        .sum()
}

/// Same as [`mu_total`] with the top iterate of each orbit dropped.
pub fn mu_prime(a: &OrbitSet, tau: &Trivialization) -> Result<i64> {
    a.entries()
        .iter()
        .map(|(o, m)| cz_sum_prime(&o.kind, tau.offset(&o.id)?, *m))
        .sum()
}

/// Signed sum of `CZ` over the ends of a curve.
pub fn mu_zero(ends: &[End], tau: &Trivialization) -> Result<i64> {
    ends.iter()
        .map(|e| Ok(e.side.sign() * cz(&e.orbit, tau, e.mult)?))
        .sum()
}
