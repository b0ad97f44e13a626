use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rotation angle `p/q` of an elliptic orbit, with the multiplicity horizon
/// `k_max` up to which `k * p / q` is guaranteed not to be an integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawAngle", into = "RawAngle")]
pub struct MonodromyAngle {
    p: i64,
    q: i64,
    k_max: u32,
}

#[derive(Serialize, Deserialize)]
struct RawAngle {
    p: i64,
    q: i64,
    k_max: u32,
}

impl TryFrom<RawAngle> for MonodromyAngle {
    type Error = Error;
    fn try_from(r: RawAngle) -> Result<Self> {
        validate_angle(r.p, r.q, r.k_max)
    }
}

impl From<MonodromyAngle> for RawAngle {
    fn from(a: MonodromyAngle) -> Self {
        RawAngle {
            p: a.p,
            q: a.q,
            k_max: a.k_max,
        }
    }
}

/// Checks that `p/q` is reduced and that no multiple `k * p/q` with
/// `1 <= k <= k_max` is an integer.
pub fn validate_angle(p: i64, q: i64, k_max: u32) -> Result<MonodromyAngle> {
    if q <= 0 {
        return Err(Error::Invalid(format!(
            "denominator must be positive, got {q}"
        )));
    }
    if p.abs().gcd(&q) != 1 {
        return Err(Error::NonCoprime { p, q });
    }
    // With gcd(p, q) = 1, q | k*p exactly when q | k.
    if q <= i64::from(k_max) {
        return Err(Error::IntegerMultiple(q as u32));
    }
    Ok(MonodromyAngle { p, q, k_max })
}

impl MonodromyAngle {
    pub fn new(p: i64, q: i64, k_max: u32) -> Result<Self> {
        validate_angle(p, q, k_max)
    }

    /// Largest horizon this fraction supports.
    pub fn with_max_horizon(p: i64, q: i64) -> Result<Self> {
        validate_angle(p, q, (q - 1).max(0) as u32)
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn k_max(&self) -> u32 {
        self.k_max
    }

    pub fn check(&self, k: u32) -> Result<()> {
        if k > self.k_max {
            Err(Error::HorizonExceeded {
                k,
                k_max: self.k_max,
            })
        } else {
            Ok(())
        }
    }

    /// `floor(k * theta)`
    pub fn floor_mul(&self, k: i64) -> i64 {
        (k * self.p).div_euclid(self.q)
    }

    /// `ceil(k * theta)`
    pub fn ceil_mul(&self, k: i64) -> i64 {
        -((-k * self.p).div_euclid(self.q))
    }

    /// `theta - offset`
    pub fn shifted(&self, offset: i64) -> Self {
        MonodromyAngle {
            p: self.p - offset * self.q,
            ..*self
        }
    }

    pub fn negated(&self) -> Self {
        MonodromyAngle {
            p: -self.p,
            ..*self
        }
    }

    /// Representative in `(0, 1)`.
    pub fn fractional(&self) -> Self {
        MonodromyAngle {
            p: self.p.rem_euclid(self.q),
            ..*self
        }
    }

    pub fn with_horizon(&self, k_max: u32) -> Result<Self> {
        validate_angle(self.p, self.q, k_max)
    }

    /// Parses `p/q`.
    pub fn parse(s: &str, k_max: u32) -> Result<Self> {
        let (p, q) = parse_fraction(s)?;
        validate_angle(p, q, k_max)
    }
}

pub fn parse_fraction(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::Invalid(format!("expected p/q, got '{s}'"));
    let (p, q) = s.trim().split_once('/').ok_or_else(bad)?;
    let p = p.trim().parse::<i64>().map_err(|_| bad())?;
    let q = q.trim().parse::<i64>().map_err(|_| bad())?;
    Ok((p, q))
}

impl fmt::Display for MonodromyAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(validate_angle(3, 10, 9).is_ok());
        assert_eq!(validate_angle(1, 2, 3), Err(Error::IntegerMultiple(2)));
        assert!(validate_angle(7, 97, 50).is_ok());
        assert_eq!(
            validate_angle(2, 4, 3),
            Err(Error::NonCoprime { p: 2, q: 4 })
        );
        assert_eq!(validate_angle(0, 1, 1), Err(Error::IntegerMultiple(1)));
        assert!(validate_angle(0, 1, 0).is_ok());
        assert!(validate_angle(-3, 10, 9).is_ok());
    }

    #[test]
    fn horizon_matches_brute_force() {
        for q in 1..20i64 {
            for p in -20..20i64 {
                for k_max in 0..25u32 {
                    let brute = if p.abs().gcd(&q) != 1 {
                        Err(Error::NonCoprime { p, q })
                    } else {
                        match (1..=k_max).find(|&k| (i64::from(k) * p) % q == 0) {
                            Some(k) => Err(Error::IntegerMultiple(k)),
                            None => Ok(()),
                        }
                    };
                    assert_eq!(
                        validate_angle(p, q, k_max).map(|_| ()),
                        brute,
                        "{p}/{q} {k_max}"
                    );
                }
            }
        }
    }

    #[test]
    fn floors() {
        let a = validate_angle(3, 10, 9).unwrap();
        assert_eq!(a.floor_mul(4), 1);
        assert_eq!(a.ceil_mul(4), 2);
        let b = a.negated();
        assert_eq!(b.floor_mul(4), -2);
        assert_eq!(a.shifted(1).floor_mul(1), -1);
        assert_eq!(a.shifted(-2).fractional(), a);
    }

    #[test]
    fn parse() {
        assert_eq!(
            MonodromyAngle::parse("3/10", 9).unwrap(),
            validate_angle(3, 10, 9).unwrap()
        );
        assert!(MonodromyAngle::parse("3", 9).is_err());
    }
}
