//! Exhaustive sweeps and randomized checks of the combinatorial
//! inequalities and identities, with brute-force oracles where a direct
//! computation exists.

mod checks;
mod oracle;
pub mod random;
mod sweeps;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

pub use checks::{
    check_abs_rel, check_braids, check_index_equivalence, check_j_plus, check_size_identity,
    check_tau_invariance,
};
pub use oracle::{extremal_path_oracle, sweep_duality, sweep_oracle, OraclePath};
pub use sweeps::{
    huge_family, sweep_ce1, sweep_cli, sweep_cli_strict, sweep_huge, sweep_j_union,
    sweep_jbound_cases, sweep_neg_hyp, sweep_pick, HugeCase,
};

use crate::error::Result;
use crate::model::{MonodromyAngle, OrbitKind};

const KEEP_VIOLATIONS: usize = 200;
const KEEP_EQUALITIES: usize = 2000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub name: String,
    pub parameters: serde_json::Value,
    pub instances_checked: u64,
    /// First violations found, in sweep order; `violation_count` is exact.
    pub violations: Vec<String>,
    pub violation_count: u64,
    pub equality_cases: Vec<String>,
    pub equality_count: u64,
}

impl SweepReport {
    pub fn new(name: &str, parameters: serde_json::Value) -> Self {
        SweepReport {
            name: name.to_string(),
            parameters,
            instances_checked: 0,
            violations: Vec::new(),
            violation_count: 0,
            equality_cases: Vec::new(),
            equality_count: 0,
        }
    }

    pub fn ok(&self) -> bool {
        self.violation_count == 0
    }

    pub fn violation(&mut self, msg: impl Into<String>) {
        if self.violations.len() < KEEP_VIOLATIONS {
            self.violations.push(msg.into());
        }
        self.violation_count += 1;
    }

    pub fn equality(&mut self, msg: impl Into<String>) {
        if self.equality_cases.len() < KEEP_EQUALITIES {
            self.equality_cases.push(msg.into());
        }
        self.equality_count += 1;
    }

    /// Appends the findings of `other`, which is assumed to come later in
    /// sweep order.
    pub fn absorb(&mut self, other: SweepReport) {
        self.instances_checked += other.instances_checked;
        for v in other.violations {
            if self.violations.len() < KEEP_VIOLATIONS {
                self.violations.push(v);
            }
        }
        self.violation_count += other.violation_count;
        for e in other.equality_cases {
            if self.equality_cases.len() < KEEP_EQUALITIES {
                self.equality_cases.push(e);
            }
        }
        self.equality_count += other.equality_count;
    }

    fn merged(name: &str, parameters: serde_json::Value, parts: Vec<SweepReport>) -> Self {
        let mut out = SweepReport::new(name, parameters);
        for p in parts {
            out.absorb(p);
        }
        out
    }
}

/// Every `p/q` in `(0, 1)` in lowest terms, for each denominator, with
/// horizon `q - 1`.
pub fn theta_grid(denominators: &[i64]) -> Result<Vec<MonodromyAngle>> {
    let mut out = Vec::new();
    for &q in denominators {
        for p in 1..q {
            if p.gcd(&q) == 1 {
                out.push(MonodromyAngle::with_max_horizon(p, q)?);
            }
        }
    }
    Ok(out)
}

/// Hyperbolic orbits with `n` in `lo..=hi`: positive for even `n`,
/// negative for odd.
pub fn hyperbolic_grid(lo: i64, hi: i64) -> Vec<OrbitKind> {
    (lo..=hi)
        .map(|n| {
            if n % 2 == 0 {
                OrbitKind::PositiveHyperbolic(n)
            } else {
                OrbitKind::NegativeHyperbolic(n)
            }
        })
        .collect()
}

pub fn elliptic_grid(denominators: &[i64]) -> Result<Vec<OrbitKind>> {
    Ok(theta_grid(denominators)?
        .into_iter()
        .map(OrbitKind::Elliptic)
        .collect())
}

pub(crate) fn kind_label(kind: &OrbitKind) -> String {
    match kind {
        OrbitKind::Elliptic(a) => format!("e {a}"),
        OrbitKind::PositiveHyperbolic(n) => format!("h+ {n}"),
        OrbitKind::NegativeHyperbolic(n) => format!("h- {n}"),
    }
}
