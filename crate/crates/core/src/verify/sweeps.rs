use rayon::prelude::*;
use serde_json::json;

use super::{kind_label, SweepReport};
use crate::curves::{
    huge_slack, j_huge_slack, linking_bound, local_correction, uwb, writhe_bound, LocalComponent,
    LocalUnionData,
};
use crate::cz::cz_at;
use crate::error::Result;
use crate::model::{MonodromyAngle, OrbitKind};
use crate::partitions::{ce1_sides, p_out_kind, partitions_of, pick_chain, staircase, Partition};

fn labels(thetas: &[MonodromyAngle]) -> Vec<String> {
    thetas.iter().map(|t| t.to_string()).collect()
}

fn kind_labels(kinds: &[OrbitKind]) -> Vec<String> {
    kinds.iter().map(kind_label).collect()
}

/// `CZ(gamma^k)` for `k = 0..=upto` in the reference trivialization, with
/// the unused entry at 0 set to 0, and its prefix sums.
struct CzTable {
    cz: Vec<i64>,
    prefix: Vec<i64>,
}

impl CzTable {
    fn new(kind: &OrbitKind, upto: u32) -> Result<Self> {
        let mut cz = vec![0];
        for k in 1..=upto {
            cz.push(cz_at(kind, 0, k)?);
        }
        let mut prefix = vec![0];
        for k in 1..cz.len() {
            prefix.push(prefix[k - 1] + cz[k]);
        }
        Ok(CzTable { cz, prefix })
    }

    /// `sum_{k=1}^{n} CZ(gamma^k)`, with negative `n` read as 0.
    fn sum(&self, n: i64) -> i64 {
        if n <= 0 {
            0
        } else {
            self.prefix[n as usize]
        }
    }

    fn tele(&self, m: i64, m2: i64) -> i64 {
        self.sum(m + m2) - self.sum(m) - self.sum(m2)
    }

    fn tele_prime(&self, m: i64, m2: i64) -> i64 {
        self.sum(m + m2 - 1) - self.sum(m - 1) - self.sum(m2 - 1)
    }

    fn rho(&self, q: u32) -> i64 {
        self.cz[q as usize].div_euclid(2)
    }
}

/// Lattice inequality over every partition of every `m <= m_max`; the
/// equality cases must be exactly the outgoing partitions.
pub fn sweep_ce1(m_max: u32, thetas: &[MonodromyAngle]) -> Result<SweepReport> {
    let parts: Vec<Result<SweepReport>> = thetas
        .par_iter()
        .map(|t| {
            let mut r = SweepReport::new("ce1", json!(null));
            for m in 1..=m_max {
                let pout = p_out_kind(&OrbitKind::Elliptic(*t), m)?.0;
                let mut found = false;
                for qs in partitions_of(m) {
                    let s = ce1_sides(qs.parts(), t)?;
                    r.instances_checked += 1;
                    if s.lhs > s.rhs {
                        r.violation(format!("theta {t} {qs}: {} > {}", s.lhs, s.rhs));
                    }
                    if s.equality {
                        r.equality(format!("theta {t} m {m} {qs}"));
                        found = true;
                    }
                    if s.equality != (qs == pout) {
                        r.violation(format!(
                            "theta {t} {qs}: equality is {} but P_out({m}) = {pout}",
                            s.equality
                        ));
                    }
                }
                if !found {
                    r.violation(format!("theta {t} m {m}: no equality case"));
                }
            }
            Ok(r)
        })
        .collect();
    let parts = parts.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(SweepReport::merged(
        "ce1",
        json!({ "m_max": m_max, "thetas": labels(thetas) }),
        parts,
    ))
}

/// Lattice point chain behind the inequality, for every non-degenerate
/// staircase region.
pub fn sweep_pick(m_max: u32, thetas: &[MonodromyAngle]) -> Result<SweepReport> {
    let parts: Vec<Result<SweepReport>> = thetas
        .par_iter()
        .map(|t| {
            let mut r = SweepReport::new("pick", json!(null));
            for m in 1..=m_max {
                for qs in partitions_of(m) {
                    if staircase(qs.parts(), t)?.degenerate {
                        continue;
                    }
                    let c = pick_chain(qs.parts(), t)?;
                    r.instances_checked += 1;
                    let checks = [
                        (c.pick_holds(), "2A = 2L - B - 2"),
                        (c.area_matches(), "left side = 2A"),
                        (c.lattice_ok(), "lattice bound"),
                        (c.boundary_ok(), "boundary bound"),
                    ];
                    for (ok, what) in checks {
                        if !ok {
                            r.violation(format!("theta {t} {qs}: {what} fails ({c:?})"));
                        }
                    }
                    if c.image_is_extremal && c.edges_primitive {
                        r.equality(format!("theta {t} {qs}"));
                    }
                }
            }
            Ok(r)
        })
        .collect();
    let parts = parts.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(SweepReport::merged(
        "pick",
        json!({ "m_max": m_max, "thetas": labels(thetas) }),
        parts,
    ))
}

fn cross_lhs(t: &CzTable, a: &[u32], b: &[u32]) -> i64 {
    let mut s = 0;
    for &x in a {
        for &y in b {
            s += (i64::from(x) * t.rho(y)).max(i64::from(y) * t.rho(x));
        }
    }
    2 * s
}

fn cli_sweep(m_total_max: u32, kinds: &[OrbitKind], strict: bool) -> Result<SweepReport> {
    let name = if strict { "cli-strict" } else { "cli" };
    let parts: Vec<Result<SweepReport>> = kinds
        .par_iter()
        .map(|kind| {
            kind.check_mult(m_total_max)?;
            let t = CzTable::new(kind, m_total_max)?;
            let label = kind_label(kind);
            let mut r = SweepReport::new(name, json!(null));
            let all: Vec<Vec<Partition>> = (0..=m_total_max).map(partitions_of).collect();
            for m in 0..=m_total_max {
                for m2 in 0..=m_total_max - m {
                    let (mi, m2i) = (i64::from(m), i64::from(m2));
                    let rhs = if strict {
                        t.tele_prime(mi, m2i)
                    } else {
                        t.tele(mi, m2i)
                    };
                    if let OrbitKind::PositiveHyperbolic(l) | OrbitKind::NegativeHyperbolic(l) =
                        kind
                    {
                        if rhs != l * mi * m2i {
                            r.violation(format!(
                                "{label} m {m} m' {m2}: telescoping sum is not l m m'"
                            ));
                        }
                    }
                    let stipulated = m > 0
                        && m2 > 0
                        && match kind {
                            OrbitKind::Elliptic(_) => true,
                            OrbitKind::NegativeHyperbolic(_) => m % 2 == 1 && m2 % 2 == 1,
                            OrbitKind::PositiveHyperbolic(_) => false,
                        };
                    for a in &all[m as usize] {
                        for b in &all[m2 as usize] {
                            let lhs = cross_lhs(&t, a.parts(), b.parts());
                            r.instances_checked += 1;
                            if lhs > rhs {
                                r.violation(format!("{label} {a} vs {b}: {lhs} > {rhs}"));
                            } else if lhs == rhs {
                                if strict && stipulated {
                                    r.violation(format!("{label} {a} vs {b}: not strict ({lhs})"));
                                }
                                r.equality(format!("{label} {a} vs {b}"));
                            }
                        }
                    }
                }
            }
            Ok(r)
        })
        .collect();
    let parts = parts.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(SweepReport::merged(
        name,
        json!({ "m_total_max": m_total_max, "orbits": kind_labels(kinds) }),
        parts,
    ))
}

/// Cross-linking inequality over all pairs of partitions with
/// `m + m' <= m_total_max`.
pub fn sweep_cli(m_total_max: u32, kinds: &[OrbitKind]) -> Result<SweepReport> {
    cli_sweep(m_total_max, kinds, false)
}

/// Variant with the top iterates dropped; it must be strict for elliptic
/// orbits with `m, m' > 0` and for negative hyperbolic orbits with `m, m'`
/// both odd.
pub fn sweep_cli_strict(m_total_max: u32, kinds: &[OrbitKind]) -> Result<SweepReport> {
    cli_sweep(m_total_max, kinds, true)
}

fn odd_parts_desc(qs: &Partition) -> Vec<i64> {
    // parts are already non-increasing
    qs.parts()
        .iter()
        .filter(|q| *q % 2 == 1)
        .map(|q| i64::from(*q))
        .collect()
}

/// Negative hyperbolic case of the single-orbit writhe inequality, in the
/// trivialization where `CZ(gamma^k) = k`.
pub fn sweep_neg_hyp(m_max: u32) -> Result<SweepReport> {
    let mut r = SweepReport::new("neg-hyp", json!({ "m_max": m_max }));
    let kind = OrbitKind::NegativeHyperbolic(1);
    for m in 1..=m_max {
        for qs in partitions_of(m) {
            let odd = odd_parts_desc(&qs);
            let s: i64 = odd
                .iter()
                .enumerate()
                .map(|(i, q)| 1 - (i as i64 + 1) + (1 - q) / 2)
                .sum();
            r.instances_checked += 1;
            if s > 0 {
                r.violation(format!("{qs}: sum {s} > 0"));
            }
            let predicted = odd.is_empty() || (odd.len() == 1 && odd[0] == 1);
            if (s == 0) != predicted {
                r.violation(format!(
                    "{qs}: equality is {} but predicted {predicted}",
                    s == 0
                ));
            }
            if s == 0 {
                r.equality(qs.to_string());
            }
            let direct = uwb(&kind, 0, qs.parts())? - writhe_bound(&kind, 0, qs.parts())?;
            // the reduced sum only shares its sign and zero set with the
            // slack of the writhe inequality, not its value
            if direct < 0 || (direct == 0) != (s == 0) {
                r.violation(format!(
                    "{qs}: direct slack {direct} against reduced sum {s}"
                ));
            }
        }
    }
    Ok(r)
}

/// The three per-orbit inequalities behind the lower bound on `J0`.
pub fn sweep_jbound_cases(m_max: u32, thetas: &[MonodromyAngle]) -> Result<SweepReport> {
    let parts: Vec<Result<SweepReport>> = thetas
        .par_iter()
        .map(|t| {
            let mut r = SweepReport::new("jbound", json!(null));
            let t = t.fractional();
            for m in 1..=m_max {
                let mi = i64::from(m);
                let below: i64 = (1..mi).map(|k| t.floor_mul(k)).sum();
                for qs in partitions_of(m) {
                    let q: Vec<i64> = qs.parts().iter().map(|x| i64::from(*x)).collect();
                    let f: Vec<i64> = q.iter().map(|x| t.floor_mul(*x)).collect();
                    let mut lhs = 0;
                    for i in 0..q.len() {
                        for j in 0..q.len() {
                            lhs += (q[i] * f[j]).max(q[j] * f[i]);
                        }
                    }
                    let fsum: i64 = f.iter().sum();
                    let rhs = 2 * below + fsum + mi - q.len() as i64;
                    r.instances_checked += 1;
                    if lhs > rhs {
                        r.violation(format!("case 1 theta {t} {qs}: {lhs} > {rhs}"));
                    } else if lhs == rhs {
                        r.equality(format!("case 1 theta {t} {qs}"));
                    }
                    let st = staircase(qs.parts(), &t)?;
                    if !st.degenerate {
                        let lattice = crate::partitions::pick_stats(&st.polygon)?.lattice;
                        let bound = 2 + (1..mi).map(|k| t.floor_mul(k) + 1).sum::<i64>() + fsum;
                        if lattice > bound {
                            r.violation(format!("case 1 theta {t} {qs}: L = {lattice} > {bound}"));
                        }
                    }
                }
            }
            Ok(r)
        })
        .collect();
    let mut parts = parts.into_iter().collect::<Result<Vec<_>>>()?;

    let mut r = SweepReport::new("jbound", json!(null));
    for n in (-4..=4).step_by(2) {
        let kind = OrbitKind::PositiveHyperbolic(n);
        for m in 1..=m_max {
            for qs in partitions_of(m) {
                let ends: i64 = qs
                    .parts()
                    .iter()
                    .map(|x| cz_at(&kind, 0, *x))
                    .sum::<Result<i64>>()?;
                let corr: i64 = qs.parts().iter().map(|x| i64::from(*x) - 1).sum();
                let v = qs.len() as i64 - cz_at(&kind, 0, m)? + ends + corr;
                r.instances_checked += 1;
                if v != i64::from(m) {
                    r.violation(format!("case 2 n {n} {qs}: {v} != {m}"));
                }
            }
        }
    }
    for m in 1..=m_max {
        let mi = i64::from(m);
        for qs in partitions_of(m) {
            let q = qs.parts();
            let mut w_max: i64 = q
                .iter()
                .map(|x| {
                    let s = (i64::from(*x) - 1).pow(2);
                    (s + 1) / 2
                })
                .sum();
            for i in 0..q.len() {
                for j in i + 1..q.len() {
                    let (a, b) = (i64::from(q[i]), i64::from(q[j]));
                    w_max += 2 * (a * (b / 2)).max(b * (a / 2));
                }
            }
            let odd = odd_parts_desc(&qs);
            let lhs = q.len() as i64 + mi * (mi - 1) / 2 - w_max;
            let weighted: i64 = odd.iter().enumerate().map(|(j, x)| j as i64 * x).sum();
            let rhs = (mi + odd.len() as i64) / 2 + weighted;
            r.instances_checked += 1;
            if lhs < rhs {
                r.violation(format!("case 3 {qs}: {lhs} < {rhs}"));
            } else if lhs == rhs {
                r.equality(format!("case 3 {qs}"));
            }
        }
    }
    parts.push(r);
    Ok(SweepReport::merged(
        "jbound",
        json!({ "m_max": m_max, "thetas": labels(thetas) }),
        parts,
    ))
}

/// One configuration of the per-orbit union inequality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HugeCase {
    pub data: LocalUnionData,
    /// Every writhe and linking number sits at its bound.
    pub saturated: bool,
}

impl HugeCase {
    pub fn label(&self) -> String {
        let comps: Vec<String> = self
            .data
            .components
            .iter()
            .map(|c| {
                format!(
                    "{} d={} d'={} w={}",
                    Partition::new(c.ends.clone()),
                    c.degree,
                    c.degree_prime,
                    c.writhe
                )
            })
            .collect();
        let l = if self.data.components.len() == 2 {
            format!(" l={}", self.data.linking[0][1])
        } else {
            String::new()
        };
        format!("{} [{}]{l}", kind_label(&self.data.orbit), comps.join("; "))
    }
}

/// Writhe bound for the braid `qs` and linking bound for a pair of braids:
/// the pointwise bounds at elliptic orbits, the telescoping bounds at
/// hyperbolic ones.
fn local_bounds(kind: &OrbitKind, t: &CzTable, a: &[u32], b: Option<&[u32]>) -> Result<(i64, i64)> {
    let w = if kind.is_elliptic() {
        writhe_bound(kind, 0, a)?
    } else {
        uwb(kind, 0, a)?
    };
    let l = match b {
        None => 0,
        Some(b) if kind.is_elliptic() => linking_bound(kind, 0, a, b)?,
        Some(b) => {
            let ma: i64 = a.iter().map(|x| i64::from(*x)).sum();
            let mb: i64 = b.iter().map(|x| i64::from(*x)).sum();
            t.tele(ma, mb).div_euclid(2)
        }
    };
    Ok((w, l))
}

/// All configurations with at most two components, degrees in `0..=2`
/// and `M + M' <= m_max`; writhes and linking numbers at their bounds and
/// one below.
pub fn huge_family(kind: &OrbitKind, m_max: u32) -> Result<Vec<HugeCase>> {
    kind.check_mult(m_max)?;
    let t = CzTable::new(kind, m_max)?;
    let mut singles: Vec<(Vec<u32>, u32, u32)> = Vec::new();
    for m in 1..=m_max {
        for qs in partitions_of(m) {
            for d in 0..=2u32 {
                for d2 in 0..=2u32 {
                    if d + d2 >= 1 && (d + d2) * m <= m_max {
                        singles.push((qs.parts().to_vec(), d, d2));
                    }
                }
            }
        }
    }
    let weight = |s: &(Vec<u32>, u32, u32)| (s.1 + s.2) * s.0.iter().sum::<u32>();
    let mut out = Vec::new();
    for s in &singles {
        let (w, _) = local_bounds(kind, &t, &s.0, None)?;
        for dw in 0..2 {
            out.push(HugeCase {
                data: LocalUnionData {
                    orbit: kind.clone(),
                    offset: 0,
                    components: vec![LocalComponent {
                        ends: s.0.clone(),
                        degree: s.1,
                        degree_prime: s.2,
                        writhe: w - dw,
                    }],
                    linking: vec![vec![0]],
                },
                saturated: dw == 0,
            });
        }
    }
    for a in &singles {
        for b in &singles {
            if weight(a) + weight(b) > m_max {
                continue;
            }
            let (wa, l) = local_bounds(kind, &t, &a.0, Some(&b.0))?;
            let (wb, _) = local_bounds(kind, &t, &b.0, None)?;
            for bits in 0..8u32 {
                let (da, db, dl) = (
                    i64::from(bits & 1),
                    i64::from((bits >> 1) & 1),
                    i64::from((bits >> 2) & 1),
                );
                out.push(HugeCase {
                    data: LocalUnionData {
                        orbit: kind.clone(),
                        offset: 0,
                        components: vec![
                            LocalComponent {
                                ends: a.0.clone(),
                                degree: a.1,
                                degree_prime: a.2,
                                writhe: wa - da,
                            },
                            LocalComponent {
                                ends: b.0.clone(),
                                degree: b.1,
                                degree_prime: b.2,
                                writhe: wb - db,
                            },
                        ],
                        linking: vec![vec![0, l - dl], vec![l - dl, 0]],
                    },
                    saturated: bits == 0,
                });
            }
        }
    }
    Ok(out)
}

/// Slack expected at saturation for a hyperbolic orbit: only the parity
/// defect of odd telescoping sums survives.
fn hyperbolic_saturation(t: &CzTable, data: &LocalUnionData) -> i64 {
    let mut s = 0;
    for (a, ca) in data.components.iter().enumerate() {
        for (b, cb) in data.components.iter().enumerate() {
            if a != b {
                let ma: i64 = ca.ends.iter().map(|x| i64::from(*x)).sum();
                let mb: i64 = cb.ends.iter().map(|x| i64::from(*x)).sum();
                s += i64::from(ca.degree * cb.degree_prime) * t.tele(ma, mb).rem_euclid(2);
            }
        }
    }
    s
}

/// Per-orbit union inequality over [`huge_family`]: the slack is never
/// negative, and at hyperbolic orbits it vanishes at saturation.
pub fn sweep_huge(m_max: u32, kinds: &[OrbitKind]) -> Result<SweepReport> {
    let parts: Vec<Result<SweepReport>> = kinds
        .par_iter()
        .map(|kind| {
            let t = CzTable::new(kind, m_max)?;
            let mut r = SweepReport::new("huge", json!(null));
            for case in huge_family(kind, m_max)? {
                let s = huge_slack(&case.data)?;
                r.instances_checked += 1;
                if s < 0 {
                    r.violation(format!("{}: slack {s}", case.label()));
                }
                if case.saturated && kind.is_hyperbolic() {
                    let expect = hyperbolic_saturation(&t, &case.data);
                    if s != expect {
                        r.violation(format!(
                            "{}: saturated slack {s}, expected {expect}",
                            case.label()
                        ));
                    }
                }
                if s == 0 {
                    r.equality(case.label());
                }
            }
            Ok(r)
        })
        .collect();
    let parts = parts.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(SweepReport::merged(
        "huge",
        json!({ "m_max": m_max, "orbits": kind_labels(kinds) }),
        parts,
    ))
}

/// The `J0` analogue over the same family: the slack with the top iterates
/// dropped, minus the local `E + N` correction, should be non-negative.
pub fn sweep_j_union(m_max: u32, kinds: &[OrbitKind]) -> Result<SweepReport> {
    let parts: Vec<Result<SweepReport>> = kinds
        .par_iter()
        .map(|kind| {
            let mut r = SweepReport::new("j-union", json!(null));
            for case in huge_family(kind, m_max)? {
                let s = j_huge_slack(&case.data)? - local_correction(&case.data);
                r.instances_checked += 1;
                if s < 0 {
                    r.violation(format!("{}: slack {s}", case.label()));
                } else if s == 0 {
                    r.equality(case.label());
                }
            }
            Ok(r)
        })
        .collect();
    let parts = parts.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(SweepReport::merged(
        "j-union",
        json!({ "m_max": m_max, "orbits": kind_labels(kinds) }),
        parts,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(p: i64, q: i64) -> MonodromyAngle {
        MonodromyAngle::with_max_horizon(p, q).unwrap()
    }

    #[test]
    fn ce1_examples() {
        let r = sweep_ce1(4, &[t(3, 10)]).unwrap();
        assert_eq!(r.instances_checked, 11);
        assert!(r.ok());
        assert_eq!(
            r.equality_cases,
            vec![
                "theta 3/10 m 1 (1)",
                "theta 3/10 m 2 (1,1)",
                "theta 3/10 m 3 (1,1,1)",
                "theta 3/10 m 4 (4)"
            ]
        );
        let r = sweep_ce1(3, &[t(7, 10)]).unwrap();
        assert_eq!(
            r.equality_cases,
            vec![
                "theta 7/10 m 1 (1)",
                "theta 7/10 m 2 (2)",
                "theta 7/10 m 3 (3)"
            ]
        );
        let r = sweep_ce1(1, &[t(5, 7)]).unwrap();
        assert_eq!((r.instances_checked, r.equality_count), (1, 1));
    }

    #[test]
    fn horizon_is_enforced() {
        assert!(sweep_ce1(10, &[t(3, 10)]).is_err());
    }

    #[test]
    fn cli_examples() {
        let e = OrbitKind::elliptic(7, 10, 9).unwrap();
        let tab = CzTable::new(&e, 3).unwrap();
        assert_eq!((cross_lhs(&tab, &[2], &[1]), tab.tele(2, 1)), (2, 4));
        assert_eq!(tab.tele_prime(2, 1), 3);
        assert_eq!((cross_lhs(&tab, &[2], &[]), tab.tele(2, 0)), (0, 0));
        let r = sweep_cli_strict(4, &[OrbitKind::NegativeHyperbolic(1)]).unwrap();
        assert!(r.ok());
        assert!(!r.equality_cases.iter().any(|s| s == "h- 1 (1) vs (1)"));
        let r = sweep_cli_strict(4, &[OrbitKind::PositiveHyperbolic(2)]).unwrap();
        assert!(r.equality_cases.iter().any(|s| s == "h+ 2 (1) vs (1)"));
    }

    #[test]
    fn small_sweeps_are_clean() {
        let thetas = [t(3, 10), t(7, 10), t(2, 11)];
        assert!(sweep_pick(7, &thetas).unwrap().ok());
        let kinds: Vec<OrbitKind> = thetas.iter().map(|a| OrbitKind::Elliptic(*a)).collect();
        assert!(sweep_cli(8, &kinds).unwrap().ok());
        assert!(sweep_cli_strict(8, &kinds).unwrap().ok());
        assert!(sweep_jbound_cases(8, &thetas).unwrap().ok());
        let r = sweep_neg_hyp(10).unwrap();
        assert!(r.ok(), "{:?}", &r.violations[..r.violations.len().min(8)]);
        let kinds = [
            OrbitKind::Elliptic(t(3, 10)),
            OrbitKind::PositiveHyperbolic(2),
        ];
        assert!(sweep_huge(6, &kinds).unwrap().ok());
    }

    #[test]
    fn neg_hyp_examples() {
        let r = sweep_neg_hyp(5).unwrap();
        assert!(r.equality_cases.contains(&"(1)".to_string()));
        assert!(r.equality_cases.contains(&"(2,2,1)".to_string()));
        assert!(!r.equality_cases.contains(&"(3)".to_string()));
    }

    #[test]
    fn single_negative_hyperbolic_strand_breaks_the_corrected_bound() {
        // one end of multiplicity 1 in both curves: N = 1, slack 0
        let data = LocalUnionData {
            orbit: OrbitKind::NegativeHyperbolic(1),
            offset: 0,
            components: vec![LocalComponent {
                ends: vec![1],
                degree: 1,
                degree_prime: 1,
                writhe: 0,
            }],
            linking: vec![vec![0]],
        };
        assert_eq!(j_huge_slack(&data), Ok(0));
        assert_eq!(local_correction(&data), 1);
    }
}
