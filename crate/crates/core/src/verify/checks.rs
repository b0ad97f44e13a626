use serde_json::json;

use super::random::{
    random_adjunction_component, random_braid, random_nice_rep, random_orbit_set_pair,
    random_relclass, random_symplectization_curve, random_trivialization, rng,
};
use super::SweepReport;
use crate::braid::{insert_framing_twist, insert_full_twist, invariants, reframe, union_writhe};
use crate::curves::{
    index_inequality_report, j_plus_pipeline, size_union_identity, writhe_tau, CurveData,
};
use crate::error::Result;
use crate::model::Trivialization;
use crate::relindex::{check_abs_vs_rel, ech_index, j_indices};

/// `I` and `J0, J+, J-` of random relative classes under two random
/// trivializations.
pub fn check_tau_invariance(seed: u64, n: usize) -> Result<SweepReport> {
    let mut r = SweepReport::new("tau-invariance", json!({ "seed": seed, "n": n }));
    let mut g = rng(seed);
    for i in 0..n {
        let z = random_relclass(&mut g);
        let t1 = random_trivialization(&mut g, z.orbits());
        let t2 = random_trivialization(&mut g, z.orbits());
        r.instances_checked += 1;
        let (i1, i2) = (ech_index(&z, &t1)?, ech_index(&z, &t2)?);
        let (j1, j2) = (j_indices(&z, &t1)?, j_indices(&z, &t2)?);
        if i1 != i2 || j1 != j2 {
            r.violation(format!("sample {i}: I {i1} vs {i2}, J {j1:?} vs {j2:?}"));
        }
    }
    Ok(r)
}

/// Union writhes of merged components, full twists and framing twists on
/// random braids.
pub fn check_braids(seed: u64, n: usize) -> Result<SweepReport> {
    let mut r = SweepReport::new("braids", json!({ "seed": seed, "n": n }));
    let mut g = rng(seed);
    for i in 0..n {
        let b = random_braid(&mut g, 6, 40);
        let inv = invariants(&b)?;
        let names: Vec<String> = b.components.keys().cloned().collect();
        for (x, a) in names.iter().enumerate() {
            for c in &names[x + 1..] {
                r.instances_checked += 1;
                let merged = invariants(&b.merged(a, c, "merged")?)?;
                let (got, want) = (merged.writhe_of("merged"), union_writhe(&inv, a, c));
                if got != want {
                    r.violation(format!(
                        "sample {i}: merging {a} {c} gives {got}, expected {want}"
                    ));
                }
            }
        }
        let mut all = b.clone();
        for a in &names[1..] {
            all = all.merged(&names[0], a, &names[0])?;
        }
        let before = invariants(&all)?.writhe_of(&names[0]);
        let m = b.m as i64;
        for positive in [true, false] {
            r.instances_checked += 1;
            let after = invariants(&insert_full_twist(&all, positive))?.writhe_of(&names[0]);
            let step = if positive { m * (m - 1) } else { -m * (m - 1) };
            if after - before != step {
                r.violation(format!(
                    "sample {i}: full twist changes writhe by {}",
                    after - before
                ));
            }
            r.instances_checked += 1;
            let got = invariants(&insert_framing_twist(&b, positive))?;
            let want = reframe(&inv, &b.strand_counts(), if positive { -1 } else { 1 });
            if got != want {
                r.violation(format!(
                    "sample {i}: framing twist (positive {positive}) disagrees with reframing"
                ));
            }
        }
    }
    Ok(r)
}

/// The index inequality holds exactly when the writhe stays below the
/// bound, on random simple components from the adjunction formula, in
/// random trivializations.
pub fn check_index_equivalence(seed: u64, n: usize) -> Result<SweepReport> {
    let mut r = SweepReport::new("index-equivalence", json!({ "seed": seed, "n": n }));
    let mut g = rng(seed);
    for i in 0..n {
        let (comp, q_self) = random_adjunction_component(&mut g);
        let tau = random_trivialization(&mut g, comp.orbits());
        let curve = CurveData::single(comp.clone(), q_self);
        let rep = index_inequality_report(&curve, &tau)?;
        let w = writhe_tau(&comp, &tau)?;
        r.instances_checked += 1;
        if rep.holds != (w <= rep.writhe_bound) || rep.declared_writhe != Some(w) {
            r.violation(format!(
                "sample {i}: holds {} with writhe {w}, bound {}, adjunction writhe {}",
                rep.holds, rep.writhe_bound, rep.writhe
            ));
        }
        if rep.slack == 0 {
            r.equality(format!("sample {i}"));
        }
    }
    Ok(r)
}

/// `J+ >= 0` and the fold identities on random curves in a
/// symplectization, in the reference and a random trivialization.
pub fn check_j_plus(seed: u64, n: usize) -> Result<SweepReport> {
    let mut r = SweepReport::new("j-plus", json!({ "seed": seed, "n": n }));
    let mut g = rng(seed);
    for i in 0..n {
        let curve = random_symplectization_curve(&mut g);
        let t0 = Trivialization::reference(curve.orbits());
        let t1 = random_trivialization(&mut g, curve.orbits());
        r.instances_checked += 1;
        let a = j_plus_pipeline(&curve, &t0)?;
        let b = j_plus_pipeline(&curve, &t1)?;
        if !a.holds || a.j_plus < 0 {
            r.violation(format!("sample {i}: J+ {} blocks {:?}", a.j_plus, a.blocks));
        }
        if a.j_plus != b.j_plus || a.holds != b.holds {
            r.violation(format!(
                "sample {i}: J+ {} vs {} after reframing",
                a.j_plus, b.j_plus
            ));
        }
        if a.j_plus == 0 {
            r.equality(format!("sample {i}"));
        }
    }
    Ok(r)
}

pub fn check_size_identity(seed: u64, n: usize) -> Result<SweepReport> {
    let mut r = SweepReport::new("size-identity", json!({ "seed": seed, "n": n }));
    let mut g = rng(seed);
    for i in 0..n {
        let (a, b) = random_orbit_set_pair(&mut g);
        r.instances_checked += 1;
        let (lhs, rhs) = size_union_identity(&a, &b)?;
        if lhs != rhs {
            r.violation(format!("sample {i}: {lhs} vs {rhs}"));
        }
    }
    Ok(r)
}

/// Absolute and relative gradings agree on consistent nicely embedded
/// data and disagree after each unit perturbation of it.
pub fn check_abs_rel(seed: u64, n: usize) -> Result<SweepReport> {
    let mut r = SweepReport::new("abs-rel", json!({ "seed": seed, "n": n }));
    let mut g = rng(seed);
    for i in 0..n {
        let (a, b, data, c) = random_nice_rep(&mut g);
        r.instances_checked += 1;
        if !check_abs_vs_rel(&a, &b, &data, c)? {
            r.violation(format!("sample {i}: consistent data rejected"));
        }
        for s in [1, -1] {
            let mut bad = vec![("c", data.clone(), c + s)];
            let mut d = data.clone();
            d.conormal_c1 += s;
            bad.push(("conormal c1", d, c));
            for k in 0..data.ends.len() {
                if data.ends[k].reduced == 0 {
                    continue;
                }
                let mut d = data.clone();
                d.ends[k].winding += s;
                bad.push(("winding", d, c));
                let mut d = data.clone();
                d.ends[k].conormal_shift += s;
                bad.push(("conormal shift", d, c));
            }
            for (what, d, c) in bad {
                r.instances_checked += 1;
                if check_abs_vs_rel(&a, &b, &d, c)? {
                    r.violation(format!("sample {i}: perturbed {what} by {s} accepted"));
                }
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_checks_pass() {
        for r in [
            check_tau_invariance(1, 200).unwrap(),
            check_braids(2, 100).unwrap(),
            check_index_equivalence(3, 200).unwrap(),
            check_j_plus(4, 200).unwrap(),
            check_size_identity(5, 200).unwrap(),
            check_abs_rel(6, 200).unwrap(),
        ] {
            assert!(r.ok(), "{}: {:?}", r.name, r.violations);
            assert!(r.instances_checked > 0);
        }
    }
}
