// Fredholm and ECH indices of a curve given by its topological data, and
// the index inequality with its per-orbit verdicts.

use ech_index::curves::{
    adjunction_residual, curve_ech_index, fredholm_index, index_inequality_report,
    self_intersection, CurveData, CurveDataDoc,
};
use ech_index::model::Trivialization;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let doc: CurveDataDoc = serde_json::from_str(include_str!("../data/curve.json"))?;
    let curve = doc.resolve()?;
    let tau = Trivialization::reference(curve.orbits());
    for c in &curve.components {
        let q = curve.q.require(&c.component.id, &c.component.id)?;
        println!(
            "{}: ind {}, C.C {}, adjunction residual {}",
            c.component.id,
            fredholm_index(&c.component, &tau)?,
            self_intersection(&c.component, &tau)?,
            adjunction_residual(&c.component, q)
        );
    }
    let report = index_inequality_report(&curve, &tau)?;
    println!(
        "ind {} <= I {} - 2 delta {}: {} (slack {})",
        report.ind, report.ech_index, report.delta, report.holds, report.slack
    );
    for o in &report.orbits {
        println!(
            "  {:?} {}: ends {} extremal {} matches {}",
            o.side, o.orbit, o.ends, o.extremal, o.matches
        );
    }
    assert_eq!(report.ech_index, curve_ech_index(&curve, &tau)?);

    // a single component on its own
    let a = CurveData::single(curve.components[0].component.clone(), 0);
    let r = index_inequality_report(&a, &Trivialization::reference(a.orbits()))?;
    println!(
        "A alone: holds {}, writhe {} vs bound {}",
        r.holds, r.writhe, r.writhe_bound
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
