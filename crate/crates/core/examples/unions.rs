// Intersection numbers and index slack for unions of curves, and the
// local inequality at one orbit behind them.

use ech_index::curves::{
    dot, huge_slack, j_huge_slack, j_union_slack, local_correction, union, union_index_slack, uwb,
    CurveComponent, CurveData, LocalComponent, LocalUnionData,
};
use ech_index::model::{End, OrbitClass, OrbitKind, Side, Trivialization};

fn plane(id: &str, orbit: &OrbitClass, c_ref: i64) -> CurveComponent {
    CurveComponent {
        id: id.into(),
        genus: 0,
        delta: 0,
        ends: vec![End {
            side: Side::Plus,
            orbit: orbit.clone(),
            mult: 1,
        }],
        c_ref,
        w_ref: 0,
    }
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let e = OrbitClass::new("e", OrbitKind::elliptic(3, 10, 9)?);
    let h = OrbitClass::new("h", OrbitKind::negative_hyperbolic(1)?);
    for o in [&e, &h] {
        let c = CurveData::single(plane("A", o, 0), 0);
        let t = Trivialization::reference(c.orbits());
        let j = j_union_slack(&c, &c, &t)?;
        println!(
            "{}: C.C {}, I slack {}, J0 slack {} (E {}, N {})",
            o.kind.label(),
            dot(&c, &c, &t)?,
            union_index_slack(&c, &c, &t)?,
            j.slack,
            j.e(),
            j.n()
        );
    }

    // two distinct planes at the same orbit, with their cross terms
    let a = CurveData::single(plane("A", &e, 0), 0);
    let mut b = CurveData::single(plane("B", &e, 0), 0);
    // linking of two single strands at this orbit is at most 0, so Q(A,B) >= A.B
    b.q.insert("A", "B", 1);
    b.intersections.insert("A", "B", 1);
    let u = union(&a, &b)?;
    let t = Trivialization::reference(u.orbits());
    println!(
        "A.B {}, I slack {}",
        dot(&a, &b, &t)?,
        union_index_slack(&a, &b, &t)?
    );

    // local data at one positive hyperbolic orbit, writhe at its bound
    let kind = OrbitKind::positive_hyperbolic(2)?;
    let data = LocalUnionData {
        orbit: kind.clone(),
        offset: 0,
        components: vec![
            LocalComponent {
                ends: vec![3],
                degree: 1,
                degree_prime: 1,
                writhe: uwb(&kind, 0, &[3])?,
            },
            LocalComponent {
                ends: vec![1],
                degree: 0,
                degree_prime: 2,
                writhe: 0,
            },
        ],
        linking: vec![vec![0, 2], vec![2, 0]],
    };
    println!(
        "local slack {}, J version {}, correction {}",
        huge_slack(&data)?,
        j_huge_slack(&data)?,
        local_correction(&data)
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
