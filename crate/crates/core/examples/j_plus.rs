// The J+ lower bound on curves in a symplectization, built up one simple
// piece at a time.

use ech_index::curves::{j_plus_pipeline, Covered, CurveComponent, CurveData, PairTable};
use ech_index::model::{End, OrbitClass, OrbitKind, Side, Trivialization};
use ech_index::verify::random::{random_symplectization_curve, rng};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let e = OrbitClass::new("e", OrbitKind::elliptic(3, 10, 9)?);
    let cylinder = CurveComponent {
        id: "T".into(),
        genus: 0,
        delta: 0,
        ends: vec![
            End {
                side: Side::Plus,
                orbit: e.clone(),
                mult: 1,
            },
            End {
                side: Side::Minus,
                orbit: e.clone(),
                mult: 1,
            },
        ],
        c_ref: 0,
        w_ref: 0,
    };
    let mut q = PairTable::default();
    q.insert("T", "T", 0);
    let curve = CurveData {
        components: vec![Covered {
            component: cylinder,
            degree: 3,
        }],
        q,
        intersections: PairTable::default(),
    };
    let r = j_plus_pipeline(&curve, &Trivialization::reference(curve.orbits()))?;
    println!("triple cover of a trivial cylinder: J+ {}", r.j_plus);
    assert_eq!(r.j_plus, 0);

    let mut g = rng(2024);
    for i in 0..5 {
        let curve = random_symplectization_curve(&mut g);
        let r = j_plus_pipeline(&curve, &Trivialization::reference(curve.orbits()))?;
        println!(
            "random curve {i}: {} blocks, {} folds, J+ {}, holds {}",
            r.blocks.len(),
            r.steps.len(),
            r.j_plus,
            r.holds
        );
        for s in &r.steps {
            println!(
                "  + {}: {} + {} + 2({}) + {} + {} = {}",
                s.block,
                s.j_plus_left,
                s.j_plus_right,
                s.dot,
                s.j0_slack,
                s.step_slack,
                s.j_plus_union
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
