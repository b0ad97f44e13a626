// Absolute gradings of an orbit set as classes in a torsor, their
// independence of the framing and crossing choices, and agreement with the
// relative index on nicely embedded data.

use ech_index::model::{OrbitClass, OrbitKind, OrbitSet, Side, Trivialization};
use ech_index::relindex::{
    abs_grading, check_abs_vs_rel, GradingContext, GradingInput, GradingKind, IndexValue, NiceEnd,
    NiceRepData,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let e = OrbitClass::new("e", OrbitKind::elliptic(3, 10, 9)?);
    let h = OrbitClass::new("h", OrbitKind::negative_hyperbolic(1)?);
    let set = OrbitSet::new(Side::Plus, vec![(e.clone(), 3), (h.clone(), 1)])?;
    let input = GradingInput {
        orbits: set.clone(),
        p: IndexValue::new(5, 4),
        writhes: [("e".to_string(), 2)].into(),
        tau: Trivialization::reference([&e, &h]),
    };
    let ctx = GradingContext::Declared { modulus: 4 };
    let shift = Trivialization::default().with("e", 1).with("h", -2);
    for kind in [
        GradingKind::Ech,
        GradingKind::J0,
        GradingKind::JPlus,
        GradingKind::JMinus,
    ] {
        let g = abs_grading(&input, kind, &ctx)?;
        println!("{kind:?}: {} mod {}", g.offset.value(), g.offset.modulus());
        assert_eq!(abs_grading(&input.reframed(&shift, kind)?, kind, &ctx)?, g);
        assert_eq!(
            abs_grading(&input.with_crossing_change("e", -1), kind, &ctx)?,
            g
        );
    }

    // two orbits shared by both ends, one carrying extra reduced strands
    let plus = OrbitSet::new(Side::Plus, vec![(e.clone(), 3)])?;
    let minus = OrbitSet::new(Side::Minus, vec![(e.clone(), 1), (h.clone(), 1)])?;
    let end = |orbit: &str, side, mult, reduced, writhe, winding| NiceEnd {
        orbit: orbit.to_string(),
        side,
        mult,
        reduced,
        writhe,
        winding,
        conormal_shift: 0,
        offset: 0,
    };
    let data = NiceRepData {
        ends: vec![
            end("e", Side::Plus, 3, 2, 1, 2),
            end("e", Side::Minus, 1, 0, 0, 0),
            end("h", Side::Minus, 1, 1, 0, -1),
        ],
        conormal_c1: 0,
    }
    .with_consistent_conormal(4);
    println!(
        "absolute and relative gradings agree: {}",
        check_abs_vs_rel(&plus, &minus, &data, 4)?
    );
    assert!(check_abs_vs_rel(&plus, &minus, &data, 4)?);
    assert!(!check_abs_vs_rel(&plus, &minus, &data, 5)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
