// The staircase region of a multiset of multiplicities and the lattice
// point counts that control the key inequality.

use ech_index::model::MonodromyAngle;
use ech_index::partitions::{ce1_sides, pick_chain, staircase};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let theta = MonodromyAngle::with_max_horizon(7, 10)?;
    for qs in [
        vec![3u32],
        vec![2, 1],
        vec![1, 1, 1],
        vec![4, 3],
        vec![5, 2],
    ] {
        let sides = ce1_sides(&qs, &theta)?;
        let st = staircase(&qs, &theta)?;
        print!(
            "{qs:?}: lhs {} <= rhs {} (equality {})",
            sides.lhs, sides.rhs, sides.equality
        );
        if st.degenerate {
            println!(", degenerate region");
            continue;
        }
        let chain = pick_chain(&qs, &theta)?;
        println!(
            ", 2A {} L {} B {}, pick {} area {} lattice {} boundary {}",
            chain.stats.two_area,
            chain.stats.lattice,
            chain.stats.boundary,
            chain.pick_holds(),
            chain.area_matches(),
            chain.lattice_ok(),
            chain.boundary_ok()
        );
        assert!(chain.pick_holds() && chain.area_matches());
        assert!(sides.lhs <= sides.rhs);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
