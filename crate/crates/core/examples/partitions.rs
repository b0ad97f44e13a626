// Outgoing and incoming partitions from the extremal lattice paths, and
// the symmetry between them under `theta -> -theta`.

use ech_index::model::{MonodromyAngle, OrbitKind};
use ech_index::partitions::{p_in_kind, p_out_kind, partitions_of, upper_hull_path};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let theta = MonodromyAngle::with_max_horizon(3, 10)?;
    let e = OrbitKind::Elliptic(theta);
    let mirror = OrbitKind::Elliptic(theta.negated());
    for m in 1..=9 {
        let (out, _) = p_out_kind(&e, m)?;
        let (inn, _) = p_in_kind(&e, m)?;
        println!(
            "m={m}: P_out {out}  P_in {inn}  ({} partitions of m)",
            partitions_of(m).len()
        );
        assert_eq!(inn, p_out_kind(&mirror, m)?.0);
    }
    let path = upper_hull_path(&theta, 7);
    println!("upper hull for m=7 has corners {:?}", path.corners());

    for kind in [
        OrbitKind::positive_hyperbolic(0)?,
        OrbitKind::negative_hyperbolic(1)?,
    ] {
        println!("{}: P_out(5) {}", kind.label(), p_out_kind(&kind, 5)?.0);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
