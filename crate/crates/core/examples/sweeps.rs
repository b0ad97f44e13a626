// Small versions of the exhaustive sweeps; the acceptance test runs them
// on the full grids.

use ech_index::verify::{
    hyperbolic_grid, sweep_ce1, sweep_cli_strict, sweep_duality, sweep_huge, sweep_j_union,
    sweep_neg_hyp, sweep_oracle, theta_grid,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let thetas = theta_grid(&[11])?;
    let mut kinds: Vec<_> = thetas
        .iter()
        .copied()
        .map(ech_index::model::OrbitKind::Elliptic)
        .collect();
    kinds.extend(hyperbolic_grid(-2, 2));
    let reports = [
        sweep_ce1(6, &thetas)?,
        sweep_oracle(6, &thetas)?,
        sweep_duality(10, &thetas)?,
        sweep_cli_strict(6, &kinds)?,
        sweep_neg_hyp(8)?,
        sweep_huge(4, &kinds)?,
        sweep_j_union(4, &kinds)?,
    ];
    for r in &reports {
        println!(
            "{:<10} {:>8} instances {:>5} violations {:>6} equality cases",
            r.name, r.instances_checked, r.violation_count, r.equality_count
        );
    }
    // the last sweep includes negative hyperbolic orbits, where the J0
    // union bound can fail by one
    if let Some(v) = reports[6].violations.first() {
        println!("first j-union violation: {v}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
