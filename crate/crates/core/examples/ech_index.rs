// Relative ECH and J indices of a class, read from JSON, in several
// trivializations.

use ech_index::model::{RelClassDoc, Trivialization};
use ech_index::relindex::{ech_index, j_indices, transform_relclass};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let doc: RelClassDoc = serde_json::from_str(include_str!("../data/relclass.json"))?;
    let (z, tau) = doc.resolve()?;
    let i = ech_index(&z, &tau)?;
    let j = j_indices(&z, &tau)?;
    println!(
        "I = {i}, J0 = {}, J+ = {}, J- = {}",
        j.j0, j.j_plus, j.j_minus
    );

    for shift in [-2, 1, 3] {
        let t = Trivialization::new(
            tau.offsets()
                .iter()
                .map(|(k, v)| (k.clone(), v + shift))
                .collect(),
        );
        let (c, q) = transform_relclass(&z, &t)?;
        println!(
            "shift {shift}: c_tau {c}, Q_tau {q}, I {}",
            ech_index(&z, &t)?
        );
        assert_eq!(ech_index(&z, &t)?, i);
        assert_eq!(j_indices(&z, &t)?, j);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
