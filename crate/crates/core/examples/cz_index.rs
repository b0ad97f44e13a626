// Conley-Zehnder indices of iterates, their partial sums, and how they
// move when the trivialization is shifted.

use ech_index::cz::{cz_at, cz_sum, cz_sum_prime};
use ech_index::model::OrbitKind;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let e = OrbitKind::elliptic(3, 10, 9)?;
    let h = OrbitKind::positive_hyperbolic(2)?;
    let n = OrbitKind::negative_hyperbolic(-1)?;
    for (name, kind) in [("elliptic 3/10", &e), ("hyp+ n=2", &h), ("hyp- n=-1", &n)] {
        let czs: Vec<i64> = (1..=6)
            .map(|k| cz_at(kind, 0, k))
            .collect::<Result<_, _>>()?;
        println!("{name}: CZ(k) for k=1..6 = {czs:?}");
        println!(
            "  sum up to 6 = {}, sum below 6 = {}",
            cz_sum(kind, 0, 6)?,
            cz_sum_prime(kind, 0, 6)?
        );
    }
    assert_eq!(cz_at(&e, 0, 4)?, 3);
    // one unit of framing lowers CZ(gamma^k) by 2k
    for k in 1..=6 {
        assert_eq!(cz_at(&e, 1, k)?, cz_at(&e, 0, k)? - 2 * i64::from(k));
        assert_eq!(cz_at(&h, 1, k)?, cz_at(&h, 0, k)? - 2 * i64::from(k));
    }
    // past the horizon the angle is no longer known to be irrational enough
    assert!(cz_at(&e, 0, 10).is_err());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
