// Writhe, linking and winding of a braid around an orbit, and what full
// twists and reframing do to them.

use ech_index::braid::{
    insert_framing_twist, insert_full_twist, invariants, reframe, union_writhe, BraidWord, Letter,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // three strands around the axis; strands 1,2 form `a`, strand 3 is `b`
    let letters: Vec<Letter> = [(1, 1), (2, 1), (2, 1), (1, -1), (1, 1)]
        .into_iter()
        .map(Letter::from)
        .collect();
    let comps = [
        ("a".to_string(), [1, 2].into()),
        ("b".to_string(), [3].into()),
    ]
    .into();
    let b = BraidWord::new(3, letters, comps)?;
    let inv = invariants(&b)?;
    println!("writhe a {}, b {}", inv.writhe_of("a"), inv.writhe_of("b"));
    println!("linking a,b {}", inv.link("a", "b"));
    println!(
        "winding a {}, b {}",
        inv.winding_of("a"),
        inv.winding_of("b")
    );

    let merged = invariants(&b.merged("a", "b", "ab")?)?;
    assert_eq!(merged.writhe_of("ab"), union_writhe(&inv, "a", "b"));

    let all = b.merged("a", "b", "ab")?;
    let twisted = invariants(&insert_full_twist(&all, true))?;
    assert_eq!(twisted.writhe_of("ab") - merged.writhe_of("ab"), 6);

    let reframed = reframe(&inv, &b.strand_counts(), -1);
    assert_eq!(invariants(&insert_framing_twist(&b, true))?, reframed);
    println!(
        "after a framing twist: writhe a {}",
        reframed.writhe_of("a")
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
