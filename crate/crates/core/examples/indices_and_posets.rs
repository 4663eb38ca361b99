//! Indices of coalgebra states and the posets of subcoalgebras and quotients.

use mlab::structures::{quotient_algebras, std_algebra, std_coalgebra, subcoalgebras, StepCoalgebra};

fn main() -> mlab::Result<()> {
    // 0 stops, 1 -> 0, 2 -> 2 loops forever
    let c = StepCoalgebra::numbered(vec![None, Some(0), Some(2)])?;
    for s in 0..c.len() {
        println!("index of {}: {}", c.carrier().get(s), c.index(s));
    }

    let subs = subcoalgebras(&std_coalgebra(2), 8)?;
    println!("subcoalgebras of <2>^:");
    for (i, s) in subs.items.iter().enumerate() {
        println!("  #{i} {:?}", s.coalgebra.carrier().names());
    }
    println!("  covers {:?}", subs.covers);

    let a = std_algebra(2);
    let quots = quotient_algebras(&a, 6)?;
    println!("quotients of <2>:");
    for q in &quots.items {
        println!("  blocks {:?}: {}", q.blocks, q.algebra);
    }
    Ok(())
}
