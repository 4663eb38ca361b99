//! Naming the universal measuring coalgebra between an algebra and a target.

use mlab::structures::{
    algebras_up_to_iso, lazy_saturation, std_algebra, step_coalgebras_up_to_iso, PointedSuccAlgebra,
};
use mlab::universal::{classify_universal, dual_algebra, dual_coalgebra_classified};

fn main() -> mlab::Result<()> {
    for n in 0..3 {
        for b in algebras_up_to_iso(2) {
            let cl = classify_universal(&std_algebra(n), &b)?;
            println!("A(<{n}>, {b}) = {}", cl.name);
        }
    }

    // a homomorphism exists although partial induction stops early
    let a = PointedSuccAlgebra::numbered(0, vec![1, 2, 0])?;
    let b = PointedSuccAlgebra::numbered(1, vec![0, 3, 1, 2])?;
    let cl = classify_universal(&a, &b)?;
    println!("3-cycle into {b}: {} ({})", cl.name, cl.note.unwrap_or_default());

    for n in 0..4 {
        println!("dual of <{n}>: {}", dual_coalgebra_classified(&std_algebra(n))?);
    }
    for c in step_coalgebras_up_to_iso(2) {
        let chain = lazy_saturation(&dual_algebra(&c), 100)?;
        println!(
            "[{:?}, N]: chain {:?}, prefix {}",
            c.step_table(),
            chain.elements,
            chain.prefix
        );
    }
    Ok(())
}
