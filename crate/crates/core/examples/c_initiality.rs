//! C-initial algebras on bounded families and the unique map into [C, N].

use mlab::initiality::{algebra_family, is_C_initial_bounded, terminal_C_initial_bounded, unique_map_to_dual};
use mlab::structures::{std_algebra, std_coalgebra};

fn main() -> mlab::Result<()> {
    let family = algebra_family(3);
    for n in 0..3 {
        let r = is_C_initial_bounded(&std_algebra(n), &std_coalgebra(n), &family, 1_000_000)?;
        println!("<{n}> is <{n}>^-initial on {} algebras: {:?}", family.len(), r.verdict);
    }
    let r = is_C_initial_bounded(&std_algebra(0), &std_coalgebra(1), &family, 1_000_000)?;
    println!(
        "<0> against <1>^: {:?}, witness {:?}",
        r.verdict,
        r.witness.map(|i| &r.counts[i])
    );

    let t = terminal_C_initial_bounded(&std_coalgebra(1), 3, 1_000_000)?;
    println!(
        "terminal <1>^-initial: {:?} {:?}",
        t.verdict,
        t.algebra.map(|a| a.to_string())
    );

    let d = unique_map_to_dual(&std_algebra(3), &std_coalgebra(3), 100)?;
    for (m, v) in d.images.iter().enumerate() {
        println!("  {m} -> {v:?}");
    }
    println!("homs into the reachable part: {}", d.homs_into_reachable);
    Ok(())
}
