//! Approximating a homomorphism step by step, and where it stops.

use mlab::measuring::{partial_induction, PartialInductionOutcome};
use mlab::structures::{std_algebra, Naturals, PointedSuccAlgebra};

fn main() -> mlab::Result<()> {
    let a = std_algebra(3);
    let b = PointedSuccAlgebra::numbered(0, vec![1, 2, 1])?;
    match partial_induction(&a, &b)? {
        PartialInductionOutcome::Partial {
            steps,
            functions,
            conflict,
        } => {
            println!("<3> into the 2-cycle: f_0..f_{steps} exist");
            for (k, f) in functions.iter().enumerate() {
                println!("  f_{k} = {f:?}");
            }
            println!("  conflict at element {}", conflict.element);
        }
        PartialInductionOutcome::Total { homomorphism, .. } => println!("total: {homomorphism:?}"),
    }

    let out = partial_induction(&std_algebra(4), &Naturals)?;
    println!(
        "<4> into N stops after {} steps (total: {})",
        out.steps(),
        out.is_total()
    );

    let point = PointedSuccAlgebra::numbered(0, vec![0])?;
    let out = partial_induction(&std_algebra(4), &point)?;
    println!("<4> into the point is total: {}", out.is_total());
    Ok(())
}
