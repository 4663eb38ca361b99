//! Checking, enumerating and composing measurings.

use mlab::measuring::{compose_measurings, enumerate_measurings, is_measuring};
use mlab::structures::{std_algebra, std_coalgebra};

fn main() -> mlab::Result<()> {
    let c = std_coalgebra(1).to_fin();
    let a = std_algebra(2).to_fin();

    // phi_0 sends everything to zero, phi_1 is the truncation to <1>
    let phi = vec![vec![0, 0, 0], vec![0, 1, 1]];
    println!("truncation measures: {}", is_measuring(&c, &a, &a, &phi)?.holds);
    let bad = vec![vec![0, 0, 0], vec![0, 0, 0]];
    let check = is_measuring(&c, &a, &a, &bad)?;
    println!("constant zero measures: {} ({:?})", check.holds, check.violation);

    let ms = enumerate_measurings(&c, &a, &a, 10_000)?;
    println!("{} measurings <1>^ -> (<2> -> <2>)", ms.len());
    for m in &ms {
        println!("  {}", m.to_json());
    }

    let gf = compose_measurings(&ms[0], &ms[ms.len() - 1])?;
    println!("composite over {} states: {}", gf.coalgebra().len(), gf.to_json());
    Ok(())
}
