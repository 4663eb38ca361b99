//! The measuring tensor C▷A and its homomorphisms.

use mlab::structures::{std_algebra, std_coalgebra, PointedSuccAlgebra};
use mlab::universal::measuring_tensor;

fn main() -> mlab::Result<()> {
    let c = std_coalgebra(1);
    let a = std_algebra(2);
    let t = measuring_tensor(&c, &a);
    println!("{t}");
    println!("finite: {:?}", t.as_finite().map(|f| f.to_string()));
    println!("critical pairs: {:?}", t.critical_pairs());
    let b = PointedSuccAlgebra::numbered(0, vec![1, 2, 2])?;
    for h in t.homs_into(&b, 1_000_000)? {
        println!("hom {h:?} is the measuring {:?}", t.hom_to_measuring(&h));
    }
    Ok(())
}
