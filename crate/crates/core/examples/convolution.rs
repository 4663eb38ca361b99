//! The convolution algebra [C, B] and its chain `m ↦ min(index c, m)_B`.

use mlab::functor::Elem;
use mlab::measuring::convolution_algebra;
use mlab::structures::{LazyAlgebra, PointedSuccAlgebra, StepCoalgebra};

fn main() -> mlab::Result<()> {
    // states: 0 stops, 1 -> 0, 2 loops
    let c = StepCoalgebra::numbered(vec![None, Some(0), Some(2)])?;
    // B: 0 -> 1 -> 2 -> 3 -> 2
    let b = PointedSuccAlgebra::numbered(0, vec![1, 2, 3, 2])?;
    let conv = convolution_algebra(&c.to_fin(), &b.to_fin(), 1_000_000)?;
    let conv = PointedSuccAlgebra::from_fin(&conv)?;
    println!("[C, B] has {} elements", conv.len());
    for m in 0..6 {
        let Elem::Fun(values) = conv.carrier().get(conv.nth(m)) else {
            unreachable!()
        };
        let expected: Vec<usize> = (0..c.len())
            .map(|s| b.nth(c.index(s).finite().map_or(m, |k| k.min(m))))
            .collect();
        let names: Vec<String> = values.iter().map(|v| v.to_string()).collect();
        println!("m = {m}: {names:?}, min(index, m)_B = {expected:?}");
    }
    Ok(())
}
