//! The measuring graph of a pair of algebras, as JSON-ready data and DOT.

use mlab::structures::{std_algebra, std_coalgebra};
use mlab::universal::measuring_graph;

fn main() -> mlab::Result<()> {
    let a = std_algebra(2);
    let b = std_algebra(3);
    let g = measuring_graph(&a, &b, 1_000_000)?;
    println!("{} nodes, {} edges", g.nodes().len(), g.edges().len());
    println!("homomorphisms (self-loops): {:?}", g.loops());
    println!("longest path to a terminal node: {:?}", g.longest_path_to_terminal());
    let c = std_coalgebra(2);
    for l in g.labelings(&c) {
        println!("labeling of <2>^: {l:?} -> {:?}", g.labeling_to_measuring(&l));
    }
    print!("{}", g.to_dot());
    Ok(())
}
