//! Automata measuring algebras of (2 × X^Σ) + 1.

use mlab::functor::FinSet;
use mlab::mixed_gf::{gf_algebra, gf_convolution, gf_measuring_count, MooreCoalgebra};

fn main() -> mlab::Result<()> {
    let sigma = FinSet::atoms(["a"])?;
    // even-length words
    let even = MooreCoalgebra::new(
        FinSet::atoms(["even", "odd"])?,
        sigma.clone(),
        vec![true, false],
        vec![vec![1], vec![0]],
    )?;
    // counts accepting steps mod 3, stop gives 0
    let counter = gf_algebra(&sigma, FinSet::numbered(3), |u| match u {
        None => 0,
        Some((true, xs)) => (xs[0] + 1) % 3,
        Some((false, xs)) => xs[0],
    })?;
    let conv = gf_convolution(&even, &counter, 1_000_000)?;
    println!("[C, A] has {} elements", conv.len());
    println!(
        "|Alg(A, [C, A])| = {}",
        gf_measuring_count(&even, &counter, &counter, 1_000_000)?
    );
    let unit = MooreCoalgebra::unit(sigma);
    println!(
        "|Alg(A, [1, A])| = {}",
        gf_measuring_count(&unit, &counter, &counter, 1_000_000)?
    );
    Ok(())
}
