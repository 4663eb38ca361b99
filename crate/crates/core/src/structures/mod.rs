//! Finite algebras and coalgebras, indices, lazy algebras and the standard families.

mod algebra;
mod index;
mod iso;
mod lazy;
mod poset;
mod product;

pub use algebra::{
    enumerate_alg_homs, enumerate_coalg_homs, is_algebra_hom, is_coalgebra_hom, FinAlgebra, FinCoalgebra,
    PointedSuccAlgebra, StepCoalgebra,
};
pub use index::{index_of, std_algebra, std_coalgebra, unit_coalgebra, unit_step_coalgebra, Index, SubterminalName};
pub use iso::{algebras_isomorphic, algebras_up_to_iso, all_algebras, all_step_coalgebras, step_coalgebras_up_to_iso};
pub use lazy::{canonical_from_initial, is_N_generated, lazy_saturation, Lasso, LazyAlgebra, Memoized, Naturals};
pub use poset::{
    quotient_algebras, subcoalgebras, PosetListing, PosetView, QuotientAlgebra, Subcoalgebra, DEFAULT_QUOTIENT_BOUND,
    DEFAULT_SUBCOALGEBRA_BOUND,
};
pub use product::{associator, product_coalgebra, product_step, right_unitor, symmetry};
