//! Endofunctors on finite sets with their lax symmetric monoidal structure.

mod elem;
mod expr;
mod lax;
mod monoid;
mod sexpr;

pub use elem::{natural_cmp, Elem, FinMap, FinSet, STAR};
pub use expr::FunctorExpr;
pub use lax::{check_lax_axioms, check_lax_axioms_with, LaxAxiom, LaxReport, LaxRow, LaxWitness, NablaVariant};
pub use monoid::ConstMonoid;
