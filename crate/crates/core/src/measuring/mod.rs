//! Measurings between algebras, partial induction and convolution algebras.

mod convolution;
mod core;
mod partial;

pub use self::core::{
    compose_measurings, count_measurings, count_succ_measurings, enumerate_measurings, generic_measuring_tables,
    is_measuring, is_measuring_generic, succ_measurings, Measuring, MeasuringCheck, Violation,
};
pub use convolution::{convolution_algebra, convolution_lazy, LazyConvolution};
pub use partial::{partial_induction, Conflict, PartialInductionOutcome, Requirement};
