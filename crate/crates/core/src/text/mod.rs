//! Text formats for structures and measurings, with positioned diagnostics.

mod diag;
mod lexer;
mod parse;
mod phi;
mod print;
mod workspace;

pub use diag::{Code, Diagnostic};
pub use parse::{parse_structure, Kind, Structure};
pub use phi::{measuring_document, parse_phi, MeasuringDocument};
pub use print::{
    coalgebra_dot, print_algebra, print_automaton, print_coalgebra, print_gf_algebra, print_structure, quote,
};
pub use workspace::Workspace;
