pub mod cli;
pub mod error;
pub mod functor;
pub mod initiality;
pub mod laws;
pub mod measuring;
pub mod mixed_gf;
pub mod report;
mod search;
pub mod structures;
pub mod text;
pub mod universal;

pub use error::{Error, Result};
