pub mod cli;
pub mod coordalg;
pub mod ema;
pub mod error;
pub mod foundations;
pub mod homology;
pub mod liealg;
pub mod repmod;
pub mod rootdata;
pub mod weyl;

pub use error::{EmaError, Result};
