pub mod arcalg;
pub mod bimodule;
pub mod coeffmap;
pub mod diagram;
pub mod error;
pub mod genalg;
pub mod homology;
pub mod ring;
pub mod selftest;

pub use error::{Error, Result};
