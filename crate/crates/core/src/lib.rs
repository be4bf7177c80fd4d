pub mod error;
pub mod cli;
pub mod cyclotomic;
pub mod dihedral;
pub mod exact;
pub mod family;
pub mod fourier;
pub mod gf2;
pub mod nonabelian;
pub mod report;
pub mod tau;

pub use error::{Error, Result};
