//! Exact arithmetic for linear cellular automata over `Z_p` with null
//! boundary: finite fields, structured transition matrices, spectral
//! reversibility decisions and inverse rules.

pub mod ca;
pub mod charpoly;
pub mod error;
pub mod field;
pub mod oracle;
pub mod spectral;
pub mod structmat;

pub use error::{Error, Result};
