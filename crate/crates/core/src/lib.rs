//! Cubic surfaces and degree-2 del Pezzo surfaces over finite fields.

pub mod census;
pub mod construct;
pub mod cubic;
pub mod dp2;
pub mod error;
pub mod ff;
pub mod projgeom;
pub mod weyl;

pub use error::{Error, Result};
