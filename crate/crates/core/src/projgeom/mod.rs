//! Projective points and lines over finite fields, Plücker coordinates and
//! dense linear algebra.

pub mod enumerate;
pub mod line;
pub mod matrix;
pub mod point;

pub use enumerate::{enumerate_proj, proj_count};
pub use line::ProjLine;
pub use matrix::Matrix;
pub use point::{normalize, ProjPoint};
