//! Finite fields, towers of embedded extensions and univariate polynomials.

pub mod form;
pub mod fpoly;
pub mod gf;
pub mod poly;
pub mod prime;
pub mod resultant;
pub mod tower;

pub use gf::{Fe, FieldDescriptor, Gf};
pub use poly::UniPoly;
pub use tower::{FieldTower, TowerDescriptor};
pub use form::Form;
