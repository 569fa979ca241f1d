//! Picard lattices of cubic and degree-2 del Pezzo surfaces and their Weyl
//! groups `W(E6)`, `W(E7)` with conjugacy-class tables.

pub mod classes;
pub mod group;
pub mod lattice;

pub use classes::{
    blowup_embed, cyclotomic, cyclotomic_factors, e6, e7, eigen_char_poly, perm_cycle_type, poly_mul, table, ClassRecord,
    RootSystem, WeylTable,
};
pub use lattice::PicLattice;
