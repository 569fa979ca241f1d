//! Degree-2 del Pezzo surfaces as conic bundles of bidegree `(2, 2)` in
//! `P^1 x P^2`, odd characteristic.

pub mod classify;
pub mod count;
pub mod fibers;
pub mod surface;

pub use classify::{certify_dp2, classify_dp2, frobenius_eigenvalues, Dp2Certificate, Dp2Classification, Eigenvalues};
pub use count::{count_points_dp2, count_points_dp2_brute};
pub use fibers::{discriminant_factors, dp2_smooth, singular_fibers, Dp2Smoothness, FiberRecord};
pub use surface::{BundleData, ConicBundleSurface};
