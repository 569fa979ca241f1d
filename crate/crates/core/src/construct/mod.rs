//! Explicit constructions: the order-9 cubic surfaces over every finite
//! field, and the fixed degree-2 surface over `GF(3)`.

pub mod c14;
pub mod config;
pub mod pencil;

pub use c14::{make_c14_surface, BlowupRecord, C14Certificate, C14Construction};
pub use config::{build_config, NineLineConfig};
pub use pencil::{combine_cubics, cubics_through, gluing_cross_check, CubicPencil};

use crate::dp2::ConicBundleSurface;

/// `(x^2 + xz - z^2) s^2 + (x^2 + y^2) st + (x^2 - xy - y^2 + xz - z^2) t^2`
/// over `GF(3)`.
pub fn dp2_class35_surface() -> ConicBundleSurface {
    ConicBundleSurface::reference_f3()
}
