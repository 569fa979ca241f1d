//! Cubic surfaces over finite fields.

pub mod classify;
pub mod count;
pub mod lines;
pub mod smooth;
pub mod split;
pub mod surface;

pub use classify::{certify, classify, classify_with, point_off_lines, Classification, PointCount, SurfaceCertificate};
pub use count::{count_points, count_points_brute, trace_vector};
pub use lines::{find_lines, LineRecord, LineSet};
pub use smooth::{is_smooth, SmoothnessEvidence};
pub use surface::{CubicSurface, SurfaceData};
pub use split::{in_general_position, split_cubic_from_points};
