//! Exhaustive and sampled searches: cubic forms over small fields, six-arcs
//! in the plane, and the constructive realizations.

pub mod arcs;
pub mod f2;
pub mod realize;
pub mod sample;

pub use arcs::{arc_search, surface_from_arc, ArcSearch, ARC_SCHEMA};
pub use f2::{census_cubic, census_f2, decode, recheck_samples, CensusReport, ClassTally, CENSUS_SCHEMA};
pub use realize::{c14_certificate_name, realize_all, Realization, RealizationRow, DP2_CERTIFICATE_NAME, REALIZE_SCHEMA};
pub use sample::{census_sample, SampleReport, SampleTally, SAMPLE_SCHEMA};
