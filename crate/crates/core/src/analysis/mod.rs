//! Matrices, pinwheel-likeness, equidistribution and patch frequencies.

pub mod detect;
pub mod frequencies;
pub mod matrix;
pub mod stats;
pub mod upf;
pub mod weyl;

pub use detect::{detect_pinwheel_like, DetectOptions, PinwheelVerdict, Witness};
pub use frequencies::tile_frequencies;
pub use matrix::{is_primitive, BigMatrix, Primitivity, SubstMatrix};
pub use stats::{orientation_stats, star_discrepancy, weyl_sum, OrientationStats, SampleStats};
pub use upf::{upf_probe, UpfOptions, UpfResult};
pub use weyl::{weyl_matrix, weyl_power, weyl_ratio, WeylMatrix};

use crate::tiling::SubstitutionRule;

pub fn substitution_matrix(rule: &SubstitutionRule) -> SubstMatrix {
    rule.substitution_matrix()
}
