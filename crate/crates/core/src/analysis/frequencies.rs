use alloc::vec::Vec;

use crate::algebra::perron_data;
use crate::error::Result;
use crate::tiling::SubstitutionRule;

/// Right Perron eigenvector of the substitution matrix, normalized to sum 1.
pub fn tile_frequencies(rule: &SubstitutionRule) -> Result<Vec<f64>> {
    let d = perron_data(&rule.substitution_matrix(), 1e-14)?;
    let total: f64 = d.right.iter().sum();
    Ok(d.right.iter().map(|v| v / total).collect())
}
