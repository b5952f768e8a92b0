//! Orientation statistics: histogram, star discrepancy and Weyl sums.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::angle::GeneratorRegistry;
use crate::error::{Error, Result};
use crate::geom::wrap_angle;
use crate::tiling::Patch;

#[derive(Clone, Debug, PartialEq)]
pub struct SampleStats {
    pub n: usize,
    /// Counts over `bins` equal subintervals of `[0, 2pi)`.
    pub histogram: Vec<usize>,
    pub star_discrepancy: f64,
    /// `W_t` for `t = 1..=t_max`.
    pub weyl: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrientationStats {
    pub pooled: SampleStats,
    pub direct: SampleStats,
    pub reflected: SampleStats,
    pub level: usize,
}

/// Tile angles in patch order, reduced to `[0, 2pi)`, with their chirality.
pub fn tile_angles(reg: &GeneratorRegistry, patch: &Patch) -> Vec<(f64, bool)> {
    patch
        .tiles
        .iter()
        .map(|t| {
            (
                wrap_angle(t.orientation.angle.value(reg)),
                t.orientation.reflect,
            )
        })
        .collect()
}

/// Angles come from the exact symbols under `reg` (usually
/// `rule.registry()`).
pub fn orientation_stats(
    reg: &GeneratorRegistry,
    patch: &Patch,
    t_max: usize,
    bins: usize,
) -> Result<OrientationStats> {
    let prov = patch.provenance.ok_or(Error::NoProvenance)?;
    let all = tile_angles(reg, patch);
    let pick = |want: Option<bool>| -> Vec<f64> {
        all.iter()
            .filter(|(_, r)| want.is_none_or(|w| *r == w))
            .map(|(a, _)| *a)
            .collect()
    };
    Ok(OrientationStats {
        pooled: sample_stats(&pick(None), t_max, bins),
        direct: sample_stats(&pick(Some(false)), t_max, bins),
        reflected: sample_stats(&pick(Some(true)), t_max, bins),
        level: prov.level,
    })
}

pub fn sample_stats(angles: &[f64], t_max: usize, bins: usize) -> SampleStats {
    let n = angles.len();
    let bins = bins.max(1);
    let mut histogram = vec![0usize; bins];
    for &a in angles {
        let b = ((a / (2.0 * PI)) * bins as f64) as usize;
        histogram[b.min(bins - 1)] += 1;
    }
    let weyl = (1..=t_max).map(|t| weyl_sum(angles, t as i64)).collect();
    SampleStats {
        n,
        histogram,
        star_discrepancy: star_discrepancy(angles),
        weyl,
    }
}

/// `D*_n = max_i max(i/n - x_(i), x_(i) - (i-1)/n)` for `x = alpha / 2pi`
/// sorted; 0 for an empty sample.
pub fn star_discrepancy(angles: &[f64]) -> f64 {
    let n = angles.len();
    if n == 0 {
        return 0.0;
    }
    let mut x: Vec<f64> = angles.iter().map(|&a| wrap_angle(a) / (2.0 * PI)).collect();
    x.sort_by(f64::total_cmp);
    let nf = n as f64;
    x.iter()
        .enumerate()
        .map(|(i, &v)| ((i + 1) as f64 / nf - v).max(v - i as f64 / nf))
        .fold(0.0, f64::max)
        .clamp(0.0, 1.0)
}

/// `|sum_j e^{i t alpha_j}| / n`, summed pairwise.
pub fn weyl_sum(angles: &[f64], t: i64) -> f64 {
    if angles.is_empty() {
        return 0.0;
    }
    let z: Vec<Complex64> = angles
        .iter()
        .map(|&a| Complex64::from_polar(1.0, t as f64 * a))
        .collect();
    (pairwise_sum(&z).norm() / angles.len() as f64).min(1.0)
}

pub fn pairwise_sum(z: &[Complex64]) -> Complex64 {
    if z.len() <= 64 {
        return z.iter().fold(Complex64::new(0.0, 0.0), |a, b| a + b);
    }
    let (a, b) = z.split_at(z.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_mass_and_uniform_grid() {
        let zeros = vec![0.0; 100];
        assert_eq!(star_discrepancy(&zeros), 1.0);
        assert!((weyl_sum(&zeros, 1) - 1.0).abs() < 1e-15);
        let n = 1000;
        let grid: Vec<f64> = (0..n)
            .map(|i| 2.0 * PI * (i as f64 + 0.5) / n as f64)
            .collect();
        assert!((star_discrepancy(&grid) - 0.5 / n as f64).abs() < 1e-12);
        assert!(weyl_sum(&grid, 1) < 1e-12);
        let s = sample_stats(&grid, 3, 10);
        assert_eq!(s.histogram, vec![100; 10]);
        assert_eq!(s.weyl.len(), 3);
    }
}
