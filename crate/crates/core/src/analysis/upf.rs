//! Estimating the radius within which every ball contains a near-translate
//! of a probe patch.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geom::{self, Point};
use crate::tiling::{find_occurrences, supertile, FindOptions, Patch, SubstitutionRule};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UpfOptions {
    pub eps_rot: f64,
    pub level: usize,
    pub root: usize,
    /// Ball centres per inradius of the search domain.
    pub grid_per_inradius: usize,
}

impl UpfOptions {
    pub fn new(eps_rot: f64, level: usize) -> Self {
        UpfOptions {
            eps_rot,
            level,
            root: 0,
            grid_per_inradius: 8,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct UpfResult {
    /// Least tested radius for which every tested ball contains an
    /// occurrence; `None` when even the largest admissible ball fails.
    pub r_estimate: Option<f64>,
    pub grid_spacing: f64,
    pub centers: usize,
    pub occurrences: usize,
    pub probe_radius: f64,
}

pub fn upf_probe(rule: &SubstitutionRule, probe: &Patch, opts: &UpfOptions) -> Result<UpfResult> {
    if probe.is_empty() {
        return Err(Error::EmptyProbe);
    }
    let root_proto = rule.prototiles().get(opts.root).ok_or(Error::BadIndex {
        prototile: opts.root,
        count: rule.prototile_count(),
    })?;
    let scale = libm::pow(rule.factor_f64(), opts.level as f64);
    let domain: Vec<Point> = root_proto
        .vertices()
        .iter()
        .map(|&v| geom::scale(v, scale))
        .collect();
    let inradius = geom::inradius(&domain);

    let probe_pts: Vec<Point> = probe.tiles.iter().flat_map(|t| rule.realize(t)).collect();
    if geom::BBox::of(&probe_pts).diameter() > inradius {
        return Err(Error::ProbeTooLarge);
    }
    let center = geom::centroid(&probe_pts);
    let probe_radius = probe_pts
        .iter()
        .map(|&p| geom::dist(p, center))
        .fold(0.0, f64::max);

    let haystack = supertile(rule, opts.root, opts.level)?;
    let find = FindOptions {
        eps_rot: opts.eps_rot,
        eps_trans: 1e-6,
        allow_reflection: false,
    };
    let occ: Vec<Point> = find_occurrences(rule, &haystack, probe, &find)?
        .iter()
        .map(|o| o.iso().apply(center))
        .collect();

    let h = inradius / opts.grid_per_inradius.max(1) as f64;
    let bb = geom::BBox::of(&domain);
    // (margin to the domain boundary, radius needed to cover an occurrence)
    let mut samples: Vec<(f64, f64)> = Vec::new();
    let nx = ((bb.max[0] - bb.min[0]) / h) as usize + 1;
    let ny = ((bb.max[1] - bb.min[1]) / h) as usize + 1;
    for ix in 0..=nx {
        for iy in 0..=ny {
            let c = [bb.min[0] + ix as f64 * h, bb.min[1] + iy as f64 * h];
            if !geom::point_in_polygon(c, &domain) {
                continue;
            }
            let need = occ
                .iter()
                .map(|&o| geom::dist(c, o))
                .fold(f64::INFINITY, f64::min)
                + probe_radius;
            samples.push((geom::dist_to_boundary(c, &domain), need));
        }
    }

    let holds = |r: f64| {
        let mut any = false;
        for &(margin, need) in &samples {
            if margin >= r {
                any = true;
                if need > r {
                    return false;
                }
            }
        }
        any
    };
    let max_margin = samples.iter().map(|s| s.0).fold(0.0, f64::max);
    let r_estimate = if samples.is_empty() || !holds(max_margin) {
        None
    } else {
        let (mut lo, mut hi) = (0.0, max_margin);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if holds(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some(hi)
    };
    Ok(UpfResult {
        r_estimate,
        grid_spacing: h,
        centers: samples.len(),
        occurrences: occ.len(),
        probe_radius,
    })
}
