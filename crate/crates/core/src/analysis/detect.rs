//! Searching supertiles for same-type tiles rotated by an irrational angle.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::angle::{classify_pi_rationality, Angle, PiClass};
use crate::error::Result;
use crate::tiling::{supertile_capped, SubstitutionRule};

/// Largest supertile the detector will build.
pub const DETECT_TILE_CAP: u128 = 2_000_000;

/// A convergent closer than this to `delta / pi` counts as a rational match.
const NUMERIC_MATCH: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DetectOptions {
    pub max_depth: usize,
    /// Also accept a numeric difference whose continued fraction shows no
    /// small denominator.
    pub accept_numeric: bool,
    pub tile_cap: u128,
}

impl DetectOptions {
    pub fn depth(max_depth: usize) -> Self {
        DetectOptions {
            max_depth,
            accept_numeric: false,
            tile_cap: DETECT_TILE_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub depth: usize,
    pub root: usize,
    /// Indices into `supertile(rule, root, depth)`.
    pub tiles: (usize, usize),
    pub prototile: usize,
    pub reflect: bool,
    pub delta: Angle,
    pub class: PiClass,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PinwheelVerdict {
    pub found: bool,
    pub witness: Option<Witness>,
    /// Distinct orientation differences seen within same-type,
    /// same-chirality groups, in first-seen order.
    pub deltas: Vec<Angle>,
    /// Depth actually reached (supertiles over the cap are skipped).
    pub depth_reached: usize,
}

impl PinwheelVerdict {
    /// Number of distinct orientation classes seen.
    pub fn class_count(&self) -> usize {
        self.deltas.len()
    }
}

pub fn detect_pinwheel_like(
    rule: &SubstitutionRule,
    opts: &DetectOptions,
) -> Result<PinwheelVerdict> {
    let reg = rule.registry();
    let mut deltas: Vec<Angle> = Vec::new();
    let mut all: BTreeSet<Angle> = BTreeSet::new();
    let mut depth_reached = 0;
    for depth in 1..=opts.max_depth.max(1) {
        for root in 0..rule.prototile_count() {
            if rule.supertile_size(root, depth) > opts.tile_cap {
                continue;
            }
            depth_reached = depth;
            let patch = supertile_capped(rule, root, depth, opts.tile_cap)?;
            // first tile of each (type, chirality) class and the differences seen
            let mut firsts: BTreeMap<(usize, bool), (usize, Angle)> = BTreeMap::new();
            let mut seen: BTreeSet<((usize, bool), Angle)> = BTreeSet::new();
            for (idx, t) in patch.tiles.iter().enumerate() {
                let key = (t.prototile, t.orientation.reflect);
                let a = t.orientation.angle;
                let Some(&(first_idx, first)) = firsts.get(&key) else {
                    firsts.insert(key, (idx, a));
                    continue;
                };
                let delta = a.sub(&first)?;
                if !seen.insert((key, delta)) {
                    continue;
                }
                if all.insert(delta) {
                    deltas.push(delta);
                }
                let class = classify_pi_rationality(&delta, reg);
                let hit = match &class {
                    PiClass::IrrationalPiCertified => true,
                    PiClass::UnknownNumeric(cf) => {
                        opts.accept_numeric && !cf.looks_rational(NUMERIC_MATCH)
                    }
                    PiClass::RationalPi(_) => false,
                };
                if hit {
                    let witness = Witness {
                        depth,
                        root,
                        tiles: (first_idx, idx),
                        prototile: key.0,
                        reflect: key.1,
                        delta,
                        class,
                    };
                    return Ok(PinwheelVerdict {
                        found: true,
                        witness: Some(witness),
                        deltas,
                        depth_reached,
                    });
                }
            }
        }
    }
    Ok(PinwheelVerdict {
        found: false,
        witness: None,
        deltas,
        depth_reached,
    })
}
