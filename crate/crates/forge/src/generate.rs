//! Supertile generation split across the rayon pool.

use pinwheel_core::tiling::{
    apply, check_supertile, Patch, PlacedTile, Provenance, SubstitutionRule, DEFAULT_TILE_CAP,
};
use rayon::prelude::*;

use crate::error::Result;

/// Tiles expanded sequentially before the work is split.
const SPLIT_AT: usize = 256;

/// Same tiles, in the same order and with bit-identical coordinates, as
/// the sequential [`pinwheel_core::tiling::supertile`], for any pool size.
pub fn supertile_par(rule: &SubstitutionRule, root: usize, n: usize) -> Result<Patch> {
    supertile_par_capped(rule, root, n, DEFAULT_TILE_CAP)
}

pub fn supertile_par_capped(
    rule: &SubstitutionRule,
    root: usize,
    n: usize,
    cap: u128,
) -> Result<Patch> {
    check_supertile(rule, root, n, cap)?;
    let mut p = Patch {
        tiles: vec![PlacedTile::at_identity(root)],
        provenance: Some(Provenance { root, level: 0 }),
    };
    let mut level = 0;
    while level < n && p.len() < SPLIT_AT {
        p = apply(rule, &p)?;
        level += 1;
    }
    if level == n {
        return Ok(p);
    }
    let rest = n - level;
    let parts: Vec<Vec<PlacedTile>> = p
        .tiles
        .par_iter()
        .map(|t| {
            let mut q = Patch::new(vec![*t]);
            for _ in 0..rest {
                q = apply(rule, &q)?;
            }
            Ok(q.tiles)
        })
        .collect::<std::result::Result<_, pinwheel_core::Error>>()?;
    let total = parts.iter().map(Vec::len).sum();
    let mut tiles = Vec::with_capacity(total);
    parts.into_iter().for_each(|t| tiles.extend(t));
    Ok(Patch {
        tiles,
        provenance: Some(Provenance { root, level: n }),
    })
}
