//! Prototiles, placed tiles, substitution rules and their iteration.

use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::AlgReal;
use crate::analysis::matrix::SubstMatrix;
use crate::angle::{GeneratorRegistry, NumericOrientation, Orientation};
use crate::error::{Error, Result};
use crate::geom::{self, Point};

pub mod matching;
pub mod verify;

pub use matching::{find_occurrences, patch_distance, FindOptions, Occurrence};
pub use verify::{verify_rule, VerifyReport, DEFAULT_TOL};

/// Largest patch [`supertile`] will build unless told otherwise.
pub const DEFAULT_TILE_CAP: u128 = 20_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct Prototile {
    vertices: Vec<Point>,
    area: f64,
}

impl Prototile {
    /// Vertices are reordered counterclockwise if needed.
    pub fn new(mut vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidPrototile("fewer than 3 vertices".into()));
        }
        if vertices
            .iter()
            .any(|p| !p[0].is_finite() || !p[1].is_finite())
        {
            return Err(Error::InvalidPrototile("non-finite coordinate".into()));
        }
        let mut area = geom::signed_area(&vertices);
        if area < 0.0 {
            vertices.reverse();
            area = -area;
        }
        if area <= 0.0 {
            return Err(Error::InvalidPrototile("zero area".into()));
        }
        Ok(Prototile { vertices, area })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    pub fn diameter(&self) -> f64 {
        let v = &self.vertices;
        let mut d: f64 = 0.0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                d = d.max(geom::dist(v[i], v[j]));
            }
        }
        d
    }
}

/// One placement `phi(T_j)` inside an inflated prototile.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Child {
    pub prototile: usize,
    pub orientation: Orientation,
    pub translation: Point,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubstitutionRule {
    name: String,
    prototiles: Vec<Prototile>,
    children: Vec<Vec<Child>>,
    factor: AlgReal,
    factor_f64: f64,
    registry: GeneratorRegistry,
    metadata: Vec<(String, String)>,
}

/// Structural construction; geometry is checked separately by [`verify_rule`].
pub fn make_rule(
    name: &str,
    prototiles: Vec<Prototile>,
    children: Vec<Vec<Child>>,
    factor: AlgReal,
    registry: GeneratorRegistry,
) -> Result<SubstitutionRule> {
    let count = prototiles.len();
    if children.len() != count {
        return Err(Error::BadIndex {
            prototile: children.len(),
            count,
        });
    }
    for c in children.iter().flatten() {
        if c.prototile >= count {
            return Err(Error::BadIndex {
                prototile: c.prototile,
                count,
            });
        }
        for a in [c.orientation.angle] {
            if a.registry_tag() != 0 && a.registry_tag() != registry.tag() {
                return Err(Error::RegistryMismatch);
            }
        }
    }
    if factor.cmp_rational(&crate::algebra::q_int(1)) != core::cmp::Ordering::Greater {
        return Err(Error::FactorNotGreaterThanOne);
    }
    let factor_f64 = factor.to_f64();
    Ok(SubstitutionRule {
        name: name.into(),
        prototiles,
        children,
        factor,
        factor_f64,
        registry,
        metadata: Vec::new(),
    })
}

impl SubstitutionRule {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn prototiles(&self) -> &[Prototile] {
        &self.prototiles
    }

    pub fn prototile_count(&self) -> usize {
        self.prototiles.len()
    }

    pub fn children(&self, i: usize) -> &[Child] {
        &self.children[i]
    }

    pub fn all_children(&self) -> &[Vec<Child>] {
        &self.children
    }

    pub fn factor(&self) -> &AlgReal {
        &self.factor
    }

    pub fn factor_f64(&self) -> f64 {
        self.factor_f64
    }

    pub fn registry(&self) -> &GeneratorRegistry {
        &self.registry
    }

    pub fn metadata(&self) -> &[(String, String)] {
        &self.metadata
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn with_metadata(mut self, key: &str, value: &str) -> Self {
        self.metadata.retain(|(k, _)| k != key);
        self.metadata.push((key.into(), value.into()));
        self
    }

    /// `S`, with entry `(k, l)` the number of type-`k` children of prototile `l`.
    pub fn substitution_matrix(&self) -> SubstMatrix {
        let n = self.prototiles.len();
        let mut s = SubstMatrix::zeros(n);
        for (l, kids) in self.children.iter().enumerate() {
            for c in kids {
                s.set(c.prototile, l, s.get(c.prototile, l) + 1);
            }
        }
        s
    }

    /// Realized vertices of a placed tile.
    pub fn realize(&self, t: &PlacedTile) -> Vec<Point> {
        let o = t.orientation.numeric(&self.registry);
        self.prototiles[t.prototile]
            .vertices
            .iter()
            .map(|&v| geom::add(o.apply(v), t.translation))
            .collect()
    }

    /// Appends the children of one tile to `out` in canonical order.
    pub fn apply_tile(&self, tile: &PlacedTile, out: &mut Vec<PlacedTile>) -> Result<()> {
        let kids = self
            .children
            .get(tile.prototile)
            .ok_or(Error::PrototileMismatch {
                prototile: tile.prototile,
            })?;
        let o = tile.orientation.numeric(&self.registry);
        let base = geom::scale(tile.translation, self.factor_f64);
        for c in kids {
            out.push(PlacedTile {
                prototile: c.prototile,
                orientation: tile.orientation.compose(&c.orientation)?,
                translation: geom::add(o.apply(c.translation), base),
            });
        }
        Ok(())
    }

    /// Tiles in `sigma^n(T_root)`, from integer matrix powers.
    pub fn supertile_size(&self, root: usize, n: usize) -> u128 {
        let s = self.substitution_matrix();
        let m = s.dim();
        let mut v = alloc::vec![0u128; m];
        v[root] = 1;
        for _ in 0..n {
            v = (0..m)
                .map(|k| {
                    v.iter().enumerate().fold(0u128, |a, (l, &x)| {
                        a.saturating_add((s.get(k, l) as u128).saturating_mul(x))
                    })
                })
                .collect();
        }
        v.iter().fold(0u128, |a, &b| a.saturating_add(b))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlacedTile {
    pub prototile: usize,
    pub orientation: Orientation,
    pub translation: Point,
}

impl PlacedTile {
    pub fn at_identity(prototile: usize) -> Self {
        PlacedTile {
            prototile,
            orientation: Orientation::IDENTITY,
            translation: [0.0, 0.0],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub root: usize,
    pub level: usize,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Patch {
    pub tiles: Vec<PlacedTile>,
    pub provenance: Option<Provenance>,
}

impl Patch {
    pub fn new(tiles: Vec<PlacedTile>) -> Self {
        Patch {
            tiles,
            provenance: None,
        }
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    /// Applies an isometry `x -> o(x) + t` to every tile.
    pub fn transformed(&self, o: &Orientation, t: Point, reg: &GeneratorRegistry) -> Result<Patch> {
        let n = o.numeric(reg);
        let tiles = self
            .tiles
            .iter()
            .map(|tile| {
                Ok(PlacedTile {
                    prototile: tile.prototile,
                    orientation: o.compose(&tile.orientation)?,
                    translation: geom::add(n.apply(tile.translation), t),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Patch {
            tiles,
            provenance: None,
        })
    }

    pub fn type_counts(&self, prototiles: usize) -> Vec<usize> {
        let mut c = alloc::vec![0; prototiles];
        self.tiles.iter().for_each(|t| c[t.prototile] += 1);
        c
    }
}

/// One substitution step over a whole patch; output is the concatenation of
/// each tile's children in input order.
pub fn apply(rule: &SubstitutionRule, patch: &Patch) -> Result<Patch> {
    let mut out = Vec::with_capacity(patch.tiles.len() * 2);
    for t in &patch.tiles {
        rule.apply_tile(t, &mut out)?;
    }
    let provenance = patch.provenance.map(|p| Provenance {
        root: p.root,
        level: p.level + 1,
    });
    Ok(Patch {
        tiles: out,
        provenance,
    })
}

pub fn supertile(rule: &SubstitutionRule, root: usize, n: usize) -> Result<Patch> {
    supertile_capped(rule, root, n, DEFAULT_TILE_CAP)
}

pub fn supertile_capped(
    rule: &SubstitutionRule,
    root: usize,
    n: usize,
    cap: u128,
) -> Result<Patch> {
    check_supertile(rule, root, n, cap)?;
    let mut p = Patch {
        tiles: alloc::vec![PlacedTile::at_identity(root)],
        provenance: Some(Provenance { root, level: 0 }),
    };
    for _ in 0..n {
        p = apply(rule, &p)?;
    }
    Ok(p)
}

/// Validates the root index and the projected size of `sigma^n(T_root)`.
pub fn check_supertile(rule: &SubstitutionRule, root: usize, n: usize, cap: u128) -> Result<u128> {
    if root >= rule.prototile_count() {
        return Err(Error::BadIndex {
            prototile: root,
            count: rule.prototile_count(),
        });
    }
    let projected = rule.supertile_size(root, n);
    if projected > cap {
        return Err(Error::MemoryCap { projected, cap });
    }
    Ok(projected)
}

/// Rotation angle and reflection recovered from realized vertices, by
/// comparing the first edge of the prototile with the placed one.
pub fn recovered_rotation(rule: &SubstitutionRule, tile: &PlacedTile) -> f64 {
    let proto = &rule.prototiles[tile.prototile].vertices;
    let real = rule.realize(tile);
    let mut e0 = geom::sub(proto[1], proto[0]);
    if tile.orientation.reflect {
        e0[1] = -e0[1];
    }
    let e1 = geom::sub(real[1], real[0]);
    geom::wrap_angle(libm::atan2(e1[1], e1[0]) - libm::atan2(e0[1], e0[0]))
}

/// Numeric form of an orientation under a rule's registry.
pub fn numeric(rule: &SubstitutionRule, o: &Orientation) -> NumericOrientation {
    o.numeric(&rule.registry)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::Angle;
    use alloc::vec;

    /// Unit square split into four half-size squares.
    fn squares() -> SubstitutionRule {
        let sq = Prototile::new(vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap();
        let kids = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]
            .iter()
            .map(|&t| Child {
                prototile: 0,
                orientation: Orientation::IDENTITY,
                translation: t,
            })
            .collect();
        make_rule(
            "squares",
            vec![sq],
            vec![kids],
            AlgReal::from_int(2),
            GeneratorRegistry::empty(),
        )
        .unwrap()
    }

    #[test]
    fn structural_errors() {
        let sq = Prototile::new(vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap();
        let bad = Child {
            prototile: 3,
            orientation: Orientation::IDENTITY,
            translation: [0.0, 0.0],
        };
        assert_eq!(
            make_rule(
                "x",
                vec![sq.clone()],
                vec![vec![bad]],
                AlgReal::from_int(2),
                GeneratorRegistry::empty()
            )
            .unwrap_err(),
            Error::BadIndex {
                prototile: 3,
                count: 1
            }
        );
        assert_eq!(
            make_rule(
                "x",
                vec![sq],
                vec![vec![]],
                AlgReal::from_int(1),
                GeneratorRegistry::empty()
            )
            .unwrap_err(),
            Error::FactorNotGreaterThanOne
        );
        assert!(Prototile::new(vec![[0.0, 0.0], [1.0, 0.0]]).is_err());
        assert!(Prototile::new(vec![[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]).is_err());
        let cw = Prototile::new(vec![[0.0, 0.0], [0.0, 1.0], [1.0, 0.0]]).unwrap();
        assert!(geom::signed_area(cw.vertices()) > 0.0);
    }

    #[test]
    fn supertile_counts_and_prefix() {
        let r = squares();
        let p = supertile(&r, 0, 3).unwrap();
        assert_eq!(p.len(), 64);
        assert_eq!(p.provenance, Some(Provenance { root: 0, level: 3 }));
        let p2 = supertile(&r, 0, 2).unwrap();
        let again = apply(&r, &p2).unwrap();
        assert_eq!(again.tiles, p.tiles);
        assert_eq!(
            supertile(&r, 0, 0).unwrap().tiles,
            vec![PlacedTile::at_identity(0)]
        );
        assert!(matches!(
            supertile_capped(&r, 0, 10, 1000),
            Err(Error::MemoryCap {
                projected: 1_048_576,
                cap: 1000
            })
        ));
        assert_eq!(
            apply(&r, &Patch::new(vec![PlacedTile::at_identity(2)])).unwrap_err(),
            Error::PrototileMismatch { prototile: 2 }
        );
    }

    #[test]
    fn apply_is_equivariant() {
        let r = squares();
        let o = Orientation::new(true, Angle::pi_frac(1, 3));
        let t = [0.7, -2.5];
        let moved = Patch::new(vec![PlacedTile {
            prototile: 0,
            orientation: o,
            translation: t,
        }]);
        let lhs = apply(&r, &moved).unwrap();
        let base = apply(&r, &Patch::new(vec![PlacedTile::at_identity(0)])).unwrap();
        let rhs = base
            .transformed(&o, geom::scale(t, 2.0), r.registry())
            .unwrap();
        for (a, b) in lhs.tiles.iter().zip(&rhs.tiles) {
            for (p, q) in r.realize(a).iter().zip(r.realize(b).iter()) {
                assert!(geom::dist(*p, *q) < 1e-9);
            }
        }
    }
}
