//! Congruence search between patches and the approximate hull metric.

use alloc::vec::Vec;
use core::f64::consts::PI;

use super::{Patch, PlacedTile, SubstitutionRule};
use crate::error::{Error, Result};
use crate::geom::{self, Point};

/// Rigid motion `x -> R(conj^s x) + t` in floating point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Iso {
    pub reflect: bool,
    pub cos: f64,
    pub sin: f64,
    pub t: Point,
}

impl Iso {
    pub const IDENTITY: Iso = Iso {
        reflect: false,
        cos: 1.0,
        sin: 0.0,
        t: [0.0, 0.0],
    };

    pub fn of_tile(rule: &SubstitutionRule, tile: &PlacedTile) -> Iso {
        let o = tile.orientation.numeric(rule.registry());
        Iso {
            reflect: o.reflect,
            cos: o.cos,
            sin: o.sin,
            t: tile.translation,
        }
    }

    pub fn linear(&self, p: Point) -> Point {
        let (x, y) = if self.reflect {
            (p[0], -p[1])
        } else {
            (p[0], p[1])
        };
        [self.cos * x - self.sin * y, self.sin * x + self.cos * y]
    }

    pub fn apply(&self, p: Point) -> Point {
        geom::add(self.linear(p), self.t)
    }

    /// `self o other`.
    pub fn then_after(&self, other: &Iso) -> Iso {
        // linear part of self o other on e1 and e2 determines the map
        let s2 = if self.reflect { -other.sin } else { other.sin };
        let c = self.cos * other.cos - self.sin * s2;
        let s = self.sin * other.cos + self.cos * s2;
        Iso {
            reflect: self.reflect != other.reflect,
            cos: c,
            sin: s,
            t: self.apply(other.t),
        }
    }

    pub fn inverse(&self) -> Iso {
        let lin = if self.reflect {
            Iso {
                reflect: true,
                cos: self.cos,
                sin: self.sin,
                t: [0.0, 0.0],
            }
        } else {
            Iso {
                reflect: false,
                cos: self.cos,
                sin: -self.sin,
                t: [0.0, 0.0],
            }
        };
        let t = lin.linear(self.t);
        Iso {
            t: [-t[0], -t[1]],
            ..lin
        }
    }

    /// Rotation part in `(-pi, pi]`.
    pub fn angle(&self) -> f64 {
        libm::atan2(self.sin, self.cos)
    }
}

/// Isometries mapping a polygon's vertex set to itself (always includes the identity).
pub fn symmetries(vertices: &[Point], tol: f64) -> Vec<Iso> {
    let n = vertices.len();
    let mut out = alloc::vec![Iso::IDENTITY];
    let (p0, p1) = (vertices[0], vertices[1]);
    let e = geom::sub(p1, p0);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let f = geom::sub(vertices[j], vertices[i]);
            if libm::fabs(geom::norm(f) - geom::norm(e)) > tol {
                continue;
            }
            for reflect in [false, true] {
                let e_ref = if reflect { [e[0], -e[1]] } else { e };
                let ang = libm::atan2(f[1], f[0]) - libm::atan2(e_ref[1], e_ref[0]);
                let mut g = Iso {
                    reflect,
                    cos: libm::cos(ang),
                    sin: libm::sin(ang),
                    t: [0.0, 0.0],
                };
                g.t = geom::sub(vertices[i], g.linear(p0));
                let maps = vertices.iter().all(|&v| {
                    let w = g.apply(v);
                    vertices.iter().any(|&u| geom::dist(u, w) <= tol)
                });
                let fresh = out.iter().all(|h| !same_iso(h, &g, tol));
                if maps && fresh {
                    out.push(g);
                }
            }
        }
    }
    out
}

fn same_iso(a: &Iso, b: &Iso, tol: f64) -> bool {
    a.reflect == b.reflect
        && libm::fabs(a.cos - b.cos) <= tol
        && libm::fabs(a.sin - b.sin) <= tol
        && geom::dist(a.t, b.t) <= tol
}

/// Uniform grid over tile centroids.
pub struct TileIndex {
    cell: f64,
    keys: Vec<(i64, i64, usize)>,
    centroids: Vec<Point>,
}

impl TileIndex {
    pub fn new(polys: &[Vec<Point>], cell: f64) -> Self {
        let centroids: Vec<Point> = polys.iter().map(|p| geom::centroid(p)).collect();
        let mut keys: Vec<(i64, i64, usize)> = centroids
            .iter()
            .enumerate()
            .map(|(i, c)| {
                (
                    libm::floor(c[0] / cell) as i64,
                    libm::floor(c[1] / cell) as i64,
                    i,
                )
            })
            .collect();
        keys.sort_unstable();
        TileIndex {
            cell,
            keys,
            centroids,
        }
    }

    pub fn centroid(&self, i: usize) -> Point {
        self.centroids[i]
    }

    /// Indices whose centroid lies within `r` of `p`.
    pub fn near(&self, p: Point, r: f64, out: &mut Vec<usize>) {
        out.clear();
        let span = libm::ceil(r / self.cell) as i64;
        let cx = libm::floor(p[0] / self.cell) as i64;
        let cy = libm::floor(p[1] / self.cell) as i64;
        for x in cx - span..=cx + span {
            let start = self.keys.partition_point(|k| (k.0, k.1) < (x, cy - span));
            for &(kx, ky, i) in &self.keys[start..] {
                if kx != x || ky > cy + span {
                    break;
                }
                if geom::dist(self.centroids[i], p) <= r {
                    out.push(i);
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FindOptions {
    /// Largest allowed rotation of the occurrence, radians.
    pub eps_rot: f64,
    /// Vertex matching tolerance.
    pub eps_trans: f64,
    pub allow_reflection: bool,
}

impl Default for FindOptions {
    fn default() -> Self {
        FindOptions {
            eps_rot: PI,
            eps_trans: 1e-6,
            allow_reflection: true,
        }
    }
}

/// An isometry `g` with `g(probe)` contained in the haystack.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Occurrence {
    /// Rotation part in `(-pi, pi]`.
    pub angle: f64,
    pub reflect: bool,
    pub translation: Point,
}

impl Occurrence {
    pub fn iso(&self) -> Iso {
        Iso {
            reflect: self.reflect,
            cos: libm::cos(self.angle),
            sin: libm::sin(self.angle),
            t: self.translation,
        }
    }
}

fn realize_all(rule: &SubstitutionRule, p: &Patch) -> Vec<Vec<Point>> {
    p.tiles.iter().map(|t| rule.realize(t)).collect()
}

fn max_diameter(rule: &SubstitutionRule) -> f64 {
    rule.prototiles()
        .iter()
        .map(|p| p.diameter())
        .fold(0.0, f64::max)
}

fn vertex_sets_match(a: &[Point], b: &[Point], tol: f64) -> bool {
    a.len() == b.len()
        && a.iter()
            .all(|&p| b.iter().any(|&q| geom::dist(p, q) <= tol))
}

/// Anchors the first probe tile on every same-type haystack tile (through
/// each symmetry of the prototile), then checks the rest of the probe.
pub fn find_occurrences(
    rule: &SubstitutionRule,
    haystack: &Patch,
    probe: &Patch,
    opts: &FindOptions,
) -> Result<Vec<Occurrence>> {
    let Some(anchor) = probe.tiles.first() else {
        return Err(Error::EmptyProbe);
    };
    let hay_polys = realize_all(rule, haystack);
    let index = TileIndex::new(&hay_polys, max_diameter(rule).max(1e-9));
    Ok(find_with_index(
        rule, haystack, &hay_polys, &index, probe, anchor, opts,
    ))
}

pub(crate) fn find_with_index(
    rule: &SubstitutionRule,
    haystack: &Patch,
    hay_polys: &[Vec<Point>],
    index: &TileIndex,
    probe: &Patch,
    anchor: &PlacedTile,
    opts: &FindOptions,
) -> Vec<Occurrence> {
    let probe_polys = realize_all(rule, probe);
    let sym_tol = 1e-9 * max_diameter(rule).max(1.0);
    let syms = symmetries(rule.prototiles()[anchor.prototile].vertices(), sym_tol);
    let a_inv = Iso::of_tile(rule, anchor).inverse();
    let mut out: Vec<Occurrence> = Vec::new();
    let mut near = Vec::new();
    for h in &haystack.tiles {
        if h.prototile != anchor.prototile {
            continue;
        }
        let h_iso = Iso::of_tile(rule, h);
        // different anchors give different motions, so duplicates only arise
        // from the prototile's own symmetries
        let batch = out.len();
        for s in &syms {
            let g = h_iso.then_after(s).then_after(&a_inv);
            if g.reflect && !opts.allow_reflection {
                continue;
            }
            if libm::fabs(g.angle()) > opts.eps_rot {
                continue;
            }
            let ok = probe
                .tiles
                .iter()
                .zip(&probe_polys)
                .skip(1)
                .all(|(pt, poly)| {
                    let img: Vec<Point> = poly.iter().map(|&v| g.apply(v)).collect();
                    index.near(
                        geom::centroid(&img),
                        opts.eps_trans * 2.0 + 1e-12,
                        &mut near,
                    );
                    near.iter().any(|&k| {
                        haystack.tiles[k].prototile == pt.prototile
                            && vertex_sets_match(&img, &hay_polys[k], opts.eps_trans)
                    })
                });
            if ok {
                let occ = Occurrence {
                    angle: g.angle(),
                    reflect: g.reflect,
                    translation: g.t,
                };
                if !out[batch..]
                    .iter()
                    .any(|o| same_iso(&o.iso(), &g, opts.eps_trans.max(1e-12)))
                {
                    out.push(occ);
                }
            }
        }
    }
    out
}

/// Default grid of radii-inverse values for [`patch_distance`].
pub fn default_grid() -> Vec<f64> {
    alloc::vec![
        0.0,
        1e-6,
        1e-4,
        1e-3,
        0.005,
        0.01,
        0.02,
        0.05,
        0.1,
        0.2,
        0.3,
        0.5,
        core::f64::consts::FRAC_1_SQRT_2
    ]
}

/// Smallest grid `eps` for which `p1` restricted to the ball of radius
/// `1/eps` agrees with `R_theta p2 + t`, `|theta|, |t| <= eps`. Capped at
/// `1/sqrt 2`; an upper bound on the hull distance at grid resolution.
pub fn patch_distance(
    rule: &SubstitutionRule,
    p1: &Patch,
    p2: &Patch,
    grid: &[f64],
    tol: f64,
) -> Result<f64> {
    let cap = core::f64::consts::FRAC_1_SQRT_2;
    let polys1 = realize_all(rule, p1);
    let polys2 = realize_all(rule, p2);
    let origin = [0.0, 0.0];
    let holds_origin = |polys: &[Vec<Point>]| {
        polys.iter().position(|p| {
            geom::point_in_polygon(origin, p) || geom::dist_to_boundary(origin, p) <= tol
        })
    };
    let (Some(anchor1), Some(_)) = (holds_origin(&polys1), holds_origin(&polys2)) else {
        return Err(Error::NotCentered);
    };
    let index2 = TileIndex::new(&polys2, max_diameter(rule).max(1e-9));
    let dist_origin: Vec<f64> = polys1
        .iter()
        .map(|p| {
            if geom::point_in_polygon(origin, p) {
                0.0
            } else {
                geom::dist_to_boundary(origin, p)
            }
        })
        .collect();

    // candidate motions mapping some p2 tile onto the p1 tile at the origin
    let a = &p1.tiles[anchor1];
    let a_iso = Iso::of_tile(rule, a);
    let syms = symmetries(
        rule.prototiles()[a.prototile].vertices(),
        1e-9 * max_diameter(rule).max(1.0),
    );
    let mut cands: Vec<(f64, Iso)> = Vec::new();
    for t in p2.tiles.iter().filter(|t| t.prototile == a.prototile) {
        let t_inv = Iso::of_tile(rule, t).inverse();
        for s in &syms {
            let g = a_iso.then_after(s).then_after(&t_inv);
            if !g.reflect {
                let size = libm::fabs(g.angle()).max(geom::norm(g.t));
                cands.push((size, g));
            }
        }
    }
    cands.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(core::cmp::Ordering::Equal));

    let mut grid: Vec<f64> = grid
        .iter()
        .copied()
        .filter(|e| *e >= 0.0 && *e <= cap)
        .collect();
    grid.sort_by(|x, y| x.partial_cmp(y).unwrap_or(core::cmp::Ordering::Equal));
    let mut near = Vec::new();
    for &eps in &grid {
        let radius = if eps == 0.0 { f64::INFINITY } else { 1.0 / eps };
        for (_, g) in cands.iter().take_while(|(s, _)| *s <= eps + tol) {
            let g_inv = g.inverse();
            let ok = (0..p1.len())
                .filter(|&i| dist_origin[i] <= radius)
                .all(|i| {
                    let pre: Vec<Point> = polys1[i].iter().map(|&v| g_inv.apply(v)).collect();
                    index2.near(geom::centroid(&pre), 2.0 * tol + 1e-12, &mut near);
                    near.iter().any(|&k| {
                        p2.tiles[k].prototile == p1.tiles[i].prototile
                            && vertex_sets_match(&pre, &polys2[k], tol)
                    })
                });
            if ok {
                return Ok(eps);
            }
        }
    }
    Ok(cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iso_algebra() {
        let g = Iso {
            reflect: true,
            cos: libm::cos(0.7),
            sin: libm::sin(0.7),
            t: [1.0, -2.0],
        };
        let h = Iso {
            reflect: false,
            cos: libm::cos(-1.3),
            sin: libm::sin(-1.3),
            t: [0.5, 0.25],
        };
        let p = [0.3, 0.9];
        let lhs = g.then_after(&h).apply(p);
        let rhs = g.apply(h.apply(p));
        assert!(geom::dist(lhs, rhs) < 1e-14);
        let back = g.inverse().apply(g.apply(p));
        assert!(geom::dist(back, p) < 1e-14);
        let back = h.inverse().apply(h.apply(p));
        assert!(geom::dist(back, p) < 1e-14);
    }

    #[test]
    fn symmetry_groups() {
        let scalene = [[0.0, 0.0], [2.0, 0.0], [0.0, 1.0]];
        assert_eq!(symmetries(&scalene, 1e-9).len(), 1);
        let iso = [[0.0, 0.0], [1.0, 0.0], [0.5, 2.0]];
        assert_eq!(symmetries(&iso, 1e-9).len(), 2);
        let eq = [[0.0, 0.0], [1.0, 0.0], [0.5, libm::sqrt(3.0) / 2.0]];
        assert_eq!(symmetries(&eq, 1e-9).len(), 6);
        let sq = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        assert_eq!(symmetries(&sq, 1e-9).len(), 8);
    }
}
