use alloc::vec::Vec;

use super::pythagoras::{build_pythagoras, data};
use super::{gate, Family, FamilySpec};
use crate::angle::Orientation;
use crate::error::{Error, Result};
use crate::geom::{self, Point};
use crate::tiling::{apply, make_rule, supertile, Child, Patch, PlacedTile, SubstitutionRule};

const TOL: f64 = 1e-9;

/// `rho(T_0)` is `sigma^(2m)(T_0)` with the altitude rectangle of type-`j`
/// tiles cut along its other diagonal; `rho(T_i) = sigma^i(rho(T_0))`.
pub fn build_pythia(m: u32, j: u32) -> Result<SubstitutionRule> {
    FamilySpec::new(Family::Pythia, m, j)?;
    let sigma = build_pythagoras(m, j)?;
    let d = data(m, j)?;
    let mu = m as usize;
    let mut p = supertile(&sigma, 0, 2 * mu)?;
    let (x, y) = find_rectangle(&sigma, &p, j as usize, mu)?;
    let c = hypotenuse_midpoint(&sigma.realize(&p.tiles[x]));
    for k in [x, y] {
        p.tiles[k] = flip(&sigma, c, &p.tiles[k]);
    }

    let mut children = Vec::with_capacity(mu);
    let mut cur = Patch::new(p.tiles);
    for i in 0..mu {
        if i > 0 {
            cur = apply(&sigma, &cur)?;
        }
        children.push(
            cur.tiles
                .iter()
                .map(|t| Child {
                    prototile: t.prototile,
                    orientation: t.orientation,
                    translation: t.translation,
                })
                .collect(),
        );
    }
    let factor = d.eta.pow(m as i64)?;
    let name = alloc::format!("pythia:{},{}", m, j);
    let rule = make_rule(
        &name,
        sigma.prototiles().to_vec(),
        children,
        factor,
        sigma.registry().clone(),
    )?
    .with_metadata("family", "pythia");
    gate(rule)
}

fn right_angle_index(v: &[Point]) -> usize {
    (0..3)
        .max_by(|&a, &b| {
            let opp = |i: usize| geom::dist(v[(i + 1) % 3], v[(i + 2) % 3]);
            opp(a).total_cmp(&opp(b))
        })
        .unwrap_or(0)
}

/// The unique pair of type-`j` tiles forming a rectangle whose diagonal lies
/// on the altitude of `lambda^(2m) T_0`.
fn find_rectangle(
    sigma: &SubstitutionRule,
    p: &Patch,
    j: usize,
    m: usize,
) -> Result<(usize, usize)> {
    let big: Vec<Point> = {
        let s = libm::pow(sigma.factor_f64(), (2 * m) as f64);
        sigma.prototiles()[0]
            .vertices()
            .iter()
            .map(|&v| geom::scale(v, s))
            .collect()
    };
    let ri = right_angle_index(&big);
    let (r, h0, h1) = (big[ri], big[(ri + 1) % 3], big[(ri + 2) % 3]);
    let hd = geom::sub(h1, h0);
    let u = geom::scale(hd, 1.0 / geom::norm(hd));
    let foot = geom::add(h0, geom::scale(u, geom::dot(geom::sub(r, h0), u)));

    let cands: Vec<(usize, Vec<Point>)> = p
        .tiles
        .iter()
        .enumerate()
        .filter(|(_, t)| t.prototile == j)
        .map(|(k, t)| (k, sigma.realize(t)))
        .collect();
    let scale = geom::BBox::of(&big).diameter();
    let on_altitude = |q: Point| geom::dist_to_segment(q, r, foot) <= TOL * scale;
    let mut found = Vec::new();
    for (ia, (ka, va)) in cands.iter().enumerate() {
        for (kb, vb) in &cands[ia + 1..] {
            let (ra, rb) = (right_angle_index(va), right_angle_index(vb));
            let (a0, a1) = (va[(ra + 1) % 3], va[(ra + 2) % 3]);
            let (b0, b1) = (vb[(rb + 1) % 3], vb[(rb + 2) % 3]);
            let same_hyp = (geom::dist(a0, b1) <= TOL * scale && geom::dist(a1, b0) <= TOL * scale)
                || (geom::dist(a0, b0) <= TOL * scale && geom::dist(a1, b1) <= TOL * scale);
            if !same_hyp {
                continue;
            }
            let mid = geom::scale(geom::add(a0, a1), 0.5);
            let opposite =
                geom::dist(geom::scale(geom::add(va[ra], vb[rb]), 0.5), mid) <= TOL * scale;
            if opposite && on_altitude(a0) && on_altitude(a1) {
                found.push((*ka, *kb));
            }
        }
    }
    match found.as_slice() {
        [one] => Ok(*one),
        _ => Err(Error::RectangleNotFound),
    }
}

fn hypotenuse_midpoint(v: &[Point]) -> Point {
    let r = right_angle_index(v);
    geom::scale(geom::add(v[(r + 1) % 3], v[(r + 2) % 3]), 0.5)
}

/// Reflection of a rectangle tile across the axis through the centre `c`
/// parallel to its leg of direction `alpha`.
fn flip(sigma: &SubstitutionRule, c: Point, tk: &PlacedTile) -> PlacedTile {
    let alpha = tk.orientation.angle;
    let mirror = Orientation::new(true, alpha.times(2)).numeric(sigma.registry());
    let t = geom::add(mirror.apply(geom::sub(tk.translation, c)), c);
    PlacedTile {
        prototile: tk.prototile,
        orientation: Orientation::new(!tk.orientation.reflect, alpha),
        translation: t,
    }
}
