use alloc::vec;
use alloc::vec::Vec;

use super::fit::child_for;
use super::{cosine_certificate, gate, Family, FamilySpec};
use crate::algebra::{isolate_dominant_root, AlgReal, RatPoly};
use crate::angle::{Generator, GeneratorRegistry, Orientation};
use crate::error::Result;
use crate::geom::{self, Point};
use crate::tiling::{make_rule, Child, Prototile, SubstitutionRule};

pub const GENERATOR: &str = "theta";

/// Exact constants of the Pythagoras family: `eta` is the dominant root of
/// `x^m - x^j - 1` and `lambda = sqrt(eta)`.
pub(crate) struct PythagorasData {
    pub eta: AlgReal,
    pub lambda: AlgReal,
    /// `lambda^-m`, the short leg of the smallest prototile.
    pub a: AlgReal,
    /// `lambda^(j-m)`, the long leg.
    pub b: AlgReal,
}

pub(crate) fn data(m: u32, j: u32) -> Result<PythagorasData> {
    let (m, j) = (m as usize, j as usize);
    let mut c = vec![0i64; m + 1];
    c[0] = -1;
    c[j] -= 1;
    c[m] = 1;
    let eta = isolate_dominant_root(&RatPoly::from_i64s(&c))?;
    let lambda = eta.sqrt()?;
    let a = eta.pow_half(-(m as i64))?;
    let b = eta.pow_half(j as i64 - m as i64)?;
    Ok(PythagorasData { eta, lambda, a, b })
}

/// Prototiles `T_i = lambda^i T_0` (index `i` is `T_{i+1}` in one-based
/// numbering), `T_0 = (0,0), (-a,0), (-a,b)`.
pub fn build_pythagoras(m: u32, j: u32) -> Result<SubstitutionRule> {
    FamilySpec::new(Family::Pythagoras, m, j)?;
    let d = data(m, j)?;
    let (mu, ju) = (m as usize, j as usize);
    let (a, b) = (d.a.to_f64(), d.b.to_f64());
    let scales: Vec<f64> = (0..=mu)
        .map(|i| d.eta.pow_half(i as i64).map(|x| x.to_f64()))
        .collect::<Result<_>>()?;
    let base = [[0.0, 0.0], [-a, 0.0], [-a, b]];
    let prototiles = scales[..mu]
        .iter()
        .map(|&s| Prototile::new(base.iter().map(|&p| geom::scale(p, s)).collect()))
        .collect::<Result<Vec<_>>>()?;

    let theta = libm::atan2(b, -a);
    let registry = GeneratorRegistry::new(vec![Generator {
        name: GENERATOR.into(),
        value: theta,
        error: 4.0 * f64::EPSILON,
        certificate: cosine_certificate(&d.a, "cosine test: lambda^-m"),
    }])?;

    // lambda T_{m-1}: right angle at (-1,0), hypotenuse from 0 to (-1, lambda^j)
    let lj = scales[ju];
    let p0: Point = [0.0, 0.0];
    let r: Point = [-1.0, 0.0];
    let p2: Point = [-1.0, lj];
    let u = geom::scale(p2, 1.0 / geom::norm(p2));
    let foot = geom::scale(u, geom::dot(r, u));

    let mut children: Vec<Vec<Child>> = (0..mu - 1)
        .map(|i| {
            vec![Child {
                prototile: i + 1,
                orientation: Orientation::IDENTITY,
                translation: [0.0, 0.0],
            }]
        })
        .collect();
    children.push(vec![
        child_for(
            0,
            prototiles[0].vertices(),
            &[p0, r, foot],
            &registry,
            Some(GENERATOR),
            2,
        )?,
        child_for(
            ju,
            prototiles[ju].vertices(),
            &[r, p2, foot],
            &registry,
            Some(GENERATOR),
            2,
        )?,
    ]);

    let name = alloc::format!("pythagoras:{},{}", m, j);
    let rule = make_rule(&name, prototiles, children, d.lambda, registry)?
        .with_metadata("family", "pythagoras");
    gate(rule)
}
