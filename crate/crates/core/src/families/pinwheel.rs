use alloc::vec;

use super::fit::child_for;
use super::{cosine_certificate, gate};
use crate::algebra::{q_int, AlgReal, RatPoly};
use crate::angle::{Generator, GeneratorRegistry};
use crate::error::Result;
use crate::geom::{self, Point};
use crate::tiling::{make_rule, Prototile, SubstitutionRule};

pub const GENERATOR: &str = "atan_half";

/// Right triangle with legs 2 and 1, inflated by `sqrt(5)`: the altitude
/// cuts off one unit copy, and the remaining triangle with legs 4 and 2 is
/// split through its edge midpoints into a central 2x1 rectangle and two
/// corner triangles.
pub fn build_pinwheel() -> Result<SubstitutionRule> {
    let proto = Prototile::new(vec![[0.0, 0.0], [2.0, 0.0], [0.0, 1.0]])?;
    let cos_g = AlgReal::from_interval(&RatPoly::from_i64s(&[-4, 0, 5]), q_int(0), q_int(1))?;
    let registry = GeneratorRegistry::new(vec![Generator {
        name: GENERATOR.into(),
        value: libm::atan(0.5),
        error: 2.0 * f64::EPSILON,
        certificate: cosine_certificate(&cos_g, "cosine test: 2/sqrt(5)"),
    }])?;

    let r5 = libm::sqrt(5.0);
    let c: Point = [0.0, 0.0];
    let a: Point = [2.0 * r5, 0.0];
    let b: Point = [0.0, r5];
    let d: Point = [0.4 * r5, 0.8 * r5];
    let el = geom::scale(geom::sub(a, d), 0.25);
    let es = geom::scale(geom::sub(c, d), 0.5);
    let at = |l: f64, s: f64| geom::add(d, geom::add(geom::scale(el, l), geom::scale(es, s)));
    let (mm, nn, kk) = (at(2.0, 0.0), at(2.0, 1.0), at(0.0, 1.0));

    let v = proto.vertices().to_vec();
    let slots: [[Point; 3]; 5] = [
        [b, c, d],
        [a, mm, nn],
        [kk, nn, c],
        [d, mm, nn],
        [d, nn, kk],
    ];
    let kids = slots
        .iter()
        .map(|s| child_for(0, &v, s, &registry, Some(GENERATOR), 2))
        .collect::<Result<_>>()?;

    let factor = AlgReal::from_int(5).sqrt()?;
    let rule = make_rule("pinwheel", vec![proto], vec![kids], factor, registry)?
        .with_metadata("family", "pinwheel");
    gate(rule)
}
